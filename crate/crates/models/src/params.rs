use operator_core::{BasisSpec, CoreError, Result};

/// Bosonic two-matrix model with mass `sqrt(m2)` and 't Hooft coupling `lambda`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BosonicParams {
    pub n: usize,
    pub m2: f64,
    pub lambda: f64,
    pub cutoff: usize,
}

/// Minimal BMN with mass `mu`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MiniBmnParams {
    pub n: usize,
    pub mu: f64,
    pub lambda: f64,
    pub cutoff: usize,
}

/// `H' = H + c sum_a G_a^2 + cprime (M - j)^2`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Deformation {
    pub c: f64,
    pub cprime: f64,
    pub j: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Model {
    Bosonic(BosonicParams),
    MiniBmn(MiniBmnParams),
}

impl BosonicParams {
    pub fn new(n: usize, lambda: f64, cutoff: usize) -> Self {
        Self {
            n,
            m2: 1.0,
            lambda,
            cutoff,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.m2 > 0.0) {
            return Err(CoreError::InvalidParameter(format!("m2 must be positive, got {}", self.m2)));
        }
        if !(self.lambda >= 0.0) {
            return Err(CoreError::InvalidParameter(format!(
                "lambda must be non-negative, got {}",
                self.lambda
            )));
        }
        if self.cutoff < 2 {
            return Err(CoreError::InvalidParameter("cutoff must be at least 2".into()));
        }
        if !(2..=3).contains(&self.n) {
            return Err(CoreError::UnsupportedGroup(self.n));
        }
        Ok(())
    }

    pub fn mass(&self) -> f64 {
        self.m2.sqrt()
    }

    pub fn g2(&self) -> f64 {
        self.lambda / self.n as f64
    }

    pub fn basis(&self) -> Result<BasisSpec> {
        self.validate()?;
        BasisSpec::bosonic(self.n, self.cutoff)
    }
}

impl MiniBmnParams {
    pub fn new(lambda: f64, cutoff: usize) -> Self {
        Self {
            n: 2,
            mu: 1.0,
            lambda,
            cutoff,
        }
    }

    /// Checks the parameters and returns non-fatal warnings.
    pub fn validate(&self) -> Result<Vec<String>> {
        if self.n != 2 {
            return Err(CoreError::UnsupportedGroup(self.n));
        }
        if !(self.mu >= 0.0) {
            return Err(CoreError::InvalidParameter(format!("mu must be non-negative, got {}", self.mu)));
        }
        if !(self.lambda >= 0.0) {
            return Err(CoreError::InvalidParameter(format!(
                "lambda must be non-negative, got {}",
                self.lambda
            )));
        }
        if self.cutoff < 2 {
            return Err(CoreError::InvalidParameter("cutoff must be at least 2".into()));
        }
        let mut w = Vec::new();
        if self.mu == 0.0 {
            w.push("mu = 0: flat directions make the truncated spectrum cutoff dominated".into());
        }
        Ok(w)
    }

    /// Oscillator mass of the ladder operators. A massless model still needs
    /// a reference scale for the Fock basis, so `mu = 0` falls back to 1.
    pub fn oscillator_mass(&self) -> f64 {
        if self.mu > 0.0 {
            self.mu
        } else {
            1.0
        }
    }

    pub fn g2(&self) -> f64 {
        self.lambda / self.n as f64
    }

    pub fn basis(&self) -> Result<BasisSpec> {
        self.validate()?;
        BasisSpec::minibmn(self.n, self.cutoff)
    }
}

impl Deformation {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c >= 0.0 && self.cprime >= 0.0) {
            return Err(CoreError::InvalidParameter(
                "penalty coefficients must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

impl Model {
    pub fn n(&self) -> usize {
        match self {
            Model::Bosonic(p) => p.n,
            Model::MiniBmn(p) => p.n,
        }
    }

    pub fn cutoff(&self) -> usize {
        match self {
            Model::Bosonic(p) => p.cutoff,
            Model::MiniBmn(p) => p.cutoff,
        }
    }

    pub fn lambda(&self) -> f64 {
        match self {
            Model::Bosonic(p) => p.lambda,
            Model::MiniBmn(p) => p.lambda,
        }
    }

    /// Oscillator mass used for position and momentum operators.
    pub fn oscillator_mass(&self) -> f64 {
        match self {
            Model::Bosonic(p) => p.mass(),
            Model::MiniBmn(p) => p.oscillator_mass(),
        }
    }

    pub fn basis(&self) -> Result<BasisSpec> {
        match self {
            Model::Bosonic(p) => p.basis(),
            Model::MiniBmn(p) => p.basis(),
        }
    }

    pub fn with_cutoff(&self, cutoff: usize) -> Self {
        match *self {
            Model::Bosonic(p) => Model::Bosonic(BosonicParams { cutoff, ..p }),
            Model::MiniBmn(p) => Model::MiniBmn(MiniBmnParams { cutoff, ..p }),
        }
    }

    /// Checks that `basis` has the layout this model expects.
    pub fn check_basis(&self, basis: &BasisSpec) -> Result<()> {
        let expected = self.basis()?;
        if &expected != basis {
            return Err(CoreError::DimensionMismatch {
                expected: expected.dim(),
                got: basis.dim(),
            });
        }
        Ok(())
    }
}
