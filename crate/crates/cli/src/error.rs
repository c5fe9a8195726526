use std::fmt;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Command failure, classified by exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, config or parameters.
    Usage(String),
    /// Input data problems or a solver that did not converge.
    Data(anyhow::Error),
    Internal(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Data(_) => EXIT_DATA,
            Failure::Internal(_) => EXIT_INTERNAL,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Failure::Usage(msg.into())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Data(e) => write!(f, "data error: {e:#}"),
            Failure::Internal(e) => write!(f, "internal error: {e:#}"),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Internal(e.into())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Internal(e.into())
    }
}

impl From<operator_core::CoreError> for Failure {
    fn from(e: operator_core::CoreError) -> Self {
        use operator_core::CoreError as E;
        match e {
            E::InvalidParameter(_) | E::UnsupportedGroup(_) => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.into()),
        }
    }
}

impl From<spectrum::SpectrumError> for Failure {
    fn from(e: spectrum::SpectrumError) -> Self {
        use spectrum::SpectrumError as E;
        match e {
            E::InvalidRequest(_) => Failure::Usage(e.to_string()),
            E::Core(c) => c.into(),
            E::NoConvergence { .. } | E::NonNegligibleImaginaryPart(_) => Failure::Data(e.into()),
            _ => Failure::Internal(e.into()),
        }
    }
}

impl From<qubit_map::QubitError> for Failure {
    fn from(e: qubit_map::QubitError) -> Self {
        use qubit_map::QubitError as E;
        match e {
            E::NonPowerOfTwoDimension(_) | E::TooManyQubits(_) => Failure::Usage(e.to_string()),
            E::Parse { .. } => Failure::Data(e.into()),
            _ => Failure::Internal(e.into()),
        }
    }
}

impl From<vqe::VqeError> for Failure {
    fn from(e: vqe::VqeError) -> Self {
        use vqe::VqeError as E;
        match e {
            E::ObjectiveNotFinite => Failure::Data(e.into()),
            E::Qubit(q) => q.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<lattice_hmc::LatticeError> for Failure {
    fn from(e: lattice_hmc::LatticeError) -> Self {
        use lattice_hmc::LatticeError as E;
        match e {
            E::InvalidParameter(_) => Failure::Usage(e.to_string()),
            E::Io(_) | E::Csv(_) => Failure::Internal(e.into()),
            _ => Failure::Data(e.into()),
        }
    }
}

impl From<continuum_fit::FitError> for Failure {
    fn from(e: continuum_fit::FitError) -> Self {
        use continuum_fit::FitError as E;
        match e {
            E::UnknownFixture(_) => Failure::Usage(e.to_string()),
            _ => Failure::Data(e.into()),
        }
    }
}

impl From<varmc::VarmcError> for Failure {
    fn from(e: varmc::VarmcError) -> Self {
        use varmc::VarmcError as E;
        match e {
            E::InvalidConfig(_) => Failure::Usage(e.to_string()),
            E::Core(c) => c.into(),
            E::Io(_) | E::Csv(_) => Failure::Internal(e.into()),
            _ => Failure::Data(e.into()),
        }
    }
}
