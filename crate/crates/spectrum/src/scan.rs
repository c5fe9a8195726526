use std::io::Write;

use models::{
    bosonic_hamiltonian_terms, deform_terms, fermion_number_terms, gauge_casimir_terms,
    gauge_generator_terms, minibmn_hamiltonian_terms, quarter_turn, so2_generator_terms,
    supercharge_terms, Deformation, MiniBmnParams, Model,
};
use operator_core::{Complex64, LinearOperator, Scalar, TermSum};
use serde::{Deserialize, Serialize};

use crate::{expectation_real, lowest_eigenpairs, EigenOptions, Result};

/// Penalty coefficient, either fixed or proportional to the cutoff.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Coefficient {
    Fixed(f64),
    PerCutoff(f64),
}

impl Coefficient {
    pub fn at(&self, cutoff: usize) -> f64 {
        match *self {
            Coefficient::Fixed(v) => v,
            Coefficient::PerCutoff(s) => s * cutoff as f64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Penalty {
    pub c: Coefficient,
    pub cprime: Coefficient,
    pub j: f64,
}

impl Penalty {
    pub fn none() -> Self {
        Self {
            c: Coefficient::Fixed(0.0),
            cprime: Coefficient::Fixed(0.0),
            j: 0.0,
        }
    }

    /// `c = cutoff`, with the given angular-momentum penalty.
    pub fn auto(cprime: Coefficient, j: f64) -> Self {
        Self {
            c: Coefficient::PerCutoff(1.0),
            cprime,
            j,
        }
    }

    pub fn at(&self, cutoff: usize) -> Deformation {
        Deformation {
            c: self.c.at(cutoff),
            cprime: self.cprime.at(cutoff),
            j: self.j,
        }
    }
}

/// Observables of one eigenstate of the deformed Hamiltonian.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelData {
    /// Eigenvalue of `H'`.
    pub eigenvalue: f64,
    /// `<H>` of the undeformed Hamiltonian.
    pub energy: f64,
    /// `<sum_a G_a^2>`.
    pub g2: f64,
    /// Bosonic model: quarter-turn expectation. Minimal BMN: SO(2) generator.
    pub m_exp: f64,
    pub fermion_number: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub model: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub lambda: f64,
    pub mu: f64,
    #[serde(rename = "Lambda")]
    pub cutoff: usize,
    pub c: f64,
    pub cprime: f64,
    #[serde(rename = "J")]
    pub j: f64,
    pub level: usize,
    pub energy: f64,
    pub g2: f64,
    pub m_exp: f64,
    pub fermion_number: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, Default)]
pub struct ScanOutput {
    pub rows: Vec<ScanRow>,
    /// `|E0(cutoff) - E0(cutoff - 1)|` for consecutive cutoffs in the scan.
    pub e0_diff: Vec<(usize, f64)>,
}

struct Ops<T: Scalar> {
    deformed: operator_core::CompiledOperator<T>,
    hamiltonian: operator_core::CompiledOperator<T>,
    casimir: operator_core::CompiledOperator<T>,
    rotation: Box<dyn LinearOperator<T>>,
    fermions: Option<operator_core::CompiledOperator<T>>,
}

fn terms(model: &Model, d: &Deformation) -> Result<(TermSum, TermSum, TermSum, TermSum)> {
    let basis = model.basis()?;
    let h = match model {
        Model::Bosonic(p) => bosonic_hamiltonian_terms(p, &basis)?,
        Model::MiniBmn(p) => minibmn_hamiltonian_terms(p, &basis)?,
    };
    let g = gauge_generator_terms(model, &basis)?;
    let m = so2_generator_terms(model, &basis)?;
    let hp = deform_terms(&h, &g, &m, d)?;
    let cas = gauge_casimir_terms(model, &basis)?;
    Ok((h, hp, cas, m))
}

fn solve_generic<T: Scalar>(
    ops: &Ops<T>,
    levels: usize,
    opts: &EigenOptions,
) -> Result<Vec<LevelData>> {
    let eig = lowest_eigenpairs(&ops.deformed, levels, opts)?;
    let mut out = Vec::with_capacity(levels);
    for ((&theta, v), &res) in eig.values.iter().zip(&eig.vectors).zip(&eig.residuals) {
        out.push(LevelData {
            eigenvalue: theta,
            energy: expectation_real(&ops.hamiltonian, v)?,
            g2: expectation_real(&ops.casimir, v)?,
            m_exp: expectation_real(ops.rotation.as_ref(), v)?,
            fermion_number: match &ops.fermions {
                Some(f) => expectation_real(f, v)?,
                None => 0.0,
            },
            residual: res,
        });
    }
    let tie = 10.0 * opts.tol.max(1e-9);
    let mut start = 0;
    while start < out.len() {
        let mut end = start + 1;
        while end < out.len() && (out[end].eigenvalue - out[start].eigenvalue).abs() <= tie {
            end += 1;
        }
        out[start..end].sort_by(|a, b| b.m_exp.total_cmp(&a.m_exp));
        start = end;
    }
    Ok(out)
}

/// Lowest `levels` eigenstates of the deformed Hamiltonian and their observables.
pub fn solve_model(
    model: &Model,
    d: &Deformation,
    levels: usize,
    opts: &EigenOptions,
) -> Result<Vec<LevelData>> {
    let (h, hp, cas, m) = terms(model, d)?;
    match model {
        Model::Bosonic(_) => {
            let basis = model.basis()?;
            let ops: Ops<f64> = Ops {
                deformed: hp.compile()?,
                hamiltonian: h.compile()?,
                casimir: cas.compile()?,
                rotation: Box::new(quarter_turn(model, &basis)?),
                fermions: None,
            };
            solve_generic(&ops, levels, opts)
        }
        Model::MiniBmn(_) => {
            let basis = model.basis()?;
            let ops: Ops<Complex64> = Ops {
                deformed: hp.compile()?,
                hamiltonian: h.compile()?,
                casimir: cas.compile()?,
                rotation: Box::new(m.compile::<Complex64>()?),
                fermions: Some(fermion_number_terms(&basis)?.compile()?),
            };
            solve_generic(&ops, levels, opts)
        }
    }
}

/// One solve per cutoff, `levels` rows each.
pub fn truncation_scan(
    model: &Model,
    cutoffs: &[usize],
    levels: usize,
    penalty: &Penalty,
    opts: &EigenOptions,
) -> Result<ScanOutput> {
    if cutoffs.is_empty() || cutoffs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(crate::SpectrumError::InvalidRequest(
            "cutoffs must be a non-empty ascending list".into(),
        ));
    }
    let mut out = ScanOutput::default();
    let mut prev: Option<(usize, f64)> = None;
    for &cutoff in cutoffs {
        let mdl = model.with_cutoff(cutoff);
        let d = penalty.at(cutoff);
        let data = solve_model(&mdl, &d, levels, opts)?;
        let (name, mu) = match mdl {
            Model::Bosonic(p) => ("bosonic", p.mass()),
            Model::MiniBmn(p) => ("minibmn", p.mu),
        };
        for (level, l) in data.iter().enumerate() {
            out.rows.push(ScanRow {
                model: name.into(),
                n: mdl.n(),
                lambda: mdl.lambda(),
                mu,
                cutoff,
                c: d.c,
                cprime: d.cprime,
                j: d.j,
                level,
                energy: l.energy,
                g2: l.g2,
                m_exp: l.m_exp,
                fermion_number: l.fermion_number,
                residual: l.residual,
            });
        }
        let e0 = data[0].energy;
        if let Some((pc, pe)) = prev {
            if pc + 1 == cutoff {
                out.e0_diff.push((cutoff, (e0 - pe).abs()));
            }
        }
        prev = Some((cutoff, e0));
    }
    Ok(out)
}

/// Writes rows as CSV with nine significant digits.
pub fn write_scan_csv<W: Write>(rows: &[ScanRow], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record([
        "model", "N", "lambda", "mu", "Lambda", "c", "cprime", "J", "level", "energy", "g2",
        "m_exp", "fermion_number", "residual",
    ])?;
    let f = |x: f64| format!("{:.8e}", x);
    for r in rows {
        wr.write_record([
            r.model.clone(),
            r.n.to_string(),
            f(r.lambda),
            f(r.mu),
            r.cutoff.to_string(),
            f(r.c),
            f(r.cprime),
            f(r.j),
            r.level.to_string(),
            f(r.energy),
            f(r.g2),
            f(r.m_exp),
            f(r.fermion_number),
            f(r.residual),
        ])?;
    }
    wr.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// `|| ({Q, Q^dagger} - 2 (H - mu M)) |E'_0> ||` for the ground state of the
/// deformed minimal BMN Hamiltonian. Vanishes without truncation.
pub fn bps_residual(p: &MiniBmnParams, d: &Deformation, opts: &EigenOptions) -> Result<f64> {
    let model = Model::MiniBmn(*p);
    let basis = model.basis()?;
    let (h, hp, _, m) = terms(&model, d)?;
    let q = supercharge_terms(p, &basis)?;
    let qd = q.adjoint();
    let anti = (&q * &qd).add(&(&qd * &q))?;
    let rhs = h.add(&m.scale_re(-p.mu))?.scale_re(-2.0);
    let defect: operator_core::CompiledOperator<Complex64> = anti.add(&rhs)?.compile()?;
    let deformed: operator_core::CompiledOperator<Complex64> = hp.compile()?;
    let eig = lowest_eigenpairs(&deformed, 1, opts)?;
    let v = &eig.vectors[0];
    let mut w = vec![Complex64::new(0.0, 0.0); v.len()];
    defect.apply(v, &mut w);
    Ok(w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
}
