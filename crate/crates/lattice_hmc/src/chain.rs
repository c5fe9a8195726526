use std::io::{Read, Write};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::action::virial_unchecked;
use crate::{
    hmc_trajectory, Integrator, LatticeError, LatticeParams, LatticeState, Mat, ObservableSeries,
    Result, FLAVORS,
};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    /// Trajectories after burn-in.
    pub n_traj: usize,
    pub burn_in_mdtu: f64,
    /// MDTU between saved measurements.
    pub save_stride_mdtu: f64,
    pub trajectory_length: f64,
    pub initial_step_size: f64,
    /// Adjust the step size during burn-in toward ~75% acceptance.
    pub tune: bool,
}

impl Default for Schedule {
    fn default() -> Self {
        Self {
            n_traj: 10_000,
            burn_in_mdtu: 1000.0,
            save_stride_mdtu: 1.0,
            trajectory_length: 1.0,
            initial_step_size: 0.05,
            tune: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainRecord {
    pub mdtu: f64,
    pub energy: f64,
    pub accept: bool,
    pub delta_h: f64,
}

#[derive(Clone, Debug)]
pub struct ChainOutput {
    pub params: LatticeParams,
    pub schedule: Schedule,
    pub seed: u64,
    /// Integrator used after burn-in.
    pub integrator: Integrator,
    /// One per measured trajectory.
    pub records: Vec<ChainRecord>,
    /// Energies at the save stride.
    pub series: ObservableSeries,
    pub acceptance: f64,
    /// Mean of `exp(-dH)` over measured trajectories and its naive error.
    pub exp_minus_dh: (f64, f64),
    pub final_state: LatticeState,
}

fn integrator_for(len: f64, eps: f64) -> Integrator {
    let n_steps = ((len / eps).round() as usize).max(1);
    Integrator {
        step_size: len / n_steps as f64,
        n_steps,
    }
}

/// Runs a chain from a cold start. Identical `(p, schedule, seed)` give
/// identical output.
pub fn run_chain(p: &LatticeParams, schedule: &Schedule, seed: u64) -> Result<ChainOutput> {
    run_chain_from(p, schedule, seed, LatticeState::cold(p))
}

pub fn run_chain_from(
    p: &LatticeParams,
    schedule: &Schedule,
    seed: u64,
    mut state: LatticeState,
) -> Result<ChainOutput> {
    p.validate()?;
    state.check(p)?;
    let len = schedule.trajectory_length;
    if !(len > 0.0) || !(schedule.initial_step_size > 0.0) || !(schedule.save_stride_mdtu > 0.0) {
        return Err(LatticeError::InvalidParameter(
            "trajectory length, step size and stride must be positive".into(),
        ));
    }
    if schedule.n_traj == 0 {
        return Err(LatticeError::NoMeasurements);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut eps = schedule.initial_step_size.min(len);
    let burn = (schedule.burn_in_mdtu / len).ceil() as usize;
    for _ in 0..burn {
        let integ = integrator_for(len, eps);
        match hmc_trajectory(&mut state, p, &integ, &mut rng) {
            Ok(tr) if schedule.tune => eps *= if tr.accepted { 1.02 } else { 0.94 },
            Ok(_) => {}
            Err(LatticeError::IntegratorDiverged(_)) => eps *= 0.5,
            Err(e) => return Err(e),
        }
        eps = eps.min(len);
    }
    let integrator = integrator_for(len, eps);
    let every = ((schedule.save_stride_mdtu / len).round() as usize).max(1);
    let mut records = Vec::with_capacity(schedule.n_traj);
    let mut saved = Vec::with_capacity(schedule.n_traj / every + 1);
    let mut accepted = 0usize;
    let (mut w_sum, mut w_sq) = (0.0, 0.0);
    for k in 0..schedule.n_traj {
        let tr = hmc_trajectory(&mut state, p, &integrator, &mut rng)?;
        let energy = virial_unchecked(&state, p);
        accepted += tr.accepted as usize;
        let w = (-tr.delta_h).exp();
        w_sum += w;
        w_sq += w * w;
        records.push(ChainRecord {
            mdtu: (k + 1) as f64 * len,
            energy,
            accept: tr.accepted,
            delta_h: tr.delta_h,
        });
        if (k + 1) % every == 0 {
            saved.push(energy);
        }
    }
    let n = schedule.n_traj as f64;
    let w_mean = w_sum / n;
    let w_err = ((w_sq / n - w_mean * w_mean).max(0.0) / n).sqrt();
    Ok(ChainOutput {
        params: *p,
        schedule: *schedule,
        seed,
        integrator,
        records,
        series: ObservableSeries::new(saved, every as f64 * len)?,
        acceptance: accepted as f64 / n,
        exp_minus_dh: (w_mean, w_err),
        final_state: state,
    })
}

/// CSV with columns `mdtu,energy,accept,delta_h`.
pub fn write_chain_csv<W: Write>(records: &[ChainRecord], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["mdtu", "energy", "accept", "delta_h"])?;
    for r in records {
        wr.write_record([
            r.mdtu.to_string(),
            format!("{:.12e}", r.energy),
            (r.accept as u8).to_string(),
            format!("{:.6e}", r.delta_h),
        ])?;
    }
    wr.flush()?;
    Ok(())
}

const MAGIC: &[u8; 8] = b"MQMLAT\0\0";
const VERSION: u32 = 1;

fn put_u32<W: Write>(w: &mut W, v: u32) -> Result<()> {
    Ok(w.write_all(&v.to_le_bytes())?)
}

fn put_f64<W: Write>(w: &mut W, v: f64) -> Result<()> {
    Ok(w.write_all(&v.to_le_bytes())?)
}

fn put_mat<W: Write>(w: &mut W, m: &Mat) -> Result<()> {
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            put_f64(w, m[(r, c)].re)?;
            put_f64(w, m[(r, c)].im)?;
        }
    }
    Ok(())
}

fn get_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn get_f64<R: Read>(r: &mut R) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

fn get_mat<R: Read>(r: &mut R, n: usize) -> Result<Mat> {
    let mut m = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = Complex64::new(get_f64(r)?, get_f64(r)?);
        }
    }
    Ok(m)
}

/// Binary dump: magic, version, parameters, then every matrix row-major as
/// little-endian `(re, im)` pairs.
pub fn save_checkpoint<W: Write>(s: &LatticeState, p: &LatticeParams, mut w: W) -> Result<()> {
    s.check(p)?;
    w.write_all(MAGIC)?;
    put_u32(&mut w, VERSION)?;
    put_u32(&mut w, p.n as u32)?;
    put_u32(&mut w, p.n_t as u32)?;
    put_u32(&mut w, FLAVORS as u32)?;
    put_u32(&mut w, p.gauged as u32)?;
    put_f64(&mut w, p.lambda)?;
    put_f64(&mut w, p.m2)?;
    put_f64(&mut w, p.temperature)?;
    for m in s.x.iter().flatten().chain(&s.u) {
        put_mat(&mut w, m)?;
    }
    Ok(w.flush()?)
}

pub fn load_checkpoint<R: Read>(mut r: R) -> Result<(LatticeParams, LatticeState)> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(LatticeError::Checkpoint("not a lattice checkpoint".into()));
    }
    let version = get_u32(&mut r)?;
    if version != VERSION {
        return Err(LatticeError::Checkpoint(format!("unsupported version {version}")));
    }
    let n = get_u32(&mut r)? as usize;
    let n_t = get_u32(&mut r)? as usize;
    if get_u32(&mut r)? as usize != FLAVORS {
        return Err(LatticeError::Checkpoint("flavor count mismatch".into()));
    }
    let gauged = get_u32(&mut r)? != 0;
    let lambda = get_f64(&mut r)?;
    let m2 = get_f64(&mut r)?;
    let temperature = get_f64(&mut r)?;
    let p = LatticeParams::new(n, lambda, m2, temperature, n_t, gauged)?;
    let mut x = Vec::with_capacity(n_t);
    for _ in 0..n_t {
        x.push((0..FLAVORS).map(|_| get_mat(&mut r, n)).collect::<Result<Vec<_>>>()?);
    }
    let u = (0..n_t).map(|_| get_mat(&mut r, n)).collect::<Result<Vec<_>>>()?;
    let s = LatticeState { x, u };
    s.check(&p)?;
    Ok((p, s))
}
