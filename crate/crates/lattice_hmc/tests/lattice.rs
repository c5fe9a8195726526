use lattice_hmc::*;
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

fn params(n: usize, lambda: f64, t: f64, n_t: usize, gauged: bool) -> LatticeParams {
    LatticeParams::new(n, lambda, 1.0, t, n_t, gauged).unwrap()
}

fn random_state(p: &LatticeParams, seed: u64) -> LatticeState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = LatticeState::random(p, 0.7, &mut rng);
    if p.gauged {
        for u in &mut s.u {
            *u = random_su_n(p.n, &mut rng);
        }
    }
    s
}

fn tr(a: &Mat, b: &Mat) -> f64 {
    (a * b).trace().re
}

#[test]
fn trivial_actions() {
    let p = params(3, 1.0, 0.2, 8, true);
    let s = LatticeState::cold(&p);
    assert_eq!(action(&s, &p).unwrap(), 0.0);
    assert_eq!(virial_energy(&s, &p).unwrap(), 0.0);
    let f = forces(&s, &p).unwrap();
    assert!(f.x.iter().flatten().all(|m| m.norm() == 0.0));

    // Constant fields: the stencil annihilates them, only the potential is left.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let x1 = random_traceless_hermitian(3, &mut rng);
    let x2 = random_traceless_hermitian(3, &mut rng);
    let mut c = s.clone();
    for site in &mut c.x {
        site[0] = x1.clone();
        site[1] = x2.clone();
    }
    let k = &x1 * &x2 - &x2 * &x1;
    let per_site = 0.5 * (tr(&x1, &x1) + tr(&x2, &x2)) - 0.25 * 2.0 * tr(&k, &k);
    let expect = 3.0 * p.spacing() * 8.0 * per_site;
    assert!((action(&c, &p).unwrap() - expect).abs() < 1e-10 * expect.abs());
}

#[test]
fn gauge_invariance() {
    let p = params(3, 1.3, 0.3, 6, true);
    let s = random_state(&p, 11);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let w: Vec<Mat> = (0..p.n_t).map(|_| random_su_n(3, &mut rng)).collect();
    let g = s.gauge_transform(&w);
    g.check(&p).unwrap();
    let (a0, a1) = (action(&s, &p).unwrap(), action(&g, &p).unwrap());
    assert!((a0 - a1).abs() < 1e-10 * a0.abs().max(1.0), "{a0} {a1}");
    let (e0, e1) = (virial_energy(&s, &p).unwrap(), virial_energy(&g, &p).unwrap());
    assert!((e0 - e1).abs() < 1e-10 * e0.abs().max(1.0));
}

fn directional_check(p: &LatticeParams, seed: u64) {
    let s = random_state(p, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed + 100);
    let dx: Vec<Vec<Mat>> = (0..p.n_t)
        .map(|_| (0..FLAVORS).map(|_| random_traceless_hermitian(p.n, &mut rng)).collect())
        .collect();
    let du: Vec<Mat> = (0..p.n_t).map(|_| random_traceless_hermitian(p.n, &mut rng)).collect();
    let shifted = |h: f64| {
        let mut t = s.clone();
        for (site, d) in t.x.iter_mut().zip(&dx) {
            for (m, dm) in site.iter_mut().zip(d) {
                *m += dm.scale(h);
            }
        }
        if p.gauged {
            for (u, a) in t.u.iter_mut().zip(&du) {
                *u = expi(&a.scale(h)) * &*u;
            }
        }
        t
    };
    let h = 1e-5;
    let fd = (action(&shifted(h), p).unwrap() - action(&shifted(-h), p).unwrap()) / (2.0 * h);
    let f = forces(&s, p).unwrap();
    let mut an = 0.0;
    for (fs, ds) in f.x.iter().zip(&dx) {
        for (a, b) in fs.iter().zip(ds) {
            an += tr(a, b);
        }
    }
    for (a, b) in f.u.iter().zip(&du) {
        an += tr(a, b);
    }
    assert!((fd - an).abs() < 1e-6 * an.abs().max(1.0), "fd {fd} analytic {an}");
    for m in f.x.iter().flatten().chain(&f.u) {
        assert!((m - m.adjoint()).norm() < 1e-12 && m.trace().norm() < 1e-10);
    }
}

#[test]
fn forces_match_finite_differences() {
    directional_check(&params(2, 0.5, 0.4, 6, true), 1);
    directional_check(&params(3, 2.0, 0.1, 5, true), 2);
    directional_check(&params(3, 1.0, 0.25, 7, false), 3);
}

#[test]
fn ungauged_links_stay_trivial() {
    let p = params(2, 1.0, 0.4, 8, false);
    let s0 = random_state(&p, 4);
    assert!(forces(&s0, &p).unwrap().u.iter().all(|m| m.norm() == 0.0));
    let mut s = s0;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let integ = Integrator { step_size: 0.05, n_steps: 10 };
    for _ in 0..20 {
        hmc_trajectory(&mut s, &p, &integ, &mut rng).unwrap();
    }
    assert!(s.u.iter().all(|u| *u == Mat::identity(2, 2)));
}

fn thermalized(p: &LatticeParams, seed: u64) -> LatticeState {
    let sched = Schedule { n_traj: 1, burn_in_mdtu: 100.0, ..Default::default() };
    run_chain(p, &sched, seed).unwrap().final_state
}

#[test]
fn leapfrog_is_reversible() {
    for p in [params(2, 0.5, 0.4, 8, true), params(3, 1.0, 0.1, 8, true)] {
        let s0 = thermalized(&p, 7);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mom0 = Momenta::sample(&p, &mut rng);
        let integ = Integrator { step_size: 0.05, n_steps: 20 };
        let (mut s, mut mom) = (s0.clone(), mom0.clone());
        leapfrog(&mut s, &mut mom, &p, &integ);
        assert!(s.distance(&s0) > 0.1);
        mom.negate();
        leapfrog(&mut s, &mut mom, &p, &integ);
        assert!(s.distance(&s0) < 1e-8, "{}", s.distance(&s0));
    }
}

#[test]
fn energy_violation_scales_quadratically() {
    let p = params(3, 1.0, 0.1, 12, true);
    let s0 = thermalized(&p, 21);
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mom0 = Momenta::sample(&p, &mut rng);
    let h0 = mom0.kinetic() + action(&s0, &p).unwrap();
    let dh = |integ: Integrator| {
        let (mut s, mut m) = (s0.clone(), mom0.clone());
        leapfrog(&mut s, &mut m, &p, &integ);
        m.kinetic() + action(&s, &p).unwrap() - h0
    };
    let tiny = dh(Integrator { step_size: 1e-4, n_steps: 10 });
    assert!(tiny.abs() < 1e-5, "{tiny}");
    let eps = [0.02, 0.01, 0.005];
    let xs: Vec<f64> = eps.iter().map(|e: &f64| e.ln()).collect();
    let ys: Vec<f64> = eps
        .iter()
        .map(|&e| dh(Integrator { step_size: e, n_steps: (0.4 / e).round() as usize }).abs().ln())
        .collect();
    let (mx, my) = (xs.iter().sum::<f64>() / 3.0, ys.iter().sum::<f64>() / 3.0);
    let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    assert!((slope - 2.0).abs() < 0.1, "slope {slope}");
}

#[test]
fn metropolis_identity_and_tuned_acceptance() {
    let p = params(2, 0.5, 0.4, 16, true);
    let sched = Schedule { n_traj: 2000, burn_in_mdtu: 200.0, ..Default::default() };
    let out = run_chain(&p, &sched, 31).unwrap();
    assert!((0.65..=0.99).contains(&out.acceptance), "{}", out.acceptance);
    let (w, err) = out.exp_minus_dh;
    assert!((w - 1.0).abs() < 2.0 * err, "<exp(-dH)> = {w} +- {err}");
    out.final_state.check(&p).unwrap();
    assert_eq!(out.records.len(), 2000);
}

/// `<x_t^2>` of one real mode from the real-space quadratic form.
fn free_oracle(p: &LatticeParams) -> f64 {
    let (n_t, a, nn) = (p.n_t, p.spacing(), p.n as f64);
    let mut d = DMatrix::<f64>::zeros(n_t, n_t);
    for t in 0..n_t {
        d[(t, (t + 2) % n_t)] += -0.5;
        d[(t, (t + 1) % n_t)] += 2.0;
        d[(t, t)] += -1.5;
    }
    let k = (d.transpose() * &d).scale(nn / a) + DMatrix::identity(n_t, n_t).scale(nn * a * p.m2);
    let inv = k.try_inverse().unwrap();
    let modes = (FLAVORS * (p.n * p.n - 1)) as f64;
    modes * nn * p.m2 * inv.trace() / n_t as f64
}

#[test]
fn free_lattice_energy() {
    for (n, t, n_t) in [(2, 0.2, 16), (3, 0.05, 24), (2, 0.4, 8)] {
        let p = params(n, 0.0, t, n_t, false);
        let (a, b) = (free_virial_energy(&p), free_oracle(&p));
        assert!((a - b).abs() < 1e-10 * b, "{a} {b}");
    }
    // Continuum limit: 6 (1/2 + 1/(e^{1/T} - 1)) for SU(2).
    let exact = 6.0 * (0.5 + 1.0 / ((1.0f64 / 0.2).exp() - 1.0));
    // The estimator carries an O(a) lattice artifact; a quadratic in `a`
    // through three spacings removes it.
    let pts: Vec<(f64, f64)> = [64, 128, 256]
        .iter()
        .map(|&n_t| {
            let p = params(2, 0.0, 0.2, n_t, false);
            (p.spacing(), free_virial_energy(&p))
        })
        .collect();
    let lagrange0: f64 = (0..3)
        .map(|i| {
            let w: f64 = (0..3).filter(|&j| j != i).map(|j| pts[j].0 / (pts[j].0 - pts[i].0)).product();
            w * pts[i].1
        })
        .sum();
    assert!((lagrange0 - exact).abs() < 1e-4 * exact, "{lagrange0} vs {exact}");
    assert!((pts[0].1 - exact) / (pts[1].1 - exact) > 1.8);
}

#[test]
fn free_chain_matches_exact_lattice_value() {
    let p = params(2, 0.0, 0.2, 16, false);
    let sched = Schedule { n_traj: 4000, burn_in_mdtu: 200.0, ..Default::default() };
    let out = run_chain(&p, &sched, 41).unwrap();
    let exact = free_virial_energy(&p);
    let s = &out.series;
    assert!((s.mean - exact).abs() < 3.0 * s.error, "{} +- {} vs {exact}", s.mean, s.error);
}

#[test]
fn interacting_su2_reference_point() {
    // Gauged SU(2), lambda = 2, T = 0.4, n_t = 16: 3.296(32).
    let p = params(2, 2.0, 0.4, 16, true);
    let sched = Schedule { n_traj: 6000, burn_in_mdtu: 300.0, ..Default::default() };
    let out = run_chain(&p, &sched, 51).unwrap();
    let s = &out.series;
    let sigma = s.error.hypot(0.032);
    assert!((s.mean - 3.296).abs() < 3.0 * sigma, "{} +- {}", s.mean, s.error);
}

#[test]
fn chains_are_reproducible() {
    let p = params(2, 1.0, 0.3, 8, true);
    let sched = Schedule { n_traj: 50, burn_in_mdtu: 20.0, ..Default::default() };
    let a = run_chain(&p, &sched, 9).unwrap();
    let b = run_chain(&p, &sched, 9).unwrap();
    let c = run_chain(&p, &sched, 10).unwrap();
    assert_eq!(a.records, b.records);
    assert_ne!(a.records, c.records);
    assert!(matches!(
        run_chain(&p, &Schedule { n_traj: 0, ..sched }, 9),
        Err(LatticeError::NoMeasurements)
    ));
}

#[test]
fn csv_and_checkpoint() {
    let p = params(3, 1.0, 0.1, 6, true);
    let sched = Schedule { n_traj: 5, burn_in_mdtu: 5.0, ..Default::default() };
    let out = run_chain(&p, &sched, 3).unwrap();
    let mut buf = Vec::new();
    write_chain_csv(&out.records, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().next().unwrap(), "mdtu,energy,accept,delta_h");
    assert_eq!(text.lines().count(), 6);

    let mut bin = Vec::new();
    save_checkpoint(&out.final_state, &p, &mut bin).unwrap();
    let (q, s) = load_checkpoint(bin.as_slice()).unwrap();
    assert_eq!(q, p);
    assert_eq!(s, out.final_state);
    let cont = run_chain_from(&p, &sched, 4, s).unwrap();
    assert_eq!(cont.records.len(), 5);

    bin[0] = b'X';
    assert!(matches!(load_checkpoint(bin.as_slice()), Err(LatticeError::Checkpoint(_))));
    bin[0] = b'M';
    bin[8] = 9;
    assert!(matches!(load_checkpoint(bin.as_slice()), Err(LatticeError::Checkpoint(_))));
}

#[test]
fn invalid_inputs() {
    assert!(LatticeParams::new(2, 1.0, 1.0, 0.1, 3, true).is_err());
    assert!(LatticeParams::new(2, 1.0, 1.0, 0.0, 8, true).is_err());
    let p = params(2, 1.0, 0.3, 8, true);
    let mut s = LatticeState::cold(&p);
    s.x[0][0][(0, 1)] = Complex64::new(1.0, 0.0);
    assert!(matches!(action(&s, &p), Err(LatticeError::InvariantViolation(_))));
    let q = params(3, 1.0, 0.3, 8, true);
    assert!(action(&LatticeState::cold(&q), &p).is_err());
}

#[test]
fn autocorrelation_of_known_processes() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let white: Vec<f64> = (0..20_000).map(|_| StandardNormal.sample(&mut rng)).collect();
    let a = integrated_autocorrelation(&white).unwrap();
    assert!((a.tau_int - 0.5).abs() < 0.1, "{}", a.tau_int);

    let mut x = 0.0;
    let ar: Vec<f64> = (0..200_000)
        .map(|_| {
            let e: f64 = StandardNormal.sample(&mut rng);
            x = 0.9 * x + e;
            x
        })
        .collect();
    let a = integrated_autocorrelation(&ar).unwrap();
    assert!((a.tau_int / 9.5 - 1.0).abs() < 0.15, "{}", a.tau_int);
    assert!(a.window as f64 >= 6.0 * a.tau_int);

    assert!(matches!(integrated_autocorrelation(&white[..99]), Err(LatticeError::SeriesTooShort(99))));
    let s = ObservableSeries::new(white[..50].to_vec(), 1.0).unwrap();
    assert_eq!((s.tau_int, s.window), (0.5, None));
    assert!(matches!(ObservableSeries::new(vec![], 1.0), Err(LatticeError::NoMeasurements)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn tau_is_at_least_half(seed in 0u64..1000, rho in -0.5f64..0.95) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = 0.0;
        let v: Vec<f64> = (0..500).map(|_| { let e: f64 = StandardNormal.sample(&mut rng); x = rho * x + e; x }).collect();
        prop_assert!(integrated_autocorrelation(&v).unwrap().tau_int >= 0.5);
    }

    #[test]
    fn action_is_gauge_invariant(seed in 0u64..1000) {
        let p = params(2, 1.0, 0.3, 5, true);
        let s = random_state(&p, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
        let w: Vec<Mat> = (0..p.n_t).map(|_| random_su_n(2, &mut rng)).collect();
        let (a, b) = (action(&s, &p).unwrap(), action(&s.gauge_transform(&w), &p).unwrap());
        prop_assert!((a - b).abs() < 1e-10 * a.abs().max(1.0));
    }
}
