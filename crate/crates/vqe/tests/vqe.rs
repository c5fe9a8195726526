use models::{build_bosonic_hamiltonian, BosonicParams};
use nalgebra::SymmetricEigen;
use operator_core::c64;
use proptest::prelude::*;
use qubit_map::{decode, encode_fock, PauliSum};
use vqe::*;

fn bosonic(lambda: f64, cutoff: usize) -> (PauliSum, f64, f64) {
    let p = BosonicParams::new(2, lambda, cutoff);
    let b = p.basis().unwrap();
    let h = build_bosonic_hamiltonian(&p, &b).unwrap();
    let diag0 = h.get(0, 0).re;
    let ps = encode_fock(&h, &b).unwrap();
    let e0 = SymmetricEigen::new(decode(&ps).unwrap().to_dense()).eigenvalues.min();
    (ps, e0, diag0)
}

#[test]
fn parameter_counts() {
    assert_eq!(AnsatzSpec::new(6, AnsatzForm::Ry, 3).unwrap().n_params(), 24);
    assert_eq!(AnsatzSpec::new(9, AnsatzForm::RyRz, 8).unwrap().n_params(), 162);
    assert!(matches!(AnsatzSpec::new(15, AnsatzForm::Ry, 1), Err(VqeError::TooManyQubits(15))));
    let s = AnsatzSpec::new(3, AnsatzForm::Ry, 1).unwrap();
    assert!(matches!(s.state(&[0.0; 5]), Err(VqeError::ParameterCountMismatch { expected: 6, got: 5 })));
}

#[test]
fn simple_states() {
    let s = AnsatzSpec::new(4, AnsatzForm::Ry, 3).unwrap();
    let psi = s.state(&vec![0.0; s.n_params()]).unwrap();
    assert_eq!(psi[0], c64(1.0, 0.0));
    assert!(psi[1..].iter().all(|v| v.norm() == 0.0));
    let one = AnsatzSpec::new(1, AnsatzForm::Ry, 0).unwrap();
    let psi = one.state(&[std::f64::consts::PI]).unwrap();
    assert!(psi[0].norm() < 1e-15 && (psi[1] - c64(1.0, 0.0)).norm() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn states_are_normalized(theta in prop::collection::vec(0.0..std::f64::consts::TAU, 36)) {
        let s = AnsatzSpec::new(6, AnsatzForm::RyRz, 2).unwrap();
        let psi = s.state(&theta).unwrap();
        let n: f64 = psi.iter().map(|v| v.norm_sqr()).sum();
        prop_assert!((n - 1.0).abs() < 1e-12);
    }

    #[test]
    fn energies_respect_the_variational_bound(theta in prop::collection::vec(0.0..std::f64::consts::TAU, 24)) {
        let (h, e0, _) = bosonic(0.2, 2);
        let s = AnsatzSpec::new(6, AnsatzForm::Ry, 3).unwrap();
        let e = energy(&h, &s, &theta).unwrap();
        prop_assert!(e >= e0 - 1e-9);
        prop_assert!(e >= 3.14808 - 1e-9);
        let obj = Objective::new(&h, s).unwrap();
        prop_assert!((obj.energy(&theta).unwrap() - e).abs() < 1e-10);
    }
}

#[test]
fn zero_angle_energies() {
    let s = AnsatzSpec::new(6, AnsatzForm::Ry, 3).unwrap();
    let zero = vec![0.0; 24];
    let (free, _, _) = bosonic(0.0, 2);
    assert!((energy(&free, &s, &zero).unwrap() - 3.0).abs() < 1e-12);
    let (h, _, diag0) = bosonic(0.2, 2);
    assert!((energy(&h, &s, &zero).unwrap() - diag0).abs() < 1e-12);
}

#[test]
fn optimizers_solve_a_quadratic() {
    let f = |t: &[f64]| Ok((t[0] - 1.0).powi(2) + 0.5 * (t[1] + 2.0).powi(2));
    let nm = nelder_mead(f, &[0.0, 0.0], 0.5, 2000).unwrap();
    assert!((nm.theta[0] - 1.0).abs() < 1e-6 && nm.value < 1e-10);
    let fg = |t: &[f64]| Ok((f(t)?, vec![2.0 * (t[0] - 1.0), t[1] + 2.0]));
    let qn = quasi_newton(fg, &[0.0, 0.0], 100).unwrap();
    assert!((qn.theta[0] - 1.0).abs() < 1e-6 && qn.value < 1e-10);
    assert!(nm.trace.len() <= 2000 && qn.trace.len() <= 100);
    assert!(nm.trace.windows(2).all(|w| w[1] <= w[0]));
    let bad = nelder_mead(|_| Ok(f64::NAN), &[0.0], 0.5, 10);
    assert!(matches!(bad, Err(VqeError::ObjectiveNotFinite)));
    assert!(nelder_mead(f, &[0.0, 0.0], 0.5, 0).is_err());
}

#[test]
fn gradients_agree() {
    let (h, _, _) = bosonic(1.0, 2);
    for form in [AnsatzForm::Ry, AnsatzForm::RyRz] {
        let s = AnsatzSpec::new(6, form, 2).unwrap();
        let obj = Objective::new(&h, s).unwrap();
        let theta: Vec<f64> = (0..s.n_params()).map(|k| 0.37 * k as f64 + 0.1).collect();
        let ps = obj.parameter_shift_gradient(&theta).unwrap();
        let fd = obj.fd_gradient(&theta, 1e-5).unwrap();
        let (_, adj) = obj.gradient(&theta).unwrap();
        for k in 0..theta.len() {
            assert!((ps[k] - fd[k]).abs() < 1e-6, "{k}: {} {}", ps[k], fd[k]);
            assert!((ps[k] - adj[k]).abs() < 1e-10);
        }
    }
}

#[test]
fn restarts_are_deterministic_and_bounded() {
    let (h, e0, _) = bosonic(0.2, 2);
    let obj = Objective::new(&h, AnsatzSpec::new(6, AnsatzForm::Ry, 3).unwrap()).unwrap();
    let one = multi_start(&obj, Optimizer::nelder_mead(), 1, 500, 3).unwrap();
    assert_eq!(one.min, one.max);
    assert_eq!(one.min, one.mean);
    assert_eq!(one.std, 0.0);
    let a = multi_start(&obj, Optimizer::quasi_newton_fd(), 3, 200, 9).unwrap();
    let b = multi_start(&obj, Optimizer::quasi_newton_fd(), 3, 200, 9).unwrap();
    assert_eq!(a, b);
    assert!(a.min <= a.mean && a.mean <= a.max);
    for r in &a.runs {
        assert!(r.best >= e0 - 1e-9);
        assert!(r.trace.len() <= 200);
    }
}

#[test]
fn lowest_cutoff_best_of_many_restarts() {
    let (h, e0, _) = bosonic(0.2, 2);
    let obj = Objective::new(&h, AnsatzSpec::new(6, AnsatzForm::Ry, 3).unwrap()).unwrap();
    let s = multi_start(&obj, Optimizer::nelder_mead(), 100, 10_000, 2021).unwrap();
    assert!(s.min >= 3.14808 - 1e-9 && s.min <= 3.1496, "{}", s.min);
    assert!(s.min - e0 < 0.002);
}

#[test]
fn gap_grows_with_coupling() {
    let mut gaps = Vec::new();
    for lambda in [0.2, 0.5, 1.0, 2.0] {
        let (h, e0, _) = bosonic(lambda, 2);
        let obj = Objective::new(&h, AnsatzSpec::new(6, AnsatzForm::Ry, 3).unwrap()).unwrap();
        let opt = Optimizer::QuasiNewton { gradient: Gradient::Adjoint };
        let s = multi_start(&obj, opt, 20, 2000, 5).unwrap();
        assert!(s.min >= e0 - 1e-9);
        gaps.push(s.min - e0);
    }
    let inversions = gaps.windows(2).filter(|w| w[1] < w[0]).count();
    assert!(inversions <= 1, "{gaps:?}");
}

#[test]
fn qubit_count_must_match() {
    let (h, _, _) = bosonic(0.2, 2);
    let s = AnsatzSpec::new(5, AnsatzForm::Ry, 1).unwrap();
    assert!(matches!(Objective::new(&h, s), Err(VqeError::QubitMismatch { .. })));
}
