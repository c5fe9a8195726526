use models::{build_bosonic_hamiltonian, build_minibmn_hamiltonian, BosonicParams, MiniBmnParams};
use nalgebra::{DVector, SymmetricEigen};
use operator_core::{c64, Complex64, SparseOperator};
use proptest::prelude::*;
use qubit_map::*;
use rand::{Rng, SeedableRng};

fn ket_bra(r: usize, c: usize) -> SparseOperator {
    SparseOperator::from_triplets(2, vec![(r, c, c64(1.0, 0.0))], false).unwrap()
}

#[test]
fn single_qubit_projectors_and_ladders() {
    let raise = encode(&ket_bra(1, 0), 1).unwrap();
    assert_eq!(raise.coefficient("X"), c64(0.5, 0.0));
    assert_eq!(raise.coefficient("Y"), c64(0.0, -0.5));
    let lower = encode(&ket_bra(0, 1), 1).unwrap();
    assert_eq!(lower.coefficient("Y"), c64(0.0, 0.5));
    // Standard Z = diag(1, -1), so |1><1| = (I - Z)/2.
    let one = encode(&ket_bra(1, 1), 1).unwrap();
    assert_eq!(one.coefficient("I"), c64(0.5, 0.0));
    assert_eq!(one.coefficient("Z"), c64(-0.5, 0.0));
    let id = encode(&SparseOperator::identity(8), 3).unwrap();
    assert_eq!(id.len(), 1);
    assert_eq!(id.coefficient("III"), c64(1.0, 0.0));
}

#[test]
fn number_operator_binary_layout() {
    // n = b_0 + 2 b_1 with b_0 on the first qubit.
    let basis = operator_core::BasisSpec::new(1, 1, 4, 0).unwrap();
    let (_, _, n) = operator_core::truncated_ladder(4).unwrap();
    let p = encode_fock(&n, &basis).unwrap();
    assert_eq!(p.coefficient("II"), c64(1.5, 0.0));
    assert_eq!(p.coefficient("ZI"), c64(-0.5, 0.0));
    assert_eq!(p.coefficient("IZ"), c64(-1.0, 0.0));
    assert_eq!(p.len(), 3);
}

fn fixtures() -> Vec<(SparseOperator, operator_core::BasisSpec)> {
    let mut out = Vec::new();
    for cutoff in [2, 4] {
        let p = BosonicParams::new(2, 0.2, cutoff);
        let b = p.basis().unwrap();
        out.push((build_bosonic_hamiltonian(&p, &b).unwrap(), b));
    }
    let p = MiniBmnParams::new(0.5, 2);
    let b = p.basis().unwrap();
    out.push((build_minibmn_hamiltonian(&p, &b).unwrap(), b));
    out
}

#[test]
fn round_trip_and_real_coefficients() {
    for (h, basis) in fixtures() {
        let p = encode_fock(&h, &basis).unwrap();
        assert!(p.terms().iter().all(|(c, _)| c.im == 0.0));
        let back = decode(&p).unwrap();
        let orig = to_qubit_order(&h, &basis).unwrap();
        assert!(back.max_abs_diff(&orig).unwrap() < 1e-12);
    }
}

#[test]
fn lowest_cutoff_term_count_is_stable() {
    let (h, basis) = fixtures().remove(0);
    let a = encode_fock(&h, &basis).unwrap();
    let b = encode_fock(&h, &basis).unwrap();
    assert_eq!(a, b);
    let labels: Vec<String> = a.terms().iter().map(|(_, p)| p.label(6)).collect();
    let mut sorted = labels.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), labels.len());
}

#[test]
fn ground_state_expectation() {
    let (h, basis) = fixtures().remove(0);
    let e = SymmetricEigen::new(h.to_dense());
    let k = e.eigenvalues.imin();
    let v: Vec<Complex64> = e.eigenvectors.column(k).iter().cloned().collect();
    let p = encode_fock(&h, &basis).unwrap();
    let psi = permute_state(&v, &basis).unwrap();
    let val = pauli_expectation(&p, &psi).unwrap();
    assert!((val - 3.14808).abs() < 5e-6);
    assert!((val - e.eigenvalues[k]).abs() < 1e-10);
}

#[test]
fn random_state_expectations_match_dense() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for (h, basis) in fixtures() {
        let p = encode_fock(&h, &basis).unwrap();
        let hq = to_qubit_order(&h, &basis).unwrap();
        let dense = hq.to_dense();
        for _ in 0..34 {
            let mut v = DVector::from_fn(h.dim(), |_, _| c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            v /= c64(v.norm(), 0.0);
            let expect = (v.adjoint() * &dense * &v)[(0, 0)].re;
            let got = pauli_expectation(&p, v.as_slice()).unwrap();
            assert!((got - expect).abs() < 1e-10);
        }
    }
}

#[test]
fn text_format_round_trip() {
    let (h, basis) = fixtures().remove(2);
    let p = encode_fock(&h, &basis).unwrap();
    let mut buf = Vec::new();
    write_pauli_sum(&p, &mut buf).unwrap();
    let back = read_pauli_sum(buf.as_slice()).unwrap();
    assert_eq!(back, p);
    let line = "0.5 0.0 XZI\n";
    let q = read_pauli_sum(line.as_bytes()).unwrap();
    assert_eq!(q.coefficient("XZI"), c64(0.5, 0.0));
    assert!(matches!(read_pauli_sum("0.5 0.0 XQ\n".as_bytes()), Err(QubitError::Parse { line: 1, .. })));
}

#[test]
fn rejects_bad_dimensions() {
    assert!(matches!(encode(&SparseOperator::identity(3), 2), Err(QubitError::NonPowerOfTwoDimension(3))));
    let b = operator_core::BasisSpec::bosonic(2, 3).unwrap();
    assert!(matches!(qubit_count(&b), Err(QubitError::NonPowerOfTwoDimension(3))));
    let p = encode(&SparseOperator::identity(4), 2).unwrap();
    assert!(matches!(pauli_expectation(&p, &[c64(1.0, 0.0)]), Err(QubitError::DimensionMismatch { .. })));
}

proptest! {
    #[test]
    fn random_operators_round_trip(entries in prop::collection::vec((0usize..16, 0usize..16, -1.0f64..1.0, -1.0f64..1.0), 1..40)) {
        let t = entries.into_iter().map(|(r, c, a, b)| (r, c, c64(a, b))).collect();
        let m = SparseOperator::from_triplets(16, t, false).unwrap();
        let back = decode(&encode(&m, 4).unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&m).unwrap() < 1e-12);
    }

    #[test]
    fn hermitian_inputs_have_real_coefficients(entries in prop::collection::vec((0usize..8, 0usize..8, -1.0f64..1.0, -1.0f64..1.0), 1..20)) {
        let mut t = Vec::new();
        for (r, c, a, b) in entries {
            let v = if r == c { c64(a, 0.0) } else { c64(a, b) };
            t.push((r, c, v));
            if r != c {
                t.push((c, r, v.conj()));
            }
        }
        let m = SparseOperator::from_triplets(8, t, false).unwrap();
        let p = encode(&m, 3).unwrap();
        prop_assert!(p.terms().iter().all(|(c, _)| c.im.abs() < 1e-14));
    }
}
