use nalgebra::SymmetricEigen;
use operator_core::{c64, Complex64, SparseOperator};
use models::{
    build_bosonic_hamiltonian, build_gauge_generators, build_minibmn_hamiltonian,
    build_so2_generator, deform, BosonicParams, Deformation, MiniBmnParams, Model,
};
use proptest::prelude::*;
use spectrum::*;

fn dense_lowest(m: &SparseOperator, k: usize) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(m.to_dense()).eigenvalues.iter().cloned().collect();
    v.sort_by(f64::total_cmp);
    v.truncate(k);
    v
}

fn tight() -> EigenOptions {
    EigenOptions { tol: 1e-10, ..Default::default() }
}

fn random_hermitian(n: usize, seed: u64, complex: bool) -> SparseOperator {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut t = Vec::new();
    for r in 0..n {
        t.push((r, r, c64(rng.random_range(-3.0..3.0), 0.0)));
        for c in r + 1..n {
            if rng.random_bool(0.2) {
                let v = c64(rng.random_range(-1.0..1.0), if complex { rng.random_range(-1.0..1.0) } else { 0.0 });
                t.push((r, c, v));
                t.push((c, r, v.conj()));
            }
        }
    }
    SparseOperator::from_triplets(n, t, true).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn lanczos_matches_dense(n in 20usize..90, k in 1usize..5, seed in any::<u64>(), complex in any::<bool>()) {
        let m = random_hermitian(n, seed, complex);
        let opts = EigenOptions { tol: 1e-10, max_basis: 16, ..Default::default() };
        let r = lowest_eigenpairs_sparse(&m, k, &opts).unwrap();
        for (a, b) in r.values.iter().zip(dense_lowest(&m, k)) {
            prop_assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        }
        prop_assert!(r.residuals.iter().all(|&x| x <= 1e-10));
    }
}

#[test]
fn bosonic_levels_match_dense_oracle() {
    let p = BosonicParams::new(2, 1.0, 3);
    let h = build_bosonic_hamiltonian(&p, &p.basis().unwrap()).unwrap();
    let expect = dense_lowest(&h, 6);
    let lz = solve_model(&Model::Bosonic(p), &Deformation::none(), 6, &tight()).unwrap();
    for (l, e) in lz.iter().zip(expect) {
        assert!((l.eigenvalue - e).abs() < 1e-8);
        assert!((l.energy - e).abs() < 1e-8);
    }
}

#[test]
fn deformed_minibmn_matches_dense_oracle() {
    let p = MiniBmnParams::new(0.5, 2);
    let model = Model::MiniBmn(p);
    let basis = p.basis().unwrap();
    let d = Deformation { c: 2.0, cprime: 1.0, j: 0.0 };
    let h = build_minibmn_hamiltonian(&p, &basis).unwrap();
    let g = build_gauge_generators(&model, &basis).unwrap();
    let m = build_so2_generator(&model, &basis).unwrap();
    let hp = deform(&h, &g, &m, &d).unwrap();
    let expect = dense_lowest(&hp, 4);
    let lz = solve_model(&model, &d, 4, &tight()).unwrap();
    for (l, e) in lz.iter().zip(expect) {
        assert!((l.eigenvalue - e).abs() < 1e-8);
    }
}

const LAMBDAS: [f64; 4] = [0.2, 0.5, 1.0, 2.0];

#[test]
fn bosonic_table_values() {
    let e0 = [
        [3.13230465, 3.28285159, 3.45847992, 3.66904008],
        [3.13406307, 3.29894363, 3.52625444, 3.89547837],
        [3.13390803, 3.29649279, 3.51211772, 3.83339247],
    ];
    let g2 = [
        [0.000224293831, 0.003688212672, 0.018964932725, 0.060510041162],
        [0.000184221658, 0.002400096378, 0.011889840764, 0.045924094777],
        [0.000004511062, 0.000178633922, 0.001732981158, 0.011493185261],
    ];
    for (row, cutoff) in (3..=5).enumerate() {
        for (col, &lambda) in LAMBDAS.iter().enumerate() {
            let l = &solve_model(&Model::Bosonic(BosonicParams::new(2, lambda, cutoff)), &Deformation::none(), 1, &tight()).unwrap()[0];
            assert!((l.energy - e0[row][col]).abs() < 1e-8, "E0 at {cutoff} {lambda}: {}", l.energy);
            assert!((l.g2 - g2[row][col]).abs() < 1e-10, "G2 at {cutoff} {lambda}: {}", l.g2);
        }
    }
}

#[test]
fn minibmn_table_values() {
    let e = [
        [-0.000348435200, -0.003873948083, -0.019907205965, -0.084936973789],
        [0.000114126215, 0.002116374610, 0.013418689187, 0.060446205687],
    ];
    let g2 = [
        [0.000027144384, 0.000270665767, 0.001217678752, 0.004391570468],
        [0.000003466155, 0.000071748567, 0.000483864489, 0.002211074147],
    ];
    let dm = [
        [0.000016801483, 0.000182372511, 0.000913116520, 0.003744814441],
        [0.000000040458, 0.000001248745, 0.000008311970, 0.000017373811],
    ];
    for (row, cutoff) in (3..=4).enumerate() {
        for (col, &lambda) in LAMBDAS.iter().enumerate() {
            let d = Deformation { c: cutoff as f64, cprime: 1.0, j: 0.0 };
            let l = &solve_model(&Model::MiniBmn(MiniBmnParams::new(lambda, cutoff)), &d, 1, &tight()).unwrap()[0];
            assert!((l.energy - e[row][col]).abs() < 1e-10, "E at {cutoff} {lambda}: {}", l.energy);
            assert!((l.g2 - g2[row][col]).abs() < 1e-10, "G2 at {cutoff} {lambda}: {}", l.g2);
            assert!((l.m_exp.abs() - dm[row][col]).abs() < 1e-10, "M at {cutoff} {lambda}: {}", l.m_exp);
        }
    }
}

#[test]
fn deformed_bosonic_rotation_pattern() {
    let p = BosonicParams::new(2, 0.2, 4);
    let d = Deformation { c: 4.0, cprime: 0.0, j: 0.0 };
    let lv = solve_model(&Model::Bosonic(p), &d, 5, &tight()).unwrap();
    let signs = [1.0, -1.0, -1.0, 1.0, 1.0];
    let levels = [3.0, 5.0, 5.0, 5.0, 7.0];
    for ((l, s), e) in lv.iter().zip(signs).zip(levels) {
        assert!((l.m_exp - s).abs() < 1e-3, "{lv:?}");
        assert!((l.energy - e).abs() < 0.4);
    }
}

#[test]
fn free_minibmn_sector_levels() {
    let model = Model::MiniBmn(MiniBmnParams::new(0.0, 3));
    let sector = |j: f64| -> Vec<f64> {
        let d = Deformation { c: 3.0, cprime: 1.0, j };
        solve_model(&model, &d, 4, &tight())
            .unwrap()
            .into_iter()
            .filter(|l| (l.m_exp - j).abs() < 1e-8 && l.g2.abs() < 1e-8)
            .map(|l| l.energy)
            .collect()
    };
    let s0 = sector(0.0);
    assert!((s0[0] - 0.0).abs() < 1e-8 && (s0[1] - 2.0).abs() < 1e-8, "{s0:?}");
    let s1 = sector(0.5);
    assert!((s1[0] - 2.5).abs() < 1e-8, "{s1:?}");
}

#[test]
fn bps_residual_shrinks_with_cutoff() {
    // Reference values from an independent dense-matrix prototype.
    let reference = [(3, 5.625072e-2), (4, 2.150792e-3), (5, 8.339977e-3)];
    let mut r = Vec::new();
    for (cutoff, expect) in reference {
        let d = Deformation { c: cutoff as f64, cprime: 1.0, j: 0.0 };
        let v = bps_residual(&MiniBmnParams::new(0.2, cutoff), &d, &tight()).unwrap();
        assert!((v / expect - 1.0).abs() < 1e-5, "{cutoff}: {v}");
        r.push(v);
    }
    assert!(r[1] < r[0] && r[2] < r[0]);
    let free = bps_residual(&MiniBmnParams::new(0.0, 3), &Deformation { c: 3.0, cprime: 1.0, j: 0.0 }, &tight()).unwrap();
    assert!(free < 1e-9);
}

#[test]
fn scan_rows_and_parity_decay() {
    let model = Model::Bosonic(BosonicParams::new(2, 1.0, 3));
    let out = truncation_scan(&model, &[3, 4, 5, 6, 7], 1, &Penalty::none(), &tight()).unwrap();
    assert_eq!(out.rows.len(), 5);
    assert_eq!(out.e0_diff.len(), 4);
    let g: Vec<f64> = out.rows.iter().map(|r| r.g2.ln()).collect();
    assert!(g[2] < g[0] && g[4] < g[2] && g[3] < g[1]);
    assert!(out.e0_diff.windows(2).all(|w| w[1].1 < w[0].1));

    let mut buf = Vec::new();
    write_scan_csv(&out.rows, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rd.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header[..5], ["model", "N", "lambda", "mu", "Lambda"]);
    let back: Vec<ScanRow> = rd.deserialize().collect::<std::result::Result<_, _>>().unwrap();
    for (a, b) in back.iter().zip(&out.rows) {
        assert_eq!(a.cutoff, b.cutoff);
        assert!((a.energy - b.energy).abs() <= 1e-8 * b.energy.abs());
    }
}

#[test]
fn invalid_requests() {
    let model = Model::Bosonic(BosonicParams::new(2, 1.0, 3));
    assert!(matches!(
        truncation_scan(&model, &[4, 3], 1, &Penalty::none(), &tight()),
        Err(SpectrumError::InvalidRequest(_))
    ));
    let id = SparseOperator::identity(4);
    assert!(matches!(lowest_eigenpairs_sparse(&id, 5, &tight()), Err(SpectrumError::InvalidRequest(_))));
    let skew = SparseOperator::from_triplets(2, vec![(0, 1, c64(1.0, 0.0))], false).unwrap();
    assert!(matches!(lowest_eigenpairs_sparse(&skew, 1, &tight()), Err(SpectrumError::NonHermitianInput(_))));
    let big = random_hermitian(400, 7, false);
    let starved = EigenOptions { max_matvecs: 10, ..tight() };
    assert!(matches!(lowest_eigenpairs_sparse(&big, 3, &starved), Err(SpectrumError::NoConvergence { .. })));
    let anti = SparseOperator::from_triplets(
        2,
        vec![(0, 1, c64(0.0, 1.0)), (1, 0, c64(0.0, 1.0))],
        false,
    )
    .unwrap();
    let v = [c64(1.0, 0.0), c64(1.0, 0.0)].map(|z: Complex64| z / 2f64.sqrt());
    assert!(matches!(expectation_real(&anti, &v), Err(SpectrumError::NonNegligibleImaginaryPart(_))));
}
