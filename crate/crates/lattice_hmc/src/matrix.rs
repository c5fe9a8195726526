use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type Mat = DMatrix<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `(A + A^+)/2` with the trace removed.
pub fn traceless_hermitian_part(a: &Mat) -> Mat {
    let n = a.nrows();
    let mut h = (a + a.adjoint()).scale(0.5);
    let tr = h.trace() / n as f64;
    for i in 0..n {
        h[(i, i)] -= tr;
    }
    h
}

/// Gaussian traceless Hermitian matrix with unit-variance components in a
/// basis orthonormal under `Tr(AB)`.
pub fn random_traceless_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Mat {
    let mut h = Mat::zeros(n, n);
    for i in 0..n {
        h[(i, i)] = c(rng.sample(StandardNormal), 0.0);
        for j in i + 1..n {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let z = c(re, im) / 2f64.sqrt();
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    let tr = h.trace() / n as f64;
    for i in 0..n {
        h[(i, i)] -= tr;
    }
    h
}

/// `exp(i H)` for Hermitian `H`.
pub fn expi(h: &Mat) -> Mat {
    let n = h.nrows();
    if n == 2 {
        // H = h0 I + v.sigma, so exp(iH) = e^{i h0} (cos|v| + i sin|v| v.sigma/|v|).
        let h0 = 0.5 * (h[(0, 0)].re + h[(1, 1)].re);
        let mut v = h.clone();
        v[(0, 0)] -= h0;
        v[(1, 1)] -= h0;
        let theta = (v[(0, 0)].re.powi(2) + v[(0, 1)].norm_sqr()).sqrt();
        let sinc = if theta < 1e-8 {
            1.0 - theta * theta / 6.0
        } else {
            theta.sin() / theta
        };
        let mut out = v.scale(sinc) * c(0.0, 1.0);
        out[(0, 0)] += theta.cos();
        out[(1, 1)] += theta.cos();
        return out * Complex64::from_polar(1.0, h0);
    }
    let eig = nalgebra::SymmetricEigen::new(h.clone());
    let phases = Mat::from_diagonal(&eig.eigenvalues.map(|l| Complex64::from_polar(1.0, l)));
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

/// Nearest SU(N) matrix: polar projection followed by fixing the phase of
/// the determinant.
pub fn reunitarize(u: &Mat) -> Mat {
    let n = u.nrows();
    let svd = u.clone().svd(true, true);
    let w = svd.u.unwrap() * svd.v_t.unwrap();
    let det = w.determinant();
    w * Complex64::from_polar(1.0, -det.arg() / n as f64)
}

/// Haar-distributed SU(N) element.
pub fn random_su_n<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Mat {
    let z = Mat::from_fn(n, n, |_, _| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = z.qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = Mat::from_diagonal(&r.diagonal().map(|d| d / d.norm()));
    let u = q * phases;
    let det = u.determinant();
    u * Complex64::from_polar(1.0, -det.arg() / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn expi_is_special_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [2, 3, 4] {
            let h = random_traceless_hermitian(n, &mut rng);
            let u = expi(&h);
            assert!((u.adjoint() * &u - Mat::identity(n, n)).norm() < 1e-12);
            assert!((u.determinant() - c(1.0, 0.0)).norm() < 1e-12);
            // Small-angle agreement with the series.
            let e = 1e-4;
            let s = expi(&h.scale(e));
            let lin = Mat::identity(n, n) + h.scale(e) * c(0.0, 1.0);
            assert!((s - lin).norm() < 1e-7);
        }
    }

    #[test]
    fn closed_form_matches_eigen_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let h = random_traceless_hermitian(2, &mut rng);
        let eig = nalgebra::SymmetricEigen::new(h.clone());
        let ph = Mat::from_diagonal(&eig.eigenvalues.map(|l| Complex64::from_polar(1.0, l)));
        let u = &eig.eigenvectors * ph * eig.eigenvectors.adjoint();
        assert!((expi(&h) - u).norm() < 1e-12);
    }

    #[test]
    fn haar_and_projection() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = random_su_n(3, &mut rng);
        assert!((u.adjoint() * &u - Mat::identity(3, 3)).norm() < 1e-12);
        assert!((u.determinant() - c(1.0, 0.0)).norm() < 1e-12);
        let noisy = &u + Mat::from_element(3, 3, c(1e-6, -2e-6));
        let r = reunitarize(&noisy);
        assert!((r.adjoint() * &r - Mat::identity(3, 3)).norm() < 1e-12);
        assert!((&r - &u).norm() < 1e-5);
    }
}
