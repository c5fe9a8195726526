use crate::{CoreError, Result};

/// Largest Hilbert-space dimension any builder will accept.
pub const MAX_DIM: usize = 1 << 26;

/// What lives on one tensor factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Site {
    /// Oscillator for matrix `matrix` (0-based), adjoint index `alpha`.
    Boson { matrix: usize, alpha: usize },
    /// Fermion mode with adjoint index `alpha`.
    Fermion { alpha: usize },
}

/// Layout of the truncated Hilbert space.
///
/// Bosonic sites come first, ordered with the matrix index outermost and
/// the adjoint index innermost; fermion sites follow. Site 0 is the most
/// significant digit of a basis index.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisSpec {
    pub cutoff: usize,
    pub n_boson_sites: usize,
    pub n_fermion_sites: usize,
    pub sites: Vec<Site>,
}

impl BasisSpec {
    pub fn new(n_matrices: usize, adj: usize, cutoff: usize, n_fermion_sites: usize) -> Result<Self> {
        if cutoff < 2 {
            return Err(CoreError::InvalidParameter(format!(
                "cutoff must be at least 2, got {cutoff}"
            )));
        }
        let mut sites = Vec::new();
        for matrix in 0..n_matrices {
            for alpha in 0..adj {
                sites.push(Site::Boson { matrix, alpha });
            }
        }
        for alpha in 0..n_fermion_sites {
            sites.push(Site::Fermion { alpha });
        }
        let b = Self {
            cutoff,
            n_boson_sites: n_matrices * adj,
            n_fermion_sites,
            sites,
        };
        b.checked_dim()?;
        Ok(b)
    }

    /// Two bosonic matrices, no fermions.
    pub fn bosonic(n: usize, cutoff: usize) -> Result<Self> {
        Self::new(2, n * n - 1, cutoff, 0)
    }

    /// Two bosonic matrices plus one fermion mode per generator.
    pub fn minibmn(n: usize, cutoff: usize) -> Result<Self> {
        Self::new(2, n * n - 1, cutoff, n * n - 1)
    }

    pub fn n_sites(&self) -> usize {
        self.sites.len()
    }

    /// Local dimension of a tensor factor.
    pub fn local_dim(&self, site: usize) -> usize {
        if site < self.n_boson_sites {
            self.cutoff
        } else {
            2
        }
    }

    pub fn dim(&self) -> usize {
        self.checked_dim().expect("validated at construction")
    }

    fn checked_dim(&self) -> Result<usize> {
        let mut d: usize = 1;
        for s in 0..self.n_sites() {
            d = d
                .checked_mul(self.local_dim(s))
                .filter(|&d| d <= MAX_DIM)
                .ok_or(CoreError::DimensionTooLarge(usize::MAX))?;
        }
        Ok(d)
    }

    /// Index stride of each site in the global basis.
    pub fn strides(&self) -> Vec<usize> {
        let n = self.n_sites();
        let mut s = vec![1usize; n];
        for k in (0..n.saturating_sub(1)).rev() {
            s[k] = s[k + 1] * self.local_dim(k + 1);
        }
        s
    }

    /// Flat site index of boson `(matrix, alpha)`.
    pub fn boson_site(&self, matrix: usize, alpha: usize) -> usize {
        let adj = self.n_boson_sites / 2;
        matrix * adj + alpha
    }

    pub fn fermion_site(&self, alpha: usize) -> usize {
        self.n_boson_sites + alpha
    }

    /// Occupation digits of a basis index.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut d = vec![0; self.n_sites()];
        for s in (0..self.n_sites()).rev() {
            let l = self.local_dim(s);
            d[s] = index % l;
            index /= l;
        }
        d
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(self.strides())
            .map(|(d, s)| d * s)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minibmn_dimension() {
        let b = BasisSpec::minibmn(2, 3).unwrap();
        assert_eq!(b.dim(), 8 * 729);
        assert_eq!(b.sites[6], Site::Fermion { alpha: 0 });
    }

    #[test]
    fn digits_roundtrip() {
        let b = BasisSpec::minibmn(2, 3).unwrap();
        for i in [0, 1, 17, 5831] {
            assert_eq!(b.index(&b.digits(i)), i);
        }
    }

    #[test]
    fn too_large_is_rejected() {
        assert!(matches!(
            BasisSpec::bosonic(3, 10),
            Err(CoreError::DimensionTooLarge(_))
        ));
    }
}
