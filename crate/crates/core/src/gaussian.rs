//! Gaussian phase-space states and exact polynomial expectations.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::classical::{ratio_to_f64, ClassicalQuantity, Exponents};
use crate::error::{Error, Result};

/// A normal density on phase space with the given mean and covariance.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianPhaseState {
    mean: Vec<f64>,
    cov: DMatrix<f64>,
}

impl GaussianPhaseState {
    pub fn new(mean: Vec<f64>, cov: DMatrix<f64>) -> Result<Self> {
        let n = mean.len();
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::InvalidArgument("mean must have even, nonzero length"));
        }
        if cov.nrows() != n || cov.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: cov.nrows(),
            });
        }
        if mean.iter().chain(cov.iter()).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let asym = (&cov - cov.transpose()).amax();
        if asym > 1e-12 {
            return Err(Error::InvalidCovariance);
        }
        let sym = (&cov + cov.transpose()) * 0.5;
        let eig = SymmetricEigen::new(sym.clone());
        if eig.eigenvalues.iter().any(|&l| l <= 0.0) {
            return Err(Error::InvalidCovariance);
        }
        Ok(Self { mean, cov: sym })
    }

    /// Standard normal: zero mean, identity covariance.
    pub fn standard(dof: usize) -> Self {
        Self {
            mean: alloc::vec![0.0; 2 * dof],
            cov: DMatrix::identity(2 * dof, 2 * dof),
        }
    }

    pub fn dof(&self) -> usize {
        self.mean.len() / 2
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    /// `E[A(z)]` for a polynomial `A`.
    pub fn expectation(&self, a: &ClassicalQuantity) -> Result<f64> {
        if a.dof() != self.dof() {
            return Err(Error::DofMismatch {
                left: a.dof(),
                right: self.dof(),
            });
        }
        let mut memo = BTreeMap::new();
        let mut total = 0.0;
        for (e, c) in a.terms() {
            total += ratio_to_f64(c) * self.raw_moment(e, &mut memo);
        }
        Ok(total)
    }

    /// `E[Π z_i^{k_i}]`, expanding `z = μ + x` binomially over central moments.
    fn raw_moment(&self, k: &[u32], memo: &mut BTreeMap<Exponents, f64>) -> f64 {
        let n = k.len();
        let mut total = 0.0;
        let mut m: Vec<u32> = alloc::vec![0; n];
        loop {
            let mut weight = 1.0;
            for i in 0..n {
                weight *= binomial(k[i], m[i]) * libm::pow(self.mean[i], (k[i] - m[i]) as f64);
            }
            if weight != 0.0 {
                total += weight * self.central_moment(&m, memo);
            }
            // Odometer over 0 ≤ m ≤ k.
            let mut i = 0;
            while i < n {
                if m[i] < k[i] {
                    m[i] += 1;
                    break;
                }
                m[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        total
    }

    /// Isserlis recursion `E[x_i f(x)] = Σ_j Σ_ij E[∂_j f(x)]`.
    pub fn central_moment(&self, k: &[u32], memo: &mut BTreeMap<Exponents, f64>) -> f64 {
        let total: u32 = k.iter().sum();
        if total == 0 {
            return 1.0;
        }
        if total % 2 == 1 {
            return 0.0;
        }
        if let Some(&v) = memo.get(k) {
            return v;
        }
        let i = k.iter().position(|&x| x > 0).expect("nonzero degree");
        let mut rest = k.to_vec();
        rest[i] -= 1;
        let mut acc = 0.0;
        for j in 0..k.len() {
            if rest[j] == 0 || self.cov[(i, j)] == 0.0 {
                continue;
            }
            let mult = rest[j] as f64;
            let mut sub = rest.clone();
            sub[j] -= 1;
            acc += self.cov[(i, j)] * mult * self.central_moment(&sub, memo);
        }
        memo.insert(k.to_vec(), acc);
        acc
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::rational;

    #[test]
    fn shifted_second_moment() {
        let g = GaussianPhaseState::new(alloc::vec![1.0, 0.0], DMatrix::identity(2, 2)).unwrap();
        let q = ClassicalQuantity::q(1, 0).unwrap();
        let v = g.expectation(&(&q * &q)).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn isserlis_four_point() {
        // E[x1 x2 x3 x4] = Σ12Σ34 + Σ13Σ24 + Σ14Σ23.
        let cov = DMatrix::from_row_slice(
            4,
            4,
            &[
                2.0, 0.3, 0.1, 0.2, //
                0.3, 1.5, 0.4, 0.0, //
                0.1, 0.4, 1.0, 0.5, //
                0.2, 0.0, 0.5, 3.0,
            ],
        );
        let g = GaussianPhaseState::new(alloc::vec![0.0; 4], cov.clone()).unwrap();
        let poly = ClassicalQuantity::monomial(2, alloc::vec![1, 1, 1, 1], rational(1, 1)).unwrap();
        let want = cov[(0, 1)] * cov[(2, 3)] + cov[(0, 2)] * cov[(1, 3)] + cov[(0, 3)] * cov[(1, 2)];
        assert!((g.expectation(&poly).unwrap() - want).abs() < 1e-14);
        let x4 = ClassicalQuantity::monomial(2, alloc::vec![4, 0, 0, 0], rational(1, 1)).unwrap();
        assert!((g.expectation(&x4).unwrap() - 3.0 * 4.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_invalid_covariance() {
        let bad = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert_eq!(
            GaussianPhaseState::new(alloc::vec![0.0, 0.0], bad),
            Err(Error::InvalidCovariance)
        );
        let asym = DMatrix::from_row_slice(2, 2, &[1.0, 0.1, 0.0, 1.0]);
        assert_eq!(
            GaussianPhaseState::new(alloc::vec![0.0, 0.0], asym),
            Err(Error::InvalidCovariance)
        );
        assert!(GaussianPhaseState::new(alloc::vec![0.0], DMatrix::identity(1, 1)).is_err());
    }
}
