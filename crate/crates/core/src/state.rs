//! Density operators.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{self, CMatrix, CVector, HermitianEigen};
use crate::quantum::QuantumQuantity;

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const POSITIVITY_TOL: f64 = 1e-10;

/// A positive semidefinite, unit-trace Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    rho: CMatrix,
}

impl DensityState {
    /// Validates `rho`. Drift within tolerance is repaired by Hermitizing and
    /// renormalizing the trace; larger violations are errors.
    pub fn new(rho: CMatrix) -> Result<Self> {
        matrix::check_square(&rho)?;
        let deviation = matrix::hermitian_deviation(&rho);
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian {
                what: "density operator",
                deviation,
            });
        }
        let rho = matrix::hermitian_part(&rho);
        let trace = matrix::trace(&rho).re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotUnit { trace });
        }
        let rho = rho.unscale(trace);
        let min_eigenvalue = HermitianEigen::new(&rho).min();
        if min_eigenvalue < -POSITIVITY_TOL {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { rho })
    }

    /// Rank-one state `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩`.
    pub fn from_pure(psi: &CVector) -> Result<Self> {
        if psi.is_empty() {
            return Err(Error::Empty);
        }
        let norm = psi.norm();
        if !norm.is_finite() {
            return Err(Error::NonFinite);
        }
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        let unit = psi.unscale(norm);
        Ok(Self {
            rho: matrix::hermitian_part(&matrix::outer(&unit)),
        })
    }

    /// `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Empty);
        }
        Ok(Self {
            rho: matrix::identity(dim).unscale(dim as f64),
        })
    }

    /// `|k⟩⟨k|` in the computational basis.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::IndexOutOfRange { index: k, size: dim });
        }
        let mut psi = CVector::zeros(dim);
        psi[k] = matrix::ONE;
        Self::from_pure(&psi)
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.rho
    }

    pub fn into_matrix(self) -> CMatrix {
        self.rho
    }

    /// `Tr(ρ A)`.
    pub fn expectation(&self, a: &QuantumQuantity) -> Result<Complex64> {
        if a.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: a.dim(),
            });
        }
        Ok(matrix::trace_of_product(&self.rho, a.matrix()))
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        matrix::trace_of_product(&self.rho, &self.rho).re
    }

    /// Diagonal entries in the working basis.
    pub fn populations(&self) -> alloc::vec::Vec<f64> {
        self.rho.diagonal().iter().map(|z| z.re).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::pauli_z;

    #[test]
    fn mixed_and_pure_expectations() {
        let z = QuantumQuantity::new(pauli_z()).unwrap();
        let mixed = DensityState::maximally_mixed(2).unwrap();
        assert!(mixed.expectation(&z).unwrap().norm() < 1e-15);
        let up = DensityState::basis(2, 0).unwrap();
        assert_eq!(up.expectation(&z).unwrap(), Complex64::new(1.0, 0.0));
        let one = QuantumQuantity::identity(2, 1.0).unwrap();
        assert!((up.expectation(&one).unwrap() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn validation() {
        let neg = matrix::from_real_diagonal(&[1.5, -0.5]);
        assert!(matches!(DensityState::new(neg), Err(Error::NotPositive { .. })));
        let trace2 = matrix::from_real_diagonal(&[1.0, 1.0]);
        assert!(matches!(DensityState::new(trace2), Err(Error::TraceNotUnit { .. })));
        let mut nh = matrix::from_real_diagonal(&[0.5, 0.5]);
        nh[(0, 1)] = Complex64::new(0.1, 0.0);
        assert!(matches!(DensityState::new(nh), Err(Error::NotHermitian { .. })));
        assert_eq!(DensityState::from_pure(&CVector::zeros(3)), Err(Error::ZeroVector));
    }

    #[test]
    fn drift_is_repaired() {
        let mut rho = matrix::from_real_diagonal(&[0.5 + 4e-13, 0.5]);
        rho[(0, 1)] = Complex64::new(0.0, 1e-13);
        let s = DensityState::new(rho).unwrap();
        assert!(matrix::hermitian_deviation(s.matrix()) == 0.0);
        assert!((matrix::trace(s.matrix()).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pure_states_are_normalized() {
        let psi = CVector::from_vec(alloc::vec![Complex64::new(3.0, 0.0), Complex64::new(0.0, 4.0)]);
        let s = DensityState::from_pure(&psi).unwrap();
        assert!((s.purity() - 1.0).abs() < 1e-14);
        assert!((s.populations()[0] - 0.36).abs() < 1e-15);
    }
}
