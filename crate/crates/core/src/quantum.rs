//! Quantum quantities: finite-dimensional operators with a Lie bracket.

use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{self, CMatrix};

/// Relative tolerance for a quantity to count as Hermitian.
pub const HERMITIAN_RTOL: f64 = 1e-12;

/// A linear operator on a finite-dimensional Hilbert space together with the
/// reduced Planck constant used by its Lie bracket.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumQuantity {
    matrix: CMatrix,
    hbar: f64,
}

impl QuantumQuantity {
    /// Wraps a square, finite matrix with `ħ = 1`.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        Self::with_hbar(matrix, 1.0)
    }

    pub fn with_hbar(matrix: CMatrix, hbar: f64) -> Result<Self> {
        matrix::check_square(&matrix)?;
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::InvalidHbar(hbar));
        }
        Ok(Self { matrix, hbar })
    }

    pub fn identity(dim: usize, hbar: f64) -> Result<Self> {
        Self::with_hbar(matrix::identity(dim), hbar)
    }

    pub fn zeros(dim: usize, hbar: f64) -> Result<Self> {
        Self::with_hbar(CMatrix::zeros(dim, dim), hbar)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// Replaces the operator, keeping `ħ`.
    pub fn map_matrix<F: FnOnce(&CMatrix) -> CMatrix>(&self, f: F) -> Self {
        Self {
            matrix: f(&self.matrix),
            hbar: self.hbar,
        }
    }

    pub fn adjoint(&self) -> Self {
        self.map_matrix(|m| m.adjoint())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map_matrix(|m| m * c)
    }

    pub fn hermitian_deviation(&self) -> f64 {
        matrix::hermitian_deviation(&self.matrix)
    }

    /// `max|A - A^†| ≤ 1e-12 · max|A|`.
    pub fn is_hermitian(&self) -> bool {
        self.hermitian_deviation() <= HERMITIAN_RTOL * matrix::max_abs(&self.matrix)
    }

    pub fn require_hermitian(&self, what: &'static str) -> Result<()> {
        if self.is_hermitian() {
            Ok(())
        } else {
            Err(Error::NotHermitian {
                what,
                deviation: self.hermitian_deviation(),
            })
        }
    }

    /// `Tr A`, the quantum counterpart of the Liouville integral.
    pub fn integral(&self) -> Complex64 {
        matrix::trace(&self.matrix)
    }

    pub(crate) fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        if self.hbar != other.hbar {
            return Err(Error::HbarMismatch {
                left: self.hbar,
                right: other.hbar,
            });
        }
        Ok(())
    }

    /// `A ◁ B = (i/ħ)(AB − BA)`.
    pub fn lie(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let c = matrix::commutator(&self.matrix, &other.matrix);
        Ok(Self {
            matrix: c * Complex64::new(0.0, 1.0 / self.hbar),
            hbar: self.hbar,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.map_matrix(|m| m + &other.matrix))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.map_matrix(|m| m - &other.matrix))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.map_matrix(|m| m * &other.matrix))
    }
}

// Operator sugar for quantities already known to be compatible. Panics on a
// dimension or ħ mismatch; use the `try_*` methods for unchecked input.
impl Add for &QuantumQuantity {
    type Output = QuantumQuantity;
    fn add(self, rhs: Self) -> QuantumQuantity {
        self.try_add(rhs).expect("incompatible quantities")
    }
}

impl Sub for &QuantumQuantity {
    type Output = QuantumQuantity;
    fn sub(self, rhs: Self) -> QuantumQuantity {
        self.try_sub(rhs).expect("incompatible quantities")
    }
}

impl Mul for &QuantumQuantity {
    type Output = QuantumQuantity;
    fn mul(self, rhs: Self) -> QuantumQuantity {
        self.try_mul(rhs).expect("incompatible quantities")
    }
}

impl Neg for &QuantumQuantity {
    type Output = QuantumQuantity;
    fn neg(self) -> QuantumQuantity {
        self.map_matrix(|m| -m)
    }
}
