//! Polynomials times a Gaussian envelope: the class on which Liouville
//! integrals are finite.
//!
//! A value represents `P(z) · exp(−k |z|² / 2)` for a polynomial `P` and an
//! integer width `k ≥ 1`. Products add widths, so the class is closed under
//! multiplication and under the Lie product, and every integral is
//! `(2π)^d` times an exact rational number.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::classical::{ratio_to_f64, ClassicalQuantity};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianEnvelopeQuantity {
    poly: ClassicalQuantity,
    width: u32,
}

impl GaussianEnvelopeQuantity {
    /// `P · exp(−|z|²/2)`.
    pub fn standard(poly: ClassicalQuantity) -> Self {
        Self { poly, width: 1 }
    }

    pub fn with_width(poly: ClassicalQuantity, width: u32) -> Result<Self> {
        if width == 0 {
            return Err(Error::DivergentIntegral);
        }
        Ok(Self { poly, width })
    }

    pub fn poly(&self) -> &ClassicalQuantity {
        &self.poly
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn dof(&self) -> usize {
        self.poly.dof()
    }

    /// `∂_x (P g_k) = (∂_x P − k x P) g_k`.
    pub fn derivative(&self, index: usize) -> Result<Self> {
        let dof = self.dof();
        let mut e = alloc::vec![0; 2 * dof];
        e[index] = 1;
        let x = ClassicalQuantity::monomial(dof, e, BigRational::from_integer(self.width.into()))?;
        let poly = self.poly.derivative(index).try_sub(&x.try_mul(&self.poly)?)?;
        Ok(Self {
            poly,
            width: self.width,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            poly: self.poly.try_mul(&other.poly)?,
            width: self.width + other.width,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.width != other.width {
            return Err(Error::EnvelopeMismatch {
                left: self.width,
                right: other.width,
            });
        }
        Ok(Self {
            poly: self.poly.try_add(&other.poly)?,
            width: self.width,
        })
    }

    /// Poisson-form Lie product, differentiating through the envelope.
    pub fn lie(&self, other: &Self) -> Result<Self> {
        let dof = self.dof();
        if other.dof() != dof {
            return Err(Error::DofMismatch {
                left: dof,
                right: other.dof(),
            });
        }
        let mut poly = ClassicalQuantity::zero(dof);
        for j in 0..dof {
            let left = self.derivative(dof + j)?.try_mul(&other.derivative(j)?)?;
            let right = other.derivative(dof + j)?.try_mul(&self.derivative(j)?)?;
            poly = poly.try_add(&left.poly)?.try_sub(&right.poly)?;
        }
        Ok(Self {
            poly,
            width: self.width + other.width,
        })
    }

    /// The rational `r` with `∫ P g_k dq dp = (2π)^d · r`.
    ///
    /// Per coordinate, `∫ x^m e^{−k x²/2} dx = √(2π/k) (m−1)!! k^{−m/2}` for
    /// even `m` and zero otherwise.
    pub fn integral_exact(&self) -> BigRational {
        let k = BigInt::from(self.width);
        let dof = self.dof();
        let mut total = BigRational::zero();
        for (e, c) in self.poly.terms() {
            if e.iter().any(|m| m % 2 == 1) {
                continue;
            }
            let mut num = BigInt::one();
            for &m in e {
                num *= double_factorial(m.saturating_sub(1));
            }
            let half_degree: u32 = e.iter().sum::<u32>() / 2;
            let den = num_traits::pow(k.clone(), dof + half_degree as usize);
            total += c * BigRational::new(num, den);
        }
        total
    }

    /// `∫ P g_k dq dp` in floating point.
    pub fn integral(&self) -> f64 {
        ratio_to_f64(&self.integral_exact())
            * libm::pow(2.0 * core::f64::consts::PI, self.dof() as f64)
    }

    /// Pointwise value at `z = (q, p)`.
    pub fn evaluate(&self, z: &[f64]) -> Result<f64> {
        let r2: f64 = z.iter().map(|x| x * x).sum();
        Ok(self.poly.evaluate(z)? * libm::exp(-0.5 * self.width as f64 * r2))
    }
}

/// `n!! = n (n−2) (n−4) …`, with `0!! = 1`.
fn double_factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

/// Exact even moments of the standard normal, `E[x^m]`, for `m < len`.
pub fn standard_normal_moments(len: usize) -> Vec<BigInt> {
    (0..len as u32)
        .map(|m| {
            if m % 2 == 1 {
                BigInt::zero()
            } else {
                double_factorial(m.saturating_sub(1))
            }
        })
        .collect()
}
