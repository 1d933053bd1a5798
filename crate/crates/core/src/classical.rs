//! Classical quantities: exact-coefficient polynomials on phase space.
//!
//! Variables are ordered `(q_1, …, q_d, p_1, …, p_d)`; a monomial is stored as
//! its exponent vector of length `2d`. The Lie product is the Poisson form
//! `A ◁ B = Σ_j ∂_{p_j}A ∂_{q_j}B − ∂_{p_j}B ∂_{q_j}A`, so that `q ◁ p = −1`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Exponents = Vec<u32>;

/// A polynomial in `(q, p)` with rational coefficients, kept in canonical form
/// (no zero coefficients stored).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalQuantity {
    dof: usize,
    terms: BTreeMap<Exponents, BigRational>,
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl ClassicalQuantity {
    pub fn zero(dof: usize) -> Self {
        Self {
            dof,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dof: usize, c: BigRational) -> Self {
        let mut out = Self::zero(dof);
        out.add_term(vec![0; 2 * dof], c);
        out
    }

    pub fn one(dof: usize) -> Self {
        Self::constant(dof, BigRational::one())
    }

    /// Position coordinate `q_j` (0-based).
    pub fn q(dof: usize, j: usize) -> Result<Self> {
        Self::variable(dof, j)
    }

    /// Momentum coordinate `p_j` (0-based).
    pub fn p(dof: usize, j: usize) -> Result<Self> {
        Self::variable(dof, dof + j)
    }

    fn variable(dof: usize, index: usize) -> Result<Self> {
        if index >= 2 * dof {
            return Err(Error::IndexOutOfRange {
                index,
                size: 2 * dof,
            });
        }
        let mut e = vec![0; 2 * dof];
        e[index] = 1;
        Self::monomial(dof, e, BigRational::one())
    }

    pub fn monomial(dof: usize, exponents: Exponents, coeff: BigRational) -> Result<Self> {
        if exponents.len() != 2 * dof {
            return Err(Error::DimensionMismatch {
                expected: 2 * dof,
                found: exponents.len(),
            });
        }
        let mut out = Self::zero(dof);
        out.add_term(exponents, coeff);
        Ok(out)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// monomials are summed.
    pub fn from_terms<I>(dof: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, BigRational)>,
    {
        let mut out = Self::zero(dof);
        for (e, c) in terms {
            if e.len() != 2 * dof {
                return Err(Error::DimensionMismatch {
                    expected: 2 * dof,
                    found: e.len(),
                });
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dof(&self) -> usize {
        self.dof
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Coefficient of the given monomial (zero if absent).
    pub fn coefficient(&self, exponents: &[u32]) -> BigRational {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn check_dof(&self, other: &Self) -> Result<()> {
        if self.dof != other.dof {
            Err(Error::DofMismatch {
                left: self.dof,
                right: other.dof,
            })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dof(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_dof(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dof(other)?;
        let mut out = Self::zero(self.dof);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.dof);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// Partial derivative with respect to variable `index` of `(q, p)`.
    pub fn derivative(&self, index: usize) -> Self {
        let mut out = Self::zero(self.dof);
        for (e, c) in &self.terms {
            let k = e[index];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[index] = k - 1;
            out.add_term(e2, c * BigRational::from_integer(BigInt::from(k)));
        }
        out
    }

    pub fn d_dq(&self, j: usize) -> Self {
        self.derivative(j)
    }

    pub fn d_dp(&self, j: usize) -> Self {
        self.derivative(self.dof + j)
    }

    /// `A ◁ B = Σ_j ∂_{p_j}A ∂_{q_j}B − ∂_{p_j}B ∂_{q_j}A`.
    pub fn lie(&self, other: &Self) -> Result<Self> {
        self.check_dof(other)?;
        let mut out = Self::zero(self.dof);
        for j in 0..self.dof {
            let left = self.d_dp(j).try_mul(&other.d_dq(j))?;
            let right = other.d_dp(j).try_mul(&self.d_dq(j))?;
            out = out.try_add(&left)?.try_sub(&right)?;
        }
        Ok(out)
    }

    /// Floating-point evaluation at `z = (q, p)`.
    pub fn evaluate(&self, z: &[f64]) -> Result<f64> {
        if z.len() != 2 * self.dof {
            return Err(Error::DimensionMismatch {
                expected: 2 * self.dof,
                found: z.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                let m: f64 = e
                    .iter()
                    .zip(z)
                    .map(|(&k, &x)| libm::pow(x, k as f64))
                    .product();
                ratio_to_f64(c) * m
            })
            .sum())
    }

    /// True if all coefficients are integers.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms
            .values()
            .map(|c| ratio_to_f64(&c.abs()))
            .fold(0.0, f64::max)
    }
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Add for &ClassicalQuantity {
    type Output = ClassicalQuantity;
    fn add(self, rhs: Self) -> ClassicalQuantity {
        self.try_add(rhs).expect("degrees of freedom differ")
    }
}

impl Sub for &ClassicalQuantity {
    type Output = ClassicalQuantity;
    fn sub(self, rhs: Self) -> ClassicalQuantity {
        self.try_sub(rhs).expect("degrees of freedom differ")
    }
}

impl Mul for &ClassicalQuantity {
    type Output = ClassicalQuantity;
    fn mul(self, rhs: Self) -> ClassicalQuantity {
        self.try_mul(rhs).expect("degrees of freedom differ")
    }
}

impl Neg for &ClassicalQuantity {
    type Output = ClassicalQuantity;
    fn neg(self) -> ClassicalQuantity {
        self.scale(&-BigRational::one())
    }
}
