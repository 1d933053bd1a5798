//! Seeded random instances: Hermitian matrices, density operators, unit
//! vectors and integer-coefficient polynomials.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;

use crate::classical::ClassicalQuantity;
use crate::error::Result;
use crate::matrix::{self, CMatrix, CVector};
use crate::quantum::QuantumQuantity;
use crate::state::DensityState;

fn symmetric<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(-1.0..1.0)
}

/// Complex matrix with entries uniform in the unit square.
pub fn complex_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    CMatrix::from_fn(dim, dim, |_, _| Complex64::new(symmetric(rng), symmetric(rng)))
}

pub fn hermitian_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    matrix::hermitian_part(&complex_matrix(rng, dim))
}

pub fn hermitian_quantity<R: Rng + ?Sized>(rng: &mut R, dim: usize, hbar: f64) -> Result<QuantumQuantity> {
    QuantumQuantity::with_hbar(hermitian_matrix(rng, dim), hbar)
}

pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CVector {
    loop {
        let v = CVector::from_fn(dim, |_, _| Complex64::new(symmetric(rng), symmetric(rng)));
        let n = v.norm();
        if n > 1e-3 {
            return v.unscale(n);
        }
    }
}

/// `G G* / Tr(G G*)`, full rank with probability one.
pub fn density_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<DensityState> {
    let g = complex_matrix(rng, dim);
    let rho = matrix::hermitian_part(&(&g * g.adjoint()));
    let tr = matrix::trace(&rho).re;
    DensityState::new(rho.unscale(tr))
}

pub fn pure_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<DensityState> {
    DensityState::from_pure(&unit_vector(rng, dim))
}

/// Polynomial with up to `terms` monomials of total degree `≤ max_degree`
/// and integer coefficients in `[-5, 5]`.
pub fn polynomial<R: Rng + ?Sized>(
    rng: &mut R,
    dof: usize,
    max_degree: u32,
    terms: usize,
) -> Result<ClassicalQuantity> {
    let mut out = Vec::with_capacity(terms);
    for _ in 0..terms {
        let mut budget = rng.random_range(0..=max_degree);
        let mut e = alloc::vec![0u32; 2 * dof];
        while budget > 0 {
            let k = rng.random_range(0..2 * dof);
            e[k] += 1;
            budget -= 1;
        }
        let c: i64 = rng.random_range(-5..=5);
        out.push((e, BigRational::from_integer(BigInt::from(c))));
    }
    ClassicalQuantity::from_terms(dof, out)
}
