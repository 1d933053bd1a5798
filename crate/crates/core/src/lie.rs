//! The unified Lie product over both realizations of quantities, with the
//! matching integral and expectation functionals.

use num_complex::Complex64;

use crate::classical::ClassicalQuantity;
use crate::envelope::GaussianEnvelopeQuantity;
use crate::error::{Error, Result};
use crate::gaussian::GaussianPhaseState;
use crate::quantum::QuantumQuantity;
use crate::state::DensityState;

/// A quantity in either realization.
#[derive(Debug, Clone, PartialEq)]
pub enum Quantity {
    Quantum(QuantumQuantity),
    Classical(ClassicalQuantity),
}

/// A state in either realization.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Density(DensityState),
    Gaussian(GaussianPhaseState),
}

/// Types carrying a Lie product `a ◁ b`.
pub trait LieProduct: Sized {
    fn lie_product(&self, other: &Self) -> Result<Self>;
}

impl LieProduct for QuantumQuantity {
    fn lie_product(&self, other: &Self) -> Result<Self> {
        self.lie(other)
    }
}

impl LieProduct for ClassicalQuantity {
    fn lie_product(&self, other: &Self) -> Result<Self> {
        self.lie(other)
    }
}

impl LieProduct for GaussianEnvelopeQuantity {
    fn lie_product(&self, other: &Self) -> Result<Self> {
        self.lie(other)
    }
}

impl LieProduct for Quantity {
    fn lie_product(&self, other: &Self) -> Result<Self> {
        lie_product(self, other)
    }
}

/// `A ◁ B`; both arguments must share a realization.
pub fn lie_product(a: &Quantity, b: &Quantity) -> Result<Quantity> {
    match (a, b) {
        (Quantity::Quantum(x), Quantity::Quantum(y)) => Ok(Quantity::Quantum(x.lie(y)?)),
        (Quantity::Classical(x), Quantity::Classical(y)) => Ok(Quantity::Classical(x.lie(y)?)),
        _ => Err(Error::RealizationMismatch),
    }
}

/// `Tr A`.
pub fn integral(a: &QuantumQuantity) -> Complex64 {
    a.integral()
}

/// Liouville integral of an enveloped polynomial.
pub fn integral_classical(a: &GaussianEnvelopeQuantity) -> f64 {
    a.integral()
}

/// `⟨A⟩ = ∫ρA`: a trace for density operators, a Gaussian moment sum for
/// phase-space states.
pub fn expectation(state: &State, a: &Quantity) -> Result<Complex64> {
    match (state, a) {
        (State::Density(rho), Quantity::Quantum(x)) => rho.expectation(x),
        (State::Gaussian(g), Quantity::Classical(x)) => Ok(Complex64::new(g.expectation(x)?, 0.0)),
        _ => Err(Error::RealizationMismatch),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{self, pauli_z};

    #[test]
    fn mixed_realizations_are_rejected() {
        let q = Quantity::Quantum(QuantumQuantity::new(pauli_z()).unwrap());
        let c = Quantity::Classical(ClassicalQuantity::q(1, 0).unwrap());
        assert_eq!(lie_product(&q, &c), Err(Error::RealizationMismatch));
        let s = State::Gaussian(GaussianPhaseState::standard(1));
        assert_eq!(expectation(&s, &q), Err(Error::RealizationMismatch));
    }

    #[test]
    fn quantum_dispatch() {
        let z = QuantumQuantity::new(pauli_z()).unwrap();
        let s = State::Density(DensityState::basis(2, 0).unwrap());
        let v = expectation(&s, &Quantity::Quantum(z.clone())).unwrap();
        assert_eq!(v, Complex64::new(1.0, 0.0));
        assert_eq!(integral(&z), matrix::ZERO);
    }
}
