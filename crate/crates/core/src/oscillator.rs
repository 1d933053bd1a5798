//! Harmonic oscillator on a truncated Fock basis.
//!
//! `q = x₀ (a + a†)` and `p = i p₀ (a† − a)` with `x₀ = √(ħ / 2mω)` and
//! `p₀ = √(ħmω / 2)`. The Hamiltonian is the diagonal `ħω (n + ½)`, for which
//! `H ◁ q = p/m` and `H ◁ p = −mω² q` hold exactly even after truncation.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{self, CMatrix, CVector};
use crate::quantum::QuantumQuantity;
use crate::state::DensityState;

pub const DEFAULT_CUTOFF: usize = 40;
pub const TAIL_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oscillator {
    cutoff: usize,
    mass: f64,
    omega: f64,
    hbar: f64,
}

impl Oscillator {
    pub fn new(cutoff: usize, mass: f64, omega: f64, hbar: f64) -> Result<Self> {
        if cutoff < 2 {
            return Err(Error::InvalidArgument("Fock cutoff must be at least 2"));
        }
        if !(mass > 0.0 && mass.is_finite()) || !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::InvalidArgument("mass and frequency must be positive"));
        }
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::InvalidHbar(hbar));
        }
        Ok(Self {
            cutoff,
            mass,
            omega,
            hbar,
        })
    }

    /// Unit mass, frequency and `ħ` at the default cutoff.
    pub fn standard() -> Self {
        Self {
            cutoff: DEFAULT_CUTOFF,
            mass: 1.0,
            omega: 1.0,
            hbar: 1.0,
        }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Ground-state position spread `√(ħ / 2mω)`.
    pub fn position_scale(&self) -> f64 {
        libm::sqrt(self.hbar / (2.0 * self.mass * self.omega))
    }

    /// Ground-state momentum spread `√(ħmω / 2)`.
    pub fn momentum_scale(&self) -> f64 {
        libm::sqrt(self.hbar * self.mass * self.omega / 2.0)
    }

    fn wrap(&self, m: CMatrix) -> QuantumQuantity {
        QuantumQuantity::with_hbar(m, self.hbar).expect("well-formed ladder matrix")
    }

    pub fn annihilation_matrix(&self) -> CMatrix {
        let n = self.cutoff;
        CMatrix::from_fn(n, n, |i, j| {
            if j == i + 1 {
                Complex64::new(libm::sqrt(j as f64), 0.0)
            } else {
                matrix::ZERO
            }
        })
    }

    pub fn annihilation(&self) -> QuantumQuantity {
        self.wrap(self.annihilation_matrix())
    }

    pub fn creation(&self) -> QuantumQuantity {
        self.wrap(self.annihilation_matrix().adjoint())
    }

    pub fn number(&self) -> QuantumQuantity {
        let diag: alloc::vec::Vec<f64> = (0..self.cutoff).map(|k| k as f64).collect();
        self.wrap(matrix::from_real_diagonal(&diag))
    }

    pub fn position(&self) -> QuantumQuantity {
        let a = self.annihilation_matrix();
        let x0 = self.position_scale();
        self.wrap((&a + a.adjoint()) * Complex64::new(x0, 0.0))
    }

    pub fn momentum(&self) -> QuantumQuantity {
        let a = self.annihilation_matrix();
        let p0 = self.momentum_scale();
        self.wrap((a.adjoint() - &a) * Complex64::new(0.0, p0))
    }

    /// `ħω (n + ½)`.
    pub fn hamiltonian(&self) -> QuantumQuantity {
        let e = self.hbar * self.omega;
        let diag: alloc::vec::Vec<f64> = (0..self.cutoff).map(|k| e * (k as f64 + 0.5)).collect();
        self.wrap(matrix::from_real_diagonal(&diag))
    }

    /// `p²/2m + mω²q²/2` built from the truncated `q`, `p`; differs from
    /// [`Self::hamiltonian`] only in the top two levels.
    pub fn hamiltonian_from_qp(&self) -> QuantumQuantity {
        let q = self.position();
        let p = self.momentum();
        let kinetic = (&p * &p).scale(Complex64::new(0.5 / self.mass, 0.0));
        let potential = (&q * &q).scale(Complex64::new(0.5 * self.mass * self.omega * self.omega, 0.0));
        &kinetic + &potential
    }

    /// `|n⟩`.
    pub fn fock_state(&self, n: usize) -> Result<DensityState> {
        DensityState::basis(self.cutoff, n)
    }

    pub fn ground_state(&self) -> DensityState {
        self.fock_state(0).expect("cutoff ≥ 2")
    }

    /// Coherent amplitudes `e^{−|α|²/2} αⁿ / √n!`, truncated and renormalized.
    pub fn coherent_vector(&self, alpha: Complex64) -> CVector {
        let mut v = CVector::zeros(self.cutoff);
        let mut amp = Complex64::new(libm::exp(-0.5 * alpha.norm_sqr()), 0.0);
        for n in 0..self.cutoff {
            v[n] = amp;
            amp = amp * alpha / libm::sqrt((n + 1) as f64);
        }
        let norm = v.norm();
        v.unscale(norm)
    }

    pub fn coherent_state(&self, alpha: Complex64) -> Result<DensityState> {
        let s = DensityState::from_pure(&self.coherent_vector(alpha))?;
        check_truncation(&s)?;
        Ok(s)
    }

    /// Classical phase-space point `(⟨q⟩, ⟨p⟩)` of a coherent state.
    pub fn coherent_phase_point(&self, alpha: Complex64) -> (f64, f64) {
        (
            2.0 * self.position_scale() * alpha.re,
            2.0 * self.momentum_scale() * alpha.im,
        )
    }
}

/// Population of the highest retained Fock level.
pub fn tail_population(state: &DensityState) -> f64 {
    state.populations().last().copied().unwrap_or(0.0)
}

/// Errors when the highest retained level carries more than `1e-8`.
pub fn check_truncation(state: &DensityState) -> Result<f64> {
    let population = tail_population(state);
    if population > TAIL_THRESHOLD {
        return Err(Error::Truncation {
            population,
            threshold: TAIL_THRESHOLD,
        });
    }
    Ok(population)
}
