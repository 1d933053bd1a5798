//! Time evolution under a split Hamiltonian `H = H₁ + H₂`.
//!
//! Quantities move with `Ȧ = H₁ ◁ A` and the state with `ρ̇ = ρ ◁ H₂(t)`.
//! `H₂` is given in the initial frame; carried along with the quantities it
//! becomes `H₂(t) = U₁† H₂ U₁`. With `U₁ = exp(−i H₁ t / ħ)` and
//! `U = exp(−i H t / ħ)` the solutions are `A(t) = U₁† A U₁` and
//! `ρ(t) = W ρ W†` with `W = U₁† U`, so that `Tr ρ(t) A(t) = Tr U ρ U† A`.
//! When `H₁` and `H₂` commute, `W = exp(−i H₂ t / ħ)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{self, CMatrix, HermitianEigen};
use crate::quantum::QuantumQuantity;
use crate::state::DensityState;

/// Spectral data of a Hermitian Hamiltonian, reusable across times.
#[derive(Debug, Clone)]
pub struct Propagator {
    eigen: HermitianEigen,
    hbar: f64,
    vanishing: bool,
}

impl Propagator {
    pub fn new(h: &QuantumQuantity) -> Result<Self> {
        h.require_hermitian("Hamiltonian")?;
        Ok(Self {
            eigen: HermitianEigen::new(h.matrix()),
            hbar: h.hbar(),
            vanishing: h.matrix().iter().all(|z| *z == matrix::ZERO),
        })
    }

    pub fn dim(&self) -> usize {
        self.eigen.values.len()
    }

    /// `exp(−i H t / ħ)`.
    pub fn at(&self, t: f64) -> CMatrix {
        if t == 0.0 || self.vanishing {
            return matrix::identity(self.dim());
        }
        let hbar = self.hbar;
        self.eigen
            .map(|lambda| Complex64::from_polar(1.0, -lambda * t / hbar))
    }

    pub fn energies(&self) -> &[f64] {
        &self.eigen.values
    }
}

/// `U(t) = exp(−i H t / ħ)` via the eigendecomposition of `H`.
pub fn propagator(h: &QuantumQuantity, t: f64) -> Result<QuantumQuantity> {
    let u = Propagator::new(h)?.at(t);
    QuantumQuantity::with_hbar(u, h.hbar())
}

/// Assignment of the Hamiltonian to quantities (`h1`) and state (`h2`).
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeSplit {
    h1: QuantumQuantity,
    h2: QuantumQuantity,
}

impl GaugeSplit {
    pub fn new(h1: QuantumQuantity, h2: QuantumQuantity) -> Result<Self> {
        h1.check_compatible(&h2)?;
        h1.require_hermitian("H1")?;
        h2.require_hermitian("H2")?;
        Ok(Self { h1, h2 })
    }

    /// `(0, H)`: quantities frozen.
    pub fn schrodinger(h: &QuantumQuantity) -> Result<Self> {
        Self::new(QuantumQuantity::zeros(h.dim(), h.hbar())?, h.clone())
    }

    /// `(H, 0)`: state frozen.
    pub fn heisenberg(h: &QuantumQuantity) -> Result<Self> {
        Self::new(h.clone(), QuantumQuantity::zeros(h.dim(), h.hbar())?)
    }

    /// `(H₀, H − H₀)` for a reference Hamiltonian `H₀`.
    pub fn interaction(h: &QuantumQuantity, reference: &QuantumQuantity) -> Result<Self> {
        Self::new(reference.clone(), h.try_sub(reference)?)
    }

    pub fn h1(&self) -> &QuantumQuantity {
        &self.h1
    }

    pub fn h2(&self) -> &QuantumQuantity {
        &self.h2
    }

    pub fn total(&self) -> QuantumQuantity {
        &self.h1 + &self.h2
    }

    pub fn dim(&self) -> usize {
        self.h1.dim()
    }
}

fn is_zero(h: &QuantumQuantity) -> bool {
    h.matrix().iter().all(|z| *z == matrix::ZERO)
}

/// Precomputed evolution for one split, for sampling many times.
#[derive(Debug, Clone)]
pub struct SplitEvolution {
    quantities: Propagator,
    state: StatePropagator,
    hbar: f64,
}

#[derive(Debug, Clone)]
enum StatePropagator {
    Frozen,
    Direct(Propagator),
    Interaction(Propagator),
}

impl SplitEvolution {
    pub fn new(split: &GaugeSplit) -> Result<Self> {
        Ok(Self {
            quantities: Propagator::new(split.h1())?,
            state: if is_zero(split.h2()) {
                StatePropagator::Frozen
            } else if is_zero(split.h1()) {
                StatePropagator::Direct(Propagator::new(split.h2())?)
            } else {
                StatePropagator::Interaction(Propagator::new(&split.total())?)
            },
            hbar: split.h1().hbar(),
        })
    }

    pub fn dim(&self) -> usize {
        self.quantities.dim()
    }

    pub fn evolve_state(&self, rho0: &DensityState, t: f64) -> Result<DensityState> {
        self.check_dim(rho0.dim())?;
        let w = match &self.state {
            StatePropagator::Frozen => return Ok(rho0.clone()),
            StatePropagator::Direct(u) => u.at(t),
            StatePropagator::Interaction(u) => self.quantities.at(t).adjoint() * u.at(t),
        };
        DensityState::new(&w * rho0.matrix() * w.adjoint())
    }

    pub fn evolve_quantity(&self, a0: &QuantumQuantity, t: f64) -> Result<QuantumQuantity> {
        self.check_dim(a0.dim())?;
        if a0.hbar() != self.hbar {
            return Err(Error::HbarMismatch {
                left: self.hbar,
                right: a0.hbar(),
            });
        }
        let u = self.quantities.at(t);
        Ok(a0.map_matrix(|a| u.adjoint() * a * &u))
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim() {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found,
            })
        } else {
            Ok(())
        }
    }
}

/// Evolves state and quantity to time `t` under the given split.
pub fn evolve_split(
    rho0: &DensityState,
    a0: &QuantumQuantity,
    split: &GaugeSplit,
    t: f64,
) -> Result<(DensityState, QuantumQuantity)> {
    let evo = SplitEvolution::new(split)?;
    Ok((evo.evolve_state(rho0, t)?, evo.evolve_quantity(a0, t)?))
}

/// `⟨H ◁ A⟩`, the instantaneous rate of change of `⟨A⟩`.
pub fn ehrenfest_rhs(
    state: &DensityState,
    a: &QuantumQuantity,
    h: &QuantumQuantity,
) -> Result<Complex64> {
    h.require_hermitian("Hamiltonian")?;
    state.expectation(&h.lie(a)?)
}

/// `|⟨φ(u)⟩_s − ⟨φ(u+s−t)⟩_t|` in the Heisenberg picture, where `φ(w)` is
/// `φ` Heisenberg-evolved to time `w` and `⟨·⟩_s` evolves a further `s`.
pub fn heisenberg_time_shift_residual(
    state: &DensityState,
    phi: &QuantumQuantity,
    h: &QuantumQuantity,
    s: f64,
    t: f64,
    u: f64,
) -> Result<f64> {
    let split = GaugeSplit::heisenberg(h)?;
    let evo = SplitEvolution::new(&split)?;
    let side = |shift: f64, at: f64| -> Result<Complex64> {
        let shifted = evo.evolve_quantity(phi, shift)?;
        let rho = evo.evolve_state(state, at)?;
        rho.expectation(&evo.evolve_quantity(&shifted, at)?)
    };
    let lhs = side(u, s)?;
    let rhs = side(u + s - t, t)?;
    Ok((lhs - rhs).norm())
}

pub const TIME_SHIFT_TOL: f64 = 1e-10;

/// True when the Heisenberg time-shift identity holds within `1e-10`.
pub fn heisenberg_time_shift_check(
    state: &DensityState,
    phi: &QuantumQuantity,
    h: &QuantumQuantity,
    s: f64,
    t: f64,
    u: f64,
) -> Result<bool> {
    Ok(heisenberg_time_shift_residual(state, phi, h, s, t, u)? <= TIME_SHIFT_TOL)
}
