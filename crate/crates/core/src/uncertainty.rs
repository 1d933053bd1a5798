//! Uncertain values, the Robertson inequality, significance classification
//! and world tubes.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix;
use crate::quantum::QuantumQuantity;
use crate::state::DensityState;
use crate::trajectory::Trajectory;

/// Round-off allowance for a negative variance, relative to `max(1, ⟨A*A⟩)`.
pub const VARIANCE_ROUNDOFF: f64 = 1e-12;
pub const ROBERTSON_SLACK: f64 = 1e-10;
pub const DEFAULT_SIGNIFICANCE_THRESHOLD: f64 = 10.0;

/// `Ā ± σ_A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertainValue {
    pub value: Complex64,
    pub sigma: f64,
}

impl UncertainValue {
    pub fn new(value: Complex64, sigma: f64) -> Result<Self> {
        if !(sigma >= 0.0) || !sigma.is_finite() {
            return Err(Error::NegativeVariance { variance: sigma });
        }
        Ok(Self { value, sigma })
    }

    pub fn real(value: f64, sigma: f64) -> Result<Self> {
        Self::new(Complex64::new(value, 0.0), sigma)
    }
}

/// Clamps round-off negativity of a variance; larger negativity is an error.
pub fn clamp_variance(variance: f64, scale: f64) -> Result<f64> {
    if variance >= 0.0 {
        Ok(variance)
    } else if variance >= -VARIANCE_ROUNDOFF * scale.max(1.0) {
        Ok(0.0)
    } else {
        Err(Error::NegativeVariance { variance })
    }
}

/// `Ā = Tr ρA` with `σ_A = √(⟨A*A⟩ − |Ā|²)`, which for Hermitian `A` is
/// `√(⟨A²⟩ − Ā²)`.
pub fn uncertain_value(state: &DensityState, a: &QuantumQuantity) -> Result<UncertainValue> {
    let value = state.expectation(a)?;
    let hermitian = a.is_hermitian();
    let value = if hermitian {
        Complex64::new(value.re, 0.0)
    } else {
        value
    };
    let second = state.expectation(&a.adjoint().try_mul(a)?)?.re;
    let variance = clamp_variance(second - value.norm_sqr(), second.abs())?;
    UncertainValue::new(value, libm::sqrt(variance))
}

/// `√⟨(A − Ā)*(A − Ā)⟩`, the centered form of the uncertainty.
pub fn sigma_centered(state: &DensityState, a: &QuantumQuantity) -> Result<f64> {
    let mean = state.expectation(a)?;
    let centered = a.map_matrix(|m| m - matrix::identity(m.nrows()) * mean);
    let second = state.expectation(&centered.adjoint().try_mul(&centered)?)?.re;
    Ok(libm::sqrt(clamp_variance(second, second.abs())?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobertsonCheck {
    /// `σ_A σ_B`
    pub lhs: f64,
    /// `½ |⟨[A, B]⟩|`
    pub rhs: f64,
    pub holds: bool,
}

impl RobertsonCheck {
    pub fn slack(&self) -> f64 {
        self.lhs - self.rhs
    }
}

pub fn robertson_check(
    state: &DensityState,
    a: &QuantumQuantity,
    b: &QuantumQuantity,
) -> Result<RobertsonCheck> {
    a.require_hermitian("A")?;
    b.require_hermitian("B")?;
    let sa = uncertain_value(state, a)?.sigma;
    let sb = uncertain_value(state, b)?.sigma;
    let comm = a.try_mul(b)?.try_sub(&b.try_mul(a)?)?;
    let rhs = 0.5 * state.expectation(&comm)?.norm();
    let lhs = sa * sb;
    Ok(RobertsonCheck {
        lhs,
        rhs,
        holds: lhs >= rhs - ROBERTSON_SLACK,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Significance {
    Significant,
    Noise,
    Indeterminate,
}

/// Significant when `σ ≤ |Ā| / threshold`, noise when `σ ≥ threshold · |Ā|`.
pub fn classify_significance(u: &UncertainValue, threshold: f64) -> Result<Significance> {
    if !(threshold > 1.0) || !threshold.is_finite() {
        return Err(Error::InvalidThreshold(threshold));
    }
    let magnitude = u.value.norm();
    Ok(if u.sigma <= magnitude / threshold {
        Significance::Significant
    } else if u.sigma >= threshold * magnitude {
        Significance::Noise
    } else {
        Significance::Indeterminate
    })
}

/// Which tracked observables make up the tube.
#[derive(Debug, Clone, PartialEq)]
pub enum TubeComponents {
    Single(usize),
    /// Several position components; the halfwidth uses `√(Σ σ_i²)`.
    All(Vec<usize>),
}

/// The region `⟨q⟩_t ± κ σ_q(t)` swept over time.
#[derive(Debug, Clone, PartialEq)]
pub struct WorldTube {
    pub times: Vec<f64>,
    /// One row per time, one entry per component.
    pub center: Vec<Vec<f64>>,
    pub halfwidth: Vec<f64>,
    pub kappa: f64,
}

impl WorldTube {
    pub fn lower(&self, i: usize) -> Vec<f64> {
        self.center[i].iter().map(|c| c - self.halfwidth[i]).collect()
    }

    pub fn upper(&self, i: usize) -> Vec<f64> {
        self.center[i].iter().map(|c| c + self.halfwidth[i]).collect()
    }

    /// Pointwise containment `self ⊆ other` on identical time grids.
    pub fn contained_in(&self, other: &WorldTube) -> bool {
        self.times == other.times
            && (0..self.times.len()).all(|i| {
                self.center[i].iter().zip(&other.center[i]).all(|(a, b)| {
                    a - self.halfwidth[i] >= b - other.halfwidth[i]
                        && a + self.halfwidth[i] <= b + other.halfwidth[i]
                })
            })
    }
}

pub fn world_tube(traj: &Trajectory, components: &TubeComponents, kappa: f64) -> Result<WorldTube> {
    if !(kappa >= 0.0) || !kappa.is_finite() {
        return Err(Error::InvalidArgument("kappa must be nonnegative"));
    }
    let indices: Vec<usize> = match components {
        TubeComponents::Single(i) => alloc::vec![*i],
        TubeComponents::All(v) => v.clone(),
    };
    if indices.is_empty() {
        return Err(Error::InvalidArgument("no tube components selected"));
    }
    for &i in &indices {
        if i >= traj.num_observables() {
            return Err(Error::IndexOutOfRange {
                index: i,
                size: traj.num_observables(),
            });
        }
    }
    let mut center = Vec::with_capacity(traj.len());
    let mut halfwidth = Vec::with_capacity(traj.len());
    for row in traj.records() {
        center.push(indices.iter().map(|&i| row[i].value.re).collect());
        let spread: f64 = indices.iter().map(|&i| row[i].sigma * row[i].sigma).sum();
        halfwidth.push(kappa * libm::sqrt(spread));
    }
    Ok(WorldTube {
        times: traj.times().to_vec(),
        center,
        halfwidth,
        kappa,
    })
}
