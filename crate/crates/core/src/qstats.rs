//! Quantum statements, q-probabilities, product ensembles and seeded
//! relative-frequency experiments.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{self, CMatrix, CVector, HermitianEigen};
use crate::quantum::QuantumQuantity;
use crate::state::DensityState;
use crate::uncertainty::{uncertain_value, UncertainValue};

pub const PROJECTOR_TOL: f64 = 1e-10;
pub const PROJECTOR_HERMITIAN_TOL: f64 = 1e-12;
pub const SPECTRUM_TOL: f64 = 1e-10;
pub const ENDPOINT_TOL: f64 = 1e-10;
pub const JOINT_DIM_CAP: usize = 4096;
pub const LLN_TOL: f64 = 1e-12;
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// An orthogonal projector `P² = P = P*`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumStatement {
    p: QuantumQuantity,
}

impl QuantumStatement {
    pub fn new(p: QuantumQuantity) -> Result<Self> {
        let herm = p.hermitian_deviation();
        if herm > PROJECTOR_HERMITIAN_TOL {
            return Err(Error::NotHermitian {
                what: "statement",
                deviation: herm,
            });
        }
        let deviation = matrix::max_abs_diff(&(p.matrix() * p.matrix()), p.matrix());
        if deviation > PROJECTOR_TOL {
            return Err(Error::NotProjector { deviation });
        }
        Ok(Self { p })
    }

    /// `φφ*` for a unit vector `φ`.
    pub fn from_vector(phi: &CVector, hbar: f64) -> Result<Self> {
        check_unit(phi)?;
        Self::new(QuantumQuantity::with_hbar(matrix::outer(phi), hbar)?)
    }

    pub fn quantity(&self) -> &QuantumQuantity {
        &self.p
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }
}

fn check_unit(v: &CVector) -> Result<()> {
    let norm = v.norm();
    if (norm - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized { norm });
    }
    Ok(())
}

/// `Pr(P) = ⟨P⟩` for Hermitian `0 ≤ P ≤ 1`.
pub fn q_probability(state: &DensityState, p: &QuantumQuantity) -> Result<f64> {
    p.require_hermitian("q-probability effect")?;
    let eig = HermitianEigen::new(p.matrix());
    if eig.min() < -SPECTRUM_TOL || eig.max() > 1.0 + SPECTRUM_TOL {
        return Err(Error::SpectrumOutOfRange {
            min: eig.min(),
            max: eig.max(),
        });
    }
    Ok(state.expectation(p)?.re.clamp(0.0, 1.0))
}

/// Projector onto eigenvectors of `A` with eigenvalue in `]a, b[`; values
/// within `1e-10` of an endpoint are excluded.
pub fn spectral_event(a: &QuantumQuantity, lo: f64, hi: f64) -> Result<QuantumStatement> {
    if !(lo < hi) {
        return Err(Error::EmptyInterval { a: lo, b: hi });
    }
    a.require_hermitian("observable")?;
    let eig = HermitianEigen::new(a.matrix());
    let p = eig.map(|x| {
        if x > lo + ENDPOINT_TOL && x < hi - ENDPOINT_TOL {
            matrix::ONE
        } else {
            matrix::ZERO
        }
    });
    QuantumStatement::new(QuantumQuantity::with_hbar(
        matrix::hermitian_part(&p),
        a.hbar(),
    )?)
}

/// `|φ*ψ|²`, the probability of the statement `φφ*` in the pure state `ψ`.
pub fn test_for_state(phi: &CVector, psi: &CVector) -> Result<f64> {
    check_unit(phi)?;
    check_unit(psi)?;
    if phi.len() != psi.len() {
        return Err(Error::DimensionMismatch {
            expected: phi.len(),
            found: psi.len(),
        });
    }
    Ok(phi.dotc(psi).norm_sqr())
}

/// Sparse operator as `(row, col, value)` triplets; used for embedded
/// subsystem quantities on the joint space.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    dim: usize,
    entries: Vec<(usize, usize, Complex64)>,
}

impl SparseOperator {
    pub fn from_dense(m: &CMatrix) -> Self {
        let mut entries = Vec::new();
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                if m[(i, j)] != matrix::ZERO {
                    entries.push((i, j, m[(i, j)]));
                }
            }
        }
        Self {
            dim: m.nrows(),
            entries,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn to_dense(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for &(i, j, v) in &self.entries {
            m[(i, j)] += v;
        }
        m
    }

    /// `self · dense`.
    pub fn mul_dense(&self, dense: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, dense.ncols());
        for &(i, k, v) in &self.entries {
            for j in 0..dense.ncols() {
                out[(i, j)] += v * dense[(k, j)];
            }
        }
        out
    }

    /// `Tr(self · dense)`.
    pub fn trace_with(&self, dense: &CMatrix) -> Complex64 {
        self.entries.iter().map(|&(i, k, v)| v * dense[(k, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&(i, j, v)| (j, i, v.conj())).collect(),
        }
    }

    /// Sum of operators with duplicate positions merged.
    pub fn sum(ops: &[SparseOperator], scale: f64) -> Self {
        let dim = ops.first().map(|o| o.dim).unwrap_or(0);
        let mut all: Vec<(usize, usize, Complex64)> =
            ops.iter().flat_map(|o| o.entries.iter().copied()).collect();
        all.sort_by_key(|&(i, j, _)| (j, i));
        let mut entries: Vec<(usize, usize, Complex64)> = Vec::with_capacity(all.len());
        for (i, j, v) in all {
            match entries.last_mut() {
                Some(last) if last.0 == i && last.1 == j => last.2 += v,
                _ => entries.push((i, j, v)),
            }
        }
        for e in &mut entries {
            e.2 *= scale;
        }
        Self { dim, entries }
    }
}

/// `N` identically prepared, independent copies of a subsystem state.
#[derive(Debug, Clone)]
pub struct ProductEnsemble {
    sub_state: DensityState,
    copies: usize,
    joint: CMatrix,
}

impl ProductEnsemble {
    /// Builds `ρ^{⊗N}` and verifies every one-site reduced state equals `ρ`.
    pub fn new(sub_state: DensityState, copies: usize) -> Result<Self> {
        if copies == 0 {
            return Err(Error::InvalidArgument("ensemble needs at least one copy"));
        }
        let d = sub_state.dim();
        let joint_dim = d
            .checked_pow(copies as u32)
            .filter(|&n| n <= JOINT_DIM_CAP)
            .ok_or(Error::DimensionCap {
                dim: d.saturating_pow(copies as u32),
                cap: JOINT_DIM_CAP,
            })?;
        let factors: Vec<&CMatrix> = (0..copies).map(|_| sub_state.matrix()).collect();
        let joint = matrix::kron_all(&factors);
        debug_assert_eq!(joint.nrows(), joint_dim);
        let ens = Self {
            sub_state,
            copies,
            joint,
        };
        for site in 0..copies {
            let reduced = ens.reduced_state(site);
            let dev = matrix::max_abs_diff(&reduced, ens.sub_state.matrix());
            if dev > LLN_TOL {
                return Err(Error::InvalidArgument("reduced state differs from the subsystem state"));
            }
        }
        Ok(ens)
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn sub_dim(&self) -> usize {
        self.sub_state.dim()
    }

    pub fn joint_dim(&self) -> usize {
        self.joint.nrows()
    }

    pub fn sub_state(&self) -> &DensityState {
        &self.sub_state
    }

    pub fn joint_state(&self) -> &CMatrix {
        &self.joint
    }

    /// Partial trace over all sites except `site`.
    pub fn reduced_state(&self, site: usize) -> CMatrix {
        let d = self.sub_dim();
        let stride = d.pow((self.copies - 1 - site) as u32);
        let n = self.joint_dim();
        let mut out = CMatrix::zeros(d, d);
        for i in 0..n {
            let a = (i / stride) % d;
            let base = i - a * stride;
            for b in 0..d {
                out[(a, b)] += self.joint[(i, base + b * stride)];
            }
        }
        out
    }

    /// `A_l = I ⊗ … ⊗ A ⊗ … ⊗ I` with `A` at `site`.
    pub fn embed(&self, a: &QuantumQuantity, site: usize) -> Result<SparseOperator> {
        if a.dim() != self.sub_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.sub_dim(),
                found: a.dim(),
            });
        }
        if site >= self.copies {
            return Err(Error::IndexOutOfRange {
                index: site,
                size: self.copies,
            });
        }
        let d = self.sub_dim();
        let stride = d.pow((self.copies - 1 - site) as u32);
        let n = self.joint_dim();
        let mut entries = Vec::new();
        for i in 0..n {
            let r = (i / stride) % d;
            let base = i - r * stride;
            for c in 0..d {
                let v = a.matrix()[(r, c)];
                if v != matrix::ZERO {
                    entries.push((i, base + c * stride, v));
                }
            }
        }
        Ok(SparseOperator { dim: n, entries })
    }

    /// `Tr(ρ X)` on the joint space.
    pub fn joint_expectation(&self, x: &SparseOperator) -> Complex64 {
        x.trace_with(&self.joint)
    }

    /// `Tr(ρ X* Y)` on the joint space.
    pub fn joint_correlation(&self, x: &SparseOperator, y: &SparseOperator) -> Complex64 {
        x.adjoint().trace_with(&y.mul_dense(&self.joint))
    }

    /// Largest `|⟨A_k⟩ − ⟨A_l⟩|` over site pairs.
    pub fn identical_residual(&self, a: &QuantumQuantity) -> Result<f64> {
        let means: Vec<Complex64> = (0..self.copies)
            .map(|l| Ok(self.joint_expectation(&self.embed(a, l)?)))
            .collect::<Result<_>>()?;
        Ok(means
            .iter()
            .flat_map(|x| means.iter().map(move |y| (x - y).norm()))
            .fold(0.0, f64::max))
    }

    /// Largest `|⟨A_k A_l⟩ − ⟨A_k⟩⟨A_l⟩|` over `k ≠ l`.
    pub fn independent_residual(&self, a: &QuantumQuantity) -> Result<f64> {
        let ops: Vec<SparseOperator> =
            (0..self.copies).map(|l| self.embed(a, l)).collect::<Result<_>>()?;
        let means: Vec<Complex64> = ops.iter().map(|o| self.joint_expectation(o)).collect();
        let mut worst: f64 = 0.0;
        for k in 0..self.copies {
            for l in 0..self.copies {
                if k == l {
                    continue;
                }
                let prod = ops[k].mul_dense(&ops[l].mul_dense(&self.joint));
                let joint = matrix::trace(&prod);
                worst = worst.max((joint - means[k] * means[l]).norm());
            }
        }
        Ok(worst)
    }

    /// `Â = (1/N) Σ_l A_l` on the joint space.
    pub fn mean_quantity(&self, a: &QuantumQuantity) -> Result<SparseOperator> {
        let ops: Vec<SparseOperator> =
            (0..self.copies).map(|l| self.embed(a, l)).collect::<Result<_>>()?;
        Ok(SparseOperator::sum(&ops, 1.0 / self.copies as f64))
    }
}

/// Joint-space and single-site uncertain values of the mean quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LlnOutcome {
    /// `⟨Â⟩ ± σ_Â` computed on the joint space.
    pub mean: UncertainValue,
    /// `⟨A_l⟩ ± σ_{A_l}` on one subsystem.
    pub single: UncertainValue,
    /// `|⟨Â⟩ − ⟨A_l⟩|`
    pub mean_residual: f64,
    /// `|σ_Â − σ_{A_l}/√N|`
    pub sigma_residual: f64,
}

/// Weak law of large numbers on a product ensemble, verified by joint-space
/// brute force against the single-subsystem formula.
pub fn lln_mean_quantity(ens: &ProductEnsemble, a: &QuantumQuantity) -> Result<LlnOutcome> {
    let mean_op = ens.mean_quantity(a)?;
    let value = ens.joint_expectation(&mean_op);
    let second = ens.joint_correlation(&mean_op, &mean_op).re;
    let hermitian = a.is_hermitian();
    let value = if hermitian {
        Complex64::new(value.re, 0.0)
    } else {
        value
    };
    let variance = crate::uncertainty::clamp_variance(second - value.norm_sqr(), second.abs())?;
    let mean = UncertainValue::new(value, libm::sqrt(variance))?;
    let single = uncertain_value(ens.sub_state(), a)?;
    let predicted = single.sigma / libm::sqrt(ens.copies() as f64);
    let outcome = LlnOutcome {
        mean,
        single,
        mean_residual: (mean.value - single.value).norm(),
        sigma_residual: (mean.sigma - predicted).abs(),
    };
    Ok(outcome)
}

/// Outcome of a seeded Bernoulli relative-frequency experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyResult {
    pub p_theory: f64,
    pub p_hat: f64,
    pub trials: u64,
    pub seed: u64,
    /// `√(p̂(1 − p̂)/N)`
    pub sigma_bound: f64,
    /// `|p̂ − p| ≤ k √(p(1 − p)/N)` at the configured `k`.
    pub within_k_sigma: bool,
    pub k: f64,
}

pub const DEFAULT_SAFEGUARD_SIGMAS: f64 = 4.0;

/// `N` independent Bernoulli(`p`) draws from a ChaCha8 stream seeded by `seed`.
pub fn bernoulli_frequency(p: f64, trials: u64, seed: u64) -> Result<FrequencyResult> {
    if trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument("probability must lie in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    for _ in 0..trials {
        let u: f64 = rng.random();
        if u < p {
            hits += 1;
        }
    }
    let n = trials as f64;
    let p_hat = hits as f64 / n;
    let k = DEFAULT_SAFEGUARD_SIGMAS;
    Ok(FrequencyResult {
        p_theory: p,
        p_hat,
        trials,
        seed,
        sigma_bound: libm::sqrt(p_hat * (1.0 - p_hat) / n),
        within_k_sigma: (p_hat - p).abs() <= k * libm::sqrt(p * (1.0 - p) / n),
        k,
    })
}

/// Relative frequency of the statement `P` in `state` over `N` seeded trials.
pub fn relative_frequency(
    state: &DensityState,
    p: &QuantumStatement,
    trials: u64,
    seed: u64,
) -> Result<FrequencyResult> {
    let prob = q_probability(state, p.quantity())?;
    bernoulli_frequency(prob, trials, seed)
}
