//! Closed first/second-moment dynamics for quadratic Hamiltonians.
//!
//! For `H = ½ zᵀ K z + gᵀ z` in `z = (q, p)` the canonical flow is affine,
//! `ż = J (K z + g)`, identically for the classical and the quantum system.
//! Symmetrized moments therefore transform exactly under the flow map `Φ(t)`
//! of the augmented generator acting on `(z, 1)`.

use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::classical::{ratio_to_f64, ClassicalQuantity};
use crate::error::{Error, Result};
use crate::gaussian::GaussianPhaseState;
use crate::quantum::QuantumQuantity;
use crate::state::DensityState;

pub const COVARIANCE_PSD_TOL: f64 = 1e-10;

/// First moments `⟨z⟩` and symmetrized second moments `⟨(z_i z_j + z_j z_i)/2⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentState {
    first: Vec<f64>,
    second: DMatrix<f64>,
}

impl MomentState {
    pub fn new(first: Vec<f64>, second: DMatrix<f64>) -> Result<Self> {
        let n = first.len();
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::InvalidArgument("moment vector must have even, nonzero length"));
        }
        if second.nrows() != n || second.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: second.nrows(),
            });
        }
        if first.iter().chain(second.iter()).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let second = (&second + second.transpose()) * 0.5;
        let state = Self { first, second };
        let min = SymmetricEigen::new(state.covariance()).eigenvalues.min();
        if min < -COVARIANCE_PSD_TOL {
            return Err(Error::InvalidCovariance);
        }
        Ok(state)
    }

    pub fn from_gaussian(g: &GaussianPhaseState) -> Self {
        let mu = nalgebra::DVector::from_column_slice(g.mean());
        Self {
            first: g.mean().to_vec(),
            second: g.cov() + &mu * mu.transpose(),
        }
    }

    /// Moments of `state` for the given position and momentum operators.
    pub fn from_density(
        state: &DensityState,
        positions: &[QuantumQuantity],
        momenta: &[QuantumQuantity],
    ) -> Result<Self> {
        if positions.len() != momenta.len() {
            return Err(Error::DofMismatch {
                left: positions.len(),
                right: momenta.len(),
            });
        }
        let ops: Vec<&QuantumQuantity> = positions.iter().chain(momenta).collect();
        let n = ops.len();
        let mut first = Vec::with_capacity(n);
        for op in &ops {
            first.push(state.expectation(op)?.re);
        }
        let mut second = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let ab = ops[i].try_mul(ops[j])?;
                let ba = ops[j].try_mul(ops[i])?;
                let v = 0.5 * (state.expectation(&ab)? + state.expectation(&ba)?).re;
                second[(i, j)] = v;
                second[(j, i)] = v;
            }
        }
        Self::new(first, second)
    }

    pub fn dof(&self) -> usize {
        self.first.len() / 2
    }

    pub fn first(&self) -> &[f64] {
        &self.first
    }

    pub fn second(&self) -> &DMatrix<f64> {
        &self.second
    }

    /// `second − first firstᵀ`.
    pub fn covariance(&self) -> DMatrix<f64> {
        let mu = nalgebra::DVector::from_column_slice(&self.first);
        &self.second - &mu * mu.transpose()
    }

    pub fn mean_q(&self, j: usize) -> f64 {
        self.first[j]
    }

    pub fn mean_p(&self, j: usize) -> f64 {
        self.first[self.dof() + j]
    }

    pub fn sigma_q(&self, j: usize) -> f64 {
        libm::sqrt(self.covariance()[(j, j)].max(0.0))
    }

    pub fn sigma_p(&self, j: usize) -> f64 {
        let k = self.dof() + j;
        libm::sqrt(self.covariance()[(k, k)].max(0.0))
    }

    /// Largest entry difference against another moment state.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let a = self
            .first
            .iter()
            .zip(&other.first)
            .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
        a.max((&self.second - &other.second).amax())
    }
}

/// `H = ½ zᵀ K z + gᵀ z + c` on `d` degrees of freedom.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticHamiltonian {
    stiffness: DMatrix<f64>,
    force: Vec<f64>,
}

impl QuadraticHamiltonian {
    pub fn new(stiffness: DMatrix<f64>, force: Vec<f64>) -> Result<Self> {
        let n = force.len();
        if n == 0 || !n.is_multiple_of(2) || stiffness.nrows() != n || stiffness.ncols() != n {
            return Err(Error::InvalidArgument("stiffness must be 2d×2d and force 2d"));
        }
        if (&stiffness - stiffness.transpose()).amax() > 1e-12 {
            return Err(Error::InvalidArgument("stiffness must be symmetric"));
        }
        Ok(Self { stiffness, force })
    }

    /// `Σ_j p_j²/2m + mω² q_j²/2`.
    pub fn oscillator(dof: usize, mass: f64, omega: f64) -> Result<Self> {
        if !(mass > 0.0) || !omega.is_finite() {
            return Err(Error::InvalidArgument("mass must be positive"));
        }
        let mut k = DMatrix::zeros(2 * dof, 2 * dof);
        for j in 0..dof {
            k[(j, j)] = mass * omega * omega;
            k[(dof + j, dof + j)] = 1.0 / mass;
        }
        Self::new(k, alloc::vec![0.0; 2 * dof])
    }

    /// Reads `K` and `g` off a polynomial of degree at most two.
    pub fn from_polynomial(h: &ClassicalQuantity) -> Result<Self> {
        let degree = h.degree();
        if degree > 2 {
            return Err(Error::NonQuadratic { degree });
        }
        let n = 2 * h.dof();
        let mut k = DMatrix::zeros(n, n);
        let mut g = alloc::vec![0.0; n];
        for (e, c) in h.terms() {
            let c = ratio_to_f64(c);
            let idx: Vec<usize> = e
                .iter()
                .enumerate()
                .flat_map(|(i, &m)| core::iter::repeat_n(i, m as usize))
                .collect();
            match idx.as_slice() {
                [] => {}
                [i] => g[*i] += c,
                [i, j] if i == j => k[(*i, *i)] += 2.0 * c,
                [i, j] => {
                    k[(*i, *j)] += c;
                    k[(*j, *i)] += c;
                }
                _ => unreachable!("degree checked"),
            }
        }
        Self::new(k, g)
    }

    pub fn dof(&self) -> usize {
        self.force.len() / 2
    }

    /// Quantum operator `½ Σ K_ij (z_i z_j + z_j z_i)/2 + Σ g_i z_i`.
    pub fn to_operator(
        &self,
        positions: &[QuantumQuantity],
        momenta: &[QuantumQuantity],
    ) -> Result<QuantumQuantity> {
        let ops: Vec<&QuantumQuantity> = positions.iter().chain(momenta).collect();
        if ops.len() != self.force.len() {
            return Err(Error::DimensionMismatch {
                expected: self.force.len(),
                found: ops.len(),
            });
        }
        let first = ops[0];
        let mut acc = QuantumQuantity::zeros(first.dim(), first.hbar())?;
        for i in 0..ops.len() {
            for j in 0..ops.len() {
                let kij = self.stiffness[(i, j)];
                if kij != 0.0 {
                    let sym = ops[i].try_mul(ops[j])?.try_add(&ops[j].try_mul(ops[i])?)?;
                    acc = acc.try_add(&sym.scale(Complex64::new(0.25 * kij, 0.0)))?;
                }
            }
            if self.force[i] != 0.0 {
                acc = acc.try_add(&ops[i].scale(Complex64::new(self.force[i], 0.0)))?;
            }
        }
        Ok(acc)
    }

    /// Augmented generator `G` with `d/dt (z, 1) = G (z, 1)`.
    pub fn generator(&self) -> DMatrix<f64> {
        let n = self.force.len();
        let d = n / 2;
        let mut g = DMatrix::zeros(n + 1, n + 1);
        // q̇ = ∂H/∂p, ṗ = −∂H/∂q.
        for j in 0..d {
            for k in 0..n {
                g[(j, k)] = self.stiffness[(d + j, k)];
                g[(d + j, k)] = -self.stiffness[(j, k)];
            }
            g[(j, n)] = self.force[d + j];
            g[(d + j, n)] = -self.force[j];
        }
        g
    }

    /// Flow map of the augmented coordinates after time `t`.
    pub fn flow(&self, t: f64) -> DMatrix<f64> {
        expm(&(self.generator() * t))
    }
}

/// Exact moments after time `t` under a quadratic Hamiltonian.
pub fn evolve_moments_quadratic(
    m0: &MomentState,
    h: &QuadraticHamiltonian,
    t: f64,
) -> Result<MomentState> {
    if m0.dof() != h.dof() {
        return Err(Error::DofMismatch {
            left: m0.dof(),
            right: h.dof(),
        });
    }
    if t == 0.0 {
        return Ok(m0.clone());
    }
    let n = m0.first.len();
    let phi = h.flow(t);
    let mut w = DMatrix::zeros(n + 1, n + 1);
    w.view_mut((0, 0), (n, n)).copy_from(&m0.second);
    for i in 0..n {
        w[(i, n)] = m0.first[i];
        w[(n, i)] = m0.first[i];
    }
    w[(n, n)] = 1.0;
    let w = &phi * w * phi.transpose();
    let first = (0..n).map(|i| w[(i, n)]).collect();
    let second = w.view((0, 0), (n, n)).into_owned();
    MomentState::new(first, second)
}

/// Real matrix exponential by scaling and squaring with a Taylor core.
pub fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let norm = a.row_iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max);
    let mut squarings = 0u32;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        scale *= 0.5;
        squarings += 1;
    }
    let x = a * scale;
    let mut term = DMatrix::identity(n, n);
    let mut sum = DMatrix::identity(n, n);
    for k in 1..=20 {
        term = &term * &x / k as f64;
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}
