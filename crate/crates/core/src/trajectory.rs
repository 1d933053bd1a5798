//! Sampled expectation/uncertainty histories.

use alloc::string::String;
use alloc::vec::Vec;

use crate::dynamics::{GaugeSplit, SplitEvolution};
use crate::error::{Error, Result};
use crate::quantum::QuantumQuantity;
use crate::state::DensityState;
use crate::uncertainty::{uncertain_value, UncertainValue};

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    labels: Vec<String>,
    records: Vec<Vec<UncertainValue>>,
}

impl Trajectory {
    pub fn new(
        times: Vec<f64>,
        labels: Vec<String>,
        records: Vec<Vec<UncertainValue>>,
    ) -> Result<Self> {
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::NonMonotoneTimes);
        }
        if records.len() != times.len() || records.iter().any(|r| r.len() != labels.len()) {
            return Err(Error::InvalidArgument("trajectory records do not match times/labels"));
        }
        Ok(Self {
            times,
            labels,
            records,
        })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn num_observables(&self) -> usize {
        self.labels.len()
    }

    /// One row per time.
    pub fn records(&self) -> &[Vec<UncertainValue>] {
        &self.records
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Column of one observable.
    pub fn series(&self, index: usize) -> Vec<UncertainValue> {
        self.records.iter().map(|r| r[index]).collect()
    }
}

/// `steps + 1` equally spaced times on `[t0, t1]`, or just `t0` when the
/// window is empty.
pub fn time_grid(t0: f64, t1: f64, steps: usize) -> Result<Vec<f64>> {
    if !t0.is_finite() || !t1.is_finite() || t1 < t0 {
        return Err(Error::InvalidArgument("time window must satisfy t0 ≤ t1"));
    }
    if t0 == t1 {
        return Ok(alloc::vec![t0]);
    }
    if steps == 0 {
        return Err(Error::InvalidArgument("a nonempty window needs at least one step"));
    }
    let dt = (t1 - t0) / steps as f64;
    Ok((0..=steps)
        .map(|k| if k == steps { t1 } else { t0 + dt * k as f64 })
        .collect())
}

/// Tracks `⟨A(t)⟩_t` and `σ_A(t)` of each observable under the split.
pub fn simulate(
    rho0: &DensityState,
    split: &GaugeSplit,
    observables: &[(String, QuantumQuantity)],
    times: &[f64],
) -> Result<Trajectory> {
    let evo = SplitEvolution::new(split)?;
    let mut records = Vec::with_capacity(times.len());
    for &t in times {
        let rho = evo.evolve_state(rho0, t)?;
        let mut row = Vec::with_capacity(observables.len());
        for (_, a0) in observables {
            let a = evo.evolve_quantity(a0, t)?;
            row.push(uncertain_value(&rho, &a)?);
        }
        records.push(row);
    }
    Trajectory::new(
        times.to_vec(),
        observables.iter().map(|(l, _)| l.clone()).collect(),
        records,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shapes() {
        assert_eq!(time_grid(1.0, 1.0, 10).unwrap(), alloc::vec![1.0]);
        let g = time_grid(0.0, 1.0, 4).unwrap();
        assert_eq!(g, alloc::vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!(time_grid(1.0, 0.0, 3).is_err());
        assert!(time_grid(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn rejects_unordered_times() {
        let r = Trajectory::new(alloc::vec![0.0, 0.0], alloc::vec![], alloc::vec![alloc::vec![], alloc::vec![]]);
        assert_eq!(r, Err(Error::NonMonotoneTimes));
    }
}
