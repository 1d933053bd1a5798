//! Expectation-first probability on finite sample spaces.
//!
//! A stochastic model is a weight vector on `Ω`; everything else (statements,
//! probabilities, CDFs, conditioning) is derived from its expectation
//! functional `⟨A⟩ = Σ_ω w(ω) A(ω)`.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub const WEIGHT_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SampleSpace {
    size: usize,
    labels: Option<Vec<String>>,
}

impl SampleSpace {
    pub fn new(size: usize) -> Result<Arc<Self>> {
        if size == 0 {
            return Err(Error::Empty);
        }
        Ok(Arc::new(Self { size, labels: None }))
    }

    pub fn labelled(labels: Vec<String>) -> Result<Arc<Self>> {
        if labels.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Arc::new(Self {
            size: labels.len(),
            labels: Some(labels),
        }))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
}

fn same_space(a: &Arc<SampleSpace>, b: &Arc<SampleSpace>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}

/// A real function on the sample space.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomVariable {
    space: Arc<SampleSpace>,
    values: Vec<f64>,
}

impl RandomVariable {
    pub fn new(space: &Arc<SampleSpace>, values: Vec<f64>) -> Result<Self> {
        if values.len() != space.size() {
            return Err(Error::DimensionMismatch {
                expected: space.size(),
                found: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            space: space.clone(),
            values,
        })
    }

    pub fn from_fn<F: Fn(usize) -> f64>(space: &Arc<SampleSpace>, f: F) -> Result<Self> {
        Self::new(space, (0..space.size()).map(f).collect())
    }

    pub fn constant(space: &Arc<SampleSpace>, c: f64) -> Result<Self> {
        Self::from_fn(space, |_| c)
    }

    pub fn space(&self) -> &Arc<SampleSpace> {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> Result<Self> {
        Self::new(&self.space, self.values.iter().map(|&v| f(v)).collect())
    }

    fn zip_with<F: Fn(f64, f64) -> f64>(&self, other: &Self, f: F) -> Result<Self> {
        same_space(&self.space, &other.space)?;
        Self::new(
            &self.space,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    /// `αA + βB`.
    pub fn linear(&self, alpha: f64, other: &Self, beta: f64) -> Result<Self> {
        self.zip_with(other, |a, b| alpha * a + beta * b)
    }

    /// The statement `[A ≤ x]`.
    pub fn at_most(&self, x: f64) -> Statement {
        Statement(RandomVariable {
            space: self.space.clone(),
            values: self.values.iter().map(|&v| if v <= x { 1.0 } else { 0.0 }).collect(),
        })
    }

    /// The statement `[A = x]`.
    pub fn equals(&self, x: f64) -> Statement {
        Statement(RandomVariable {
            space: self.space.clone(),
            values: self.values.iter().map(|&v| if v == x { 1.0 } else { 0.0 }).collect(),
        })
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// A `{0,1}`-valued random variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Statement(RandomVariable);

impl Statement {
    pub fn new(var: RandomVariable) -> Result<Self> {
        if var.values.iter().all(|&v| v == 0.0 || v == 1.0) {
            Ok(Self(var))
        } else {
            Err(Error::NotAStatement)
        }
    }

    pub fn from_predicate<F: Fn(usize) -> bool>(space: &Arc<SampleSpace>, f: F) -> Self {
        Self(RandomVariable {
            space: space.clone(),
            values: (0..space.size()).map(|w| if f(w) { 1.0 } else { 0.0 }).collect(),
        })
    }

    pub fn as_variable(&self) -> &RandomVariable {
        &self.0
    }

    pub fn and(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.mul(&other.0)?))
    }

    pub fn not(&self) -> Self {
        Self(RandomVariable {
            space: self.0.space.clone(),
            values: self.0.values.iter().map(|v| 1.0 - v).collect(),
        })
    }
}

/// `(1/|S|) Σ_{ω∈S} A(ω)` over a multiset of experiments.
pub fn sample_mean(sample: &[usize], a: &RandomVariable) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut total = 0.0;
    for &w in sample {
        total += *a.values.get(w).ok_or(Error::IndexOutOfRange {
            index: w,
            size: a.values.len(),
        })?;
    }
    Ok(total / sample.len() as f64)
}

/// Fraction of data entries `≤ x`.
pub fn sample_cdf(data: &[f64], x: f64) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(data.iter().filter(|&&v| v <= x).count() as f64 / data.len() as f64)
}

/// Density estimate: slope of the sample CDF averaged over `[x − h, x + h]`,
/// i.e. the derivative of its piecewise-linear smoothing with window `h`.
pub fn smoothed_density(data: &[f64], window: f64, x: f64) -> Result<f64> {
    if !(window > 0.0) {
        return Err(Error::InvalidArgument("smoothing window must be positive"));
    }
    Ok((sample_cdf(data, x + window)? - sample_cdf(data, x - window)?) / (2.0 * window))
}

/// A left-continuous step function: `levels[0]` on `(−∞, x₁]`, `levels[k]`
/// on `(x_k, x_{k+1}]`, and `levels[n]` on `(x_n, ∞)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    jumps: Vec<f64>,
    levels: Vec<f64>,
}

impl StepFunction {
    pub fn new(jumps: Vec<f64>, levels: Vec<f64>) -> Result<Self> {
        if levels.len() != jumps.len() + 1 {
            return Err(Error::InvalidStepFunction("need one more level than jump points"));
        }
        if jumps.windows(2).any(|w| !(w[0] <= w[1])) {
            return Err(Error::InvalidStepFunction("jump points must be sorted"));
        }
        if jumps.iter().chain(&levels).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { jumps, levels })
    }

    pub fn constant(c: f64) -> Self {
        Self {
            jumps: Vec::new(),
            levels: alloc::vec![c],
        }
    }

    /// Indicator of `(a, ∞)`.
    pub fn indicator_above(a: f64) -> Self {
        Self {
            jumps: alloc::vec![a],
            levels: alloc::vec![0.0, 1.0],
        }
    }

    pub fn jumps(&self) -> &[f64] {
        &self.jumps
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn eval(&self, x: f64) -> f64 {
        let k = self.jumps.iter().take_while(|&&j| j < x).count();
        self.levels[k]
    }
}

/// A finite stochastic model: nonnegative weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticModel {
    space: Arc<SampleSpace>,
    weights: Vec<f64>,
}

impl StochasticModel {
    pub fn new(space: &Arc<SampleSpace>, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != space.size() {
            return Err(Error::DimensionMismatch {
                expected: space.size(),
                found: weights.len(),
            });
        }
        let sum: f64 = weights.iter().sum();
        if weights.iter().any(|&w| !(w >= 0.0) || !w.is_finite())
            || (sum - 1.0).abs() > WEIGHT_SUM_TOL
        {
            return Err(Error::InvalidWeights { sum });
        }
        Ok(Self {
            space: space.clone(),
            weights,
        })
    }

    pub fn uniform(space: &Arc<SampleSpace>) -> Self {
        let n = space.size();
        Self {
            space: space.clone(),
            weights: alloc::vec![1.0 / n as f64; n],
        }
    }

    /// The sample-mean model of a multiset of experiments.
    pub fn from_sample(space: &Arc<SampleSpace>, sample: &[usize]) -> Result<Self> {
        if sample.is_empty() {
            return Err(Error::EmptySample);
        }
        let mut weights = alloc::vec![0.0; space.size()];
        for &w in sample {
            *weights.get_mut(w).ok_or(Error::IndexOutOfRange {
                index: w,
                size: space.size(),
            })? += 1.0;
        }
        let n = sample.len() as f64;
        weights.iter_mut().for_each(|w| *w /= n);
        Ok(Self {
            space: space.clone(),
            weights,
        })
    }

    /// `Σ c_i model_i` for convex coefficients `c`.
    pub fn convex_combination(models: &[(f64, &StochasticModel)]) -> Result<Self> {
        let first = models.first().ok_or(Error::Empty)?.1;
        let mut weights = alloc::vec![0.0; first.weights.len()];
        for (c, m) in models {
            same_space(&first.space, &m.space)?;
            if !(*c >= 0.0) {
                return Err(Error::InvalidWeights { sum: *c });
            }
            for (w, x) in weights.iter_mut().zip(&m.weights) {
                *w += c * x;
            }
        }
        Self::new(&first.space, weights)
    }

    pub fn space(&self) -> &Arc<SampleSpace> {
        &self.space
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Indices with positive weight.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.weights.iter().enumerate().filter(|(_, &w)| w > 0.0).map(|(i, _)| i)
    }

    /// `⟨A⟩ = Σ w(ω) A(ω)`.
    pub fn expectation(&self, a: &RandomVariable) -> Result<f64> {
        same_space(&self.space, &a.space)?;
        Ok(self.weights.iter().zip(&a.values).map(|(w, v)| w * v).sum())
    }

    /// `Pr(P) = ⟨P⟩`, clamped into `[0, 1]` against round-off. A statement
    /// true on the whole support has probability exactly one.
    pub fn probability(&self, p: &Statement) -> Result<f64> {
        same_space(&self.space, &p.0.space)?;
        if self.support().all(|i| p.0.values[i] == 1.0) {
            return Ok(1.0);
        }
        Ok(self.expectation(&p.0)?.clamp(0.0, 1.0))
    }

    /// `Pr(A ≤ x)`.
    pub fn cdf(&self, a: &RandomVariable, x: f64) -> Result<f64> {
        self.probability(&a.at_most(x))
    }

    /// `⟨f(A)⟩` from the CDF: `f(x₁)F(x₁) + Σ f(x_{k+1})(F(x_{k+1}) − F(x_k))`,
    /// plus the tail `f(∞)(1 − F(x_n))` for values beyond the last jump.
    pub fn step_expectation(&self, a: &RandomVariable, f: &StepFunction) -> Result<f64> {
        let n = f.jumps.len();
        if n == 0 {
            return Ok(f.levels[0]);
        }
        let mut prev = self.cdf(a, f.jumps[0])?;
        let mut total = f.levels[0] * prev;
        for k in 1..n {
            let next = self.cdf(a, f.jumps[k])?;
            total += f.levels[k] * (next - prev);
            prev = next;
        }
        total += f.levels[n] * (1.0 - prev);
        Ok(total)
    }

    /// `⟨f(A)⟩` by pointwise composition.
    pub fn composite_expectation(&self, a: &RandomVariable, f: &StepFunction) -> Result<f64> {
        self.expectation(&a.map(|v| f.eval(v))?)
    }

    /// `⟨X⟩_P = ⟨XP⟩ / ⟨P⟩` for a nonnegative weight `P`.
    pub fn conditional_expectation(&self, x: &RandomVariable, p: &RandomVariable) -> Result<f64> {
        if p.values.iter().any(|&v| v < 0.0) {
            return Err(Error::InvalidArgument("conditioning weight must be nonnegative"));
        }
        let norm = self.expectation(p)?;
        if !(norm > 0.0) {
            return Err(Error::NullCondition);
        }
        Ok(self.expectation(&x.mul(p)?)? / norm)
    }

    /// The model restricted to the weight `P` and renormalized.
    pub fn conditioned(&self, p: &RandomVariable) -> Result<Self> {
        same_space(&self.space, &p.space)?;
        if p.values.iter().any(|&v| v < 0.0) {
            return Err(Error::InvalidArgument("conditioning weight must be nonnegative"));
        }
        let norm = self.expectation(p)?;
        if !(norm > 0.0) {
            return Err(Error::NullCondition);
        }
        let weights: Vec<f64> = self
            .weights
            .iter()
            .zip(&p.values)
            .map(|(w, v)| w * v / norm)
            .collect();
        let sum: f64 = weights.iter().sum();
        Self::new(&self.space, weights.iter().map(|w| w / sum).collect())
    }

    /// `Pr(B | A) = ⟨BA⟩ / ⟨A⟩`.
    pub fn conditional_probability(&self, b: &Statement, a: &Statement) -> Result<f64> {
        self.conditional_expectation(&b.0, &a.0)
    }

    pub fn bayes_update(&self, a: &Statement, b: &Statement) -> Result<BayesUpdate> {
        let prior = self.probability(a)?;
        let evidence = self.probability(b)?;
        if !(evidence > 0.0) || !(prior > 0.0) {
            return Err(Error::NullCondition);
        }
        let likelihood = self.conditional_probability(b, a)?;
        let update_ratio = likelihood / evidence;
        let joint = self.probability(&b.and(a)?)?;
        Ok(BayesUpdate {
            prior,
            posterior: prior * update_ratio,
            update_ratio,
            likelihood,
            product_rule_residual: (joint - likelihood * prior).abs(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BayesUpdate {
    /// `Pr(A)`
    pub prior: f64,
    /// `Pr(A | B)`
    pub posterior: f64,
    /// `Pr(B | A) / Pr(B)`
    pub update_ratio: f64,
    /// `Pr(B | A)`
    pub likelihood: f64,
    /// `|Pr(B ∧ A) − Pr(B | A) Pr(A)|`
    pub product_rule_residual: f64,
}

/// Checks of the expectation axioms on a given model. Each returns a
/// violation magnitude (zero when the axiom holds exactly).
pub mod axioms {
    use super::*;

    /// E1: `⟨1⟩ = 1`.
    pub fn normalization(m: &StochasticModel) -> Result<f64> {
        Ok((m.expectation(&RandomVariable::constant(m.space(), 1.0)?)? - 1.0).abs())
    }

    /// E2: `⟨αA + βB⟩ = α⟨A⟩ + β⟨B⟩`.
    pub fn linearity(
        m: &StochasticModel,
        a: &RandomVariable,
        b: &RandomVariable,
        alpha: f64,
        beta: f64,
    ) -> Result<f64> {
        let lhs = m.expectation(&a.linear(alpha, b, beta)?)?;
        let rhs = alpha * m.expectation(a)? + beta * m.expectation(b)?;
        Ok((lhs - rhs).abs())
    }

    /// E3: `A ≥ 0 ⇒ ⟨A⟩ ≥ 0`, tested on `|A|`.
    pub fn positivity(m: &StochasticModel, a: &RandomVariable) -> Result<f64> {
        Ok((-m.expectation(&a.map(f64::abs)?)?).max(0.0))
    }

    /// E4 on the support: `A ≥ 0, ⟨A⟩ = 0 ⇒ A = 0` wherever the weight is positive.
    /// Returns the largest `A(ω)` on the support when `⟨A⟩ = 0`.
    pub fn definiteness(m: &StochasticModel, a: &RandomVariable) -> Result<f64> {
        let abs = a.map(f64::abs)?;
        if m.expectation(&abs)? != 0.0 {
            return Ok(0.0);
        }
        Ok(m.support().map(|w| abs.values()[w]).fold(0.0, f64::max))
    }

    /// E5 for an eventually-constant decreasing sequence `A_k = max(A − k·step, 0)`:
    /// expectations decrease monotonically and reach zero once the sequence does.
    pub fn monotone_convergence(m: &StochasticModel, a: &RandomVariable, step: f64) -> Result<f64> {
        if !(step > 0.0) {
            return Err(Error::InvalidArgument("step must be positive"));
        }
        let top = a.map(f64::abs)?;
        let steps = libm::ceil(top.max() / step) as usize + 1;
        let mut prev = f64::INFINITY;
        let mut violation: f64 = 0.0;
        for k in 0..=steps {
            let ak = top.map(|v| (v - k as f64 * step).max(0.0))?;
            let e = m.expectation(&ak)?;
            violation = violation.max(e - prev);
            prev = e;
        }
        Ok(violation.max(prev.abs()))
    }

    /// E6: `⟨A²⟩ = 0 ⇒ A = 0` on the support.
    pub fn square_definiteness(m: &StochasticModel, a: &RandomVariable) -> Result<f64> {
        let sq = a.mul(a)?;
        if m.expectation(&sq)? != 0.0 {
            return Ok(0.0);
        }
        Ok(m.support().map(|w| a.values()[w].abs()).fold(0.0, f64::max))
    }

    /// E7: `A ≤ B ⇒ ⟨A⟩ ≤ ⟨B⟩`, tested on `min(A, B) ≤ max(A, B)`.
    pub fn monotonicity(m: &StochasticModel, a: &RandomVariable, b: &RandomVariable) -> Result<f64> {
        let lo = a.zip_with(b, f64::min)?;
        let hi = a.zip_with(b, f64::max)?;
        Ok((m.expectation(&lo)? - m.expectation(&hi)?).max(0.0))
    }

    /// For statements of which exactly one holds on each experiment:
    /// `|Σ Pr − 1|` and the largest pairwise `Pr(A_i ∧ A_j)`.
    pub fn partition(m: &StochasticModel, family: &[Statement]) -> Result<(f64, f64)> {
        let mut total = 0.0;
        let mut overlap: f64 = 0.0;
        for (i, a) in family.iter().enumerate() {
            total += m.probability(a)?;
            for b in &family[i + 1..] {
                overlap = overlap.max(m.probability(&a.and(b)?)?);
            }
        }
        Ok(((total - 1.0).abs(), overlap))
    }

    /// CDF laws on a finite model, checked exactly at the value set of `A`:
    /// monotone, right-continuous at each jump, `0` below the minimum and
    /// `1` from the maximum on. Returns whether all hold.
    pub fn cdf_laws(m: &StochasticModel, a: &RandomVariable) -> Result<bool> {
        let mut points: Vec<f64> = a.values().to_vec();
        points.sort_by(f64::total_cmp);
        points.dedup();
        let mut ok = m.cdf(a, points[0] - 1.0)? == 0.0 && m.cdf(a, f64::NEG_INFINITY)? == 0.0;
        ok &= m.cdf(a, *points.last().unwrap())? == 1.0 && m.cdf(a, f64::INFINITY)? == 1.0;
        let mut prev = 0.0;
        for (i, &x) in points.iter().enumerate() {
            let at = m.cdf(a, x)?;
            let right = match points.get(i + 1) {
                Some(&next) => 0.5 * (x + next),
                None => x + 1.0,
            };
            ok &= at >= prev;
            ok &= m.cdf(a, right)? == at;
            if i > 0 {
                ok &= m.cdf(a, 0.5 * (points[i - 1] + x))? == prev;
            }
            prev = at;
        }
        Ok(ok)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn die() -> (Arc<SampleSpace>, RandomVariable, StochasticModel) {
        let space = SampleSpace::new(6).unwrap();
        let n = RandomVariable::from_fn(&space, |w| (w + 1) as f64).unwrap();
        let model = StochasticModel::uniform(&space);
        (space, n, model)
    }

    #[test]
    fn sample_means() {
        let (_, n, _) = die();
        assert_eq!(sample_mean(&[0, 1, 2, 3, 4, 5], &n).unwrap(), 3.5);
        assert_eq!(sample_mean(&[4], &n).unwrap(), 5.0);
        assert_eq!(sample_mean(&[0, 0, 1], &n).unwrap(), 4.0 / 3.0);
        assert_eq!(sample_mean(&[], &n), Err(Error::EmptySample));
    }

    #[test]
    fn die_expectations() {
        let (space, n, model) = die();
        assert_eq!(model.expectation(&n).unwrap(), 3.5);
        let c = RandomVariable::constant(&space, 2.5).unwrap();
        assert!((model.expectation(&c).unwrap() - 2.5).abs() < 1e-15);
        let half = StochasticModel::new(&space, alloc::vec![0.5, 0.5, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(half.expectation(&n).unwrap(), 1.5);
    }

    #[test]
    fn die_probabilities() {
        let (space, n, model) = die();
        let even = Statement::from_predicate(&space, |w| (w + 1) % 2 == 0);
        assert_eq!(model.probability(&even).unwrap(), 0.5);
        let sure = Statement::from_predicate(&space, |_| true);
        assert!((model.probability(&sure).unwrap() - 1.0).abs() < 1e-15);
        let family: Vec<Statement> = (1..=6).map(|k| n.equals(k as f64)).collect();
        let (sum, overlap) = axioms::partition(&model, &family).unwrap();
        assert!(sum < 1e-15);
        assert_eq!(overlap, 0.0);
    }

    #[test]
    fn die_cdf() {
        let (_, n, model) = die();
        assert_eq!(model.cdf(&n, 3.5).unwrap(), 0.5);
        assert_eq!(model.cdf(&n, 0.5).unwrap(), 0.0);
        assert_eq!(model.cdf(&n, 6.0).unwrap(), 1.0);
        assert!(axioms::cdf_laws(&model, &n).unwrap());
    }

    #[test]
    fn step_expectations() {
        let (_, n, model) = die();
        assert!((model.step_expectation(&n, &StepFunction::constant(1.0)).unwrap() - 1.0).abs() < 1e-15);
        let above3 = StepFunction::indicator_above(3.0);
        assert_eq!(model.step_expectation(&n, &above3).unwrap(), 0.5);
        assert_eq!(model.composite_expectation(&n, &above3).unwrap(), 0.5);
        assert!(StepFunction::new(alloc::vec![2.0, 1.0], alloc::vec![0.0, 1.0, 2.0]).is_err());
        assert!(StepFunction::new(alloc::vec![1.0], alloc::vec![0.0]).is_err());
    }

    #[test]
    fn conditioning() {
        let (space, n, model) = die();
        let one = RandomVariable::constant(&space, 1.0).unwrap();
        let plain = model.expectation(&n).unwrap();
        assert!((model.conditional_expectation(&n, &one).unwrap() - plain).abs() < 1e-15);
        let even = Statement::from_predicate(&space, |w| (w + 1) % 2 == 0);
        assert!((model.conditional_expectation(&n, even.as_variable()).unwrap() - 4.0).abs() < 1e-15);
        let two = n.equals(2.0);
        assert!((model.conditional_probability(&two, &even).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let never = Statement::from_predicate(&space, |_| false);
        assert_eq!(
            model.conditional_expectation(&n, never.as_variable()),
            Err(Error::NullCondition)
        );
        let cond = model.conditioned(even.as_variable()).unwrap();
        let twice = cond.conditioned(even.as_variable()).unwrap();
        for (a, b) in cond.weights.iter().zip(&twice.weights) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn bayes() {
        let (space, n, model) = die();
        let even = Statement::from_predicate(&space, |w| (w + 1) % 2 == 0);
        let two = n.equals(2.0);
        let up = model.bayes_update(&two, &even).unwrap();
        assert!((up.posterior - 1.0 / 3.0).abs() < 1e-15);
        assert!(up.product_rule_residual < 1e-15);
        let same = model.bayes_update(&even, &even).unwrap();
        assert!((same.posterior - 1.0).abs() < 1e-15);
        // On two independent coins, [first heads] and [second heads].
        let coins = SampleSpace::new(4).unwrap();
        let m = StochasticModel::uniform(&coins);
        let a = Statement::from_predicate(&coins, |w| w & 1 == 1);
        let b = Statement::from_predicate(&coins, |w| w & 2 == 2);
        assert!((m.bayes_update(&a, &b).unwrap().update_ratio - 1.0).abs() < 1e-15);
        let never = Statement::from_predicate(&space, |_| false);
        assert_eq!(model.bayes_update(&two, &never), Err(Error::NullCondition));
    }

    #[test]
    fn sample_cdf_values() {
        let d = [1.0, 2.0, 3.0];
        assert_eq!(sample_cdf(&d, 2.0).unwrap(), 2.0 / 3.0);
        assert_eq!(sample_cdf(&d, 0.0).unwrap(), 0.0);
        assert_eq!(sample_cdf(&d, 3.0).unwrap(), 1.0);
        assert_eq!(sample_cdf(&[], 1.0), Err(Error::EmptySample));
        assert!((smoothed_density(&d, 0.5, 2.0).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_models() {
        let space = SampleSpace::new(3).unwrap();
        assert!(StochasticModel::new(&space, alloc::vec![0.5, 0.6, -0.1]).is_err());
        assert!(StochasticModel::new(&space, alloc::vec![0.5, 0.6, 0.0]).is_err());
        let other = SampleSpace::new(3).unwrap();
        let x = RandomVariable::constant(&other, 1.0).unwrap();
        // Structurally equal spaces are interchangeable.
        assert!(StochasticModel::uniform(&space).expectation(&x).is_ok());
        let bigger = SampleSpace::new(4).unwrap();
        let y = RandomVariable::constant(&bigger, 1.0).unwrap();
        assert_eq!(StochasticModel::uniform(&space).expectation(&y), Err(Error::SpaceMismatch));
        let not01 = RandomVariable::constant(&space, 0.5).unwrap();
        assert_eq!(Statement::new(not01), Err(Error::NotAStatement));
    }
}
