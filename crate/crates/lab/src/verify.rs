//! Seeded verification suites. Every row names the relation it tests, the
//! measured residual and the tolerance; a row passes iff residual ≤ tolerance.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thermal_core::classical::ClassicalQuantity;
use thermal_core::dynamics::{ehrenfest_rhs, heisenberg_time_shift_residual, GaugeSplit, SplitEvolution};
use thermal_core::envelope::GaussianEnvelopeQuantity;
use thermal_core::gaussian::GaussianPhaseState;
use thermal_core::matrix::{self, CMatrix, CVector};
use thermal_core::moments::{evolve_moments_quadratic, MomentState, QuadraticHamiltonian};
use thermal_core::oscillator::Oscillator;
use thermal_core::qstats::{
    bernoulli_frequency, lln_mean_quantity, q_probability, relative_frequency, spectral_event, test_for_state,
    ProductEnsemble, QuantumStatement,
};
use thermal_core::quantum::QuantumQuantity;
use thermal_core::random;
use thermal_core::state::DensityState;
use thermal_core::trajectory::{simulate, time_grid};
use thermal_core::uncertainty::{
    classify_significance, robertson_check, sigma_centered, uncertain_value, world_tube, Significance,
    TubeComponents, UncertainValue,
};
use thermal_core::whittle::{
    axioms, sample_cdf, sample_mean, smoothed_density, RandomVariable, SampleSpace, Statement, StepFunction,
    StochasticModel,
};
use thermal_core::Complex64;

use crate::error::LabResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lie,
    Pictures,
    Uncertainty,
    Prob,
    Lln,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Lie, Suite::Pictures, Suite::Uncertainty, Suite::Prob, Suite::Lln];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lie => "lie",
            Suite::Pictures => "pictures",
            Suite::Uncertainty => "uncertainty",
            Suite::Prob => "prob",
            Suite::Lln => "lln",
            Suite::All => "all",
        }
    }

    fn stream(self) -> u64 {
        match self {
            Suite::Lie => 1,
            Suite::Pictures => 2,
            Suite::Uncertainty => 3,
            Suite::Prob => 4,
            Suite::Lln => 5,
            Suite::All => 0,
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "lie" => Suite::Lie,
            "pictures" => Suite::Pictures,
            "uncertainty" => Suite::Uncertainty,
            "prob" => Suite::Prob,
            "lln" => Suite::Lln,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite `{s}` (expected lie, pictures, uncertainty, prob, lln or all)")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub relation: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(id: impl Into<String>, relation: &'static str, residual: f64, tolerance: f64) -> Self {
        Self {
            id: id.into(),
            relation,
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }

    /// An exact check: residual 0 when `ok`, 1 otherwise, tolerance 0.
    pub fn exact(id: impl Into<String>, relation: &'static str, ok: bool) -> Self {
        Self::new(id, relation, if ok { 0.0 } else { 1.0 }, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<Check>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
    pub pass: bool,
}

impl Report {
    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.suites.iter().flat_map(|s| &s.checks)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "seed {}", self.seed);
        for s in &self.suites {
            let _ = writeln!(out, "suite {}", s.suite);
            for c in &s.checks {
                let _ = writeln!(
                    out,
                    "  [{}] {:<40} {:<32} residual {:.3e}  tol {:.1e}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.id,
                    c.relation,
                    c.residual,
                    c.tolerance
                );
            }
        }
        let total = self.checks().count();
        let failed = self.checks().filter(|c| !c.pass).count();
        let _ = writeln!(out, "{} checks, {} failed: {}", total, failed, if self.pass { "PASS" } else { "FAIL" });
        out
    }
}

pub fn run_verify(suite: Suite, seed: u64) -> LabResult<Report> {
    let list: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut suites = Vec::with_capacity(list.len());
    for s in list {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ s.stream().wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let checks = match s {
            Suite::Lie => lie_suite(&mut rng)?,
            Suite::Pictures => pictures_suite(&mut rng)?,
            Suite::Uncertainty => uncertainty_suite(&mut rng)?,
            Suite::Prob => prob_suite(&mut rng)?,
            Suite::Lln => lln_suite(&mut rng, seed)?,
            Suite::All => unreachable!(),
        };
        let pass = checks.iter().all(|c| c.pass);
        suites.push(SuiteReport { suite: s.name(), checks, pass });
    }
    let pass = suites.iter().all(|s| s.pass);
    Ok(Report { seed, suites, pass })
}

fn diff(a: &QuantumQuantity, b: &QuantumQuantity) -> f64 {
    matrix::max_abs_diff(a.matrix(), b.matrix())
}

/// Running maximum that propagates NaN as failure.
fn worst(acc: &mut f64, x: f64) {
    if x.is_nan() || x > *acc {
        *acc = if x.is_nan() { f64::INFINITY } else { x };
    }
}

fn lie_suite(rng: &mut ChaCha8Rng) -> LabResult<Vec<Check>> {
    const TOL: f64 = 1e-12;
    let (mut anti, mut leibniz, mut jacobi, mut trace, mut parts) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for k in 0..100 {
        let dim = 1 + k % 8;
        let hbar = rng.random_range(0.5..2.0);
        let mut draw = || QuantumQuantity::with_hbar(random::complex_matrix(rng, dim), hbar);
        let (a, b, c) = (draw()?, draw()?, draw()?);
        let ab = a.lie(&b)?;
        worst(&mut anti, diff(&ab, &-&b.lie(&a)?));
        worst(&mut leibniz, diff(&a.lie(&(&b * &c))?, &(&(&ab * &c) + &(&b * &a.lie(&c)?))));
        let j = &(&a.lie(&b.lie(&c)?)? + &b.lie(&c.lie(&a)?)?) + &c.lie(&ab)?;
        worst(&mut jacobi, matrix::max_abs(j.matrix()));
        worst(&mut trace, ab.integral().norm());
        worst(&mut parts, ((&ab * &c).integral() - (&a * &b.lie(&c)?).integral()).norm());
    }
    let mut checks = vec![
        Check::new("quantum.anticommutativity", "quantum-lie-bracket", anti, TOL),
        Check::new("quantum.product_rule", "quantum-lie-bracket", leibniz, TOL),
        Check::new("quantum.jacobi", "quantum-lie-bracket", jacobi, TOL),
        Check::new("quantum.trace_of_bracket", "trace-integral", trace, TOL),
        Check::new("quantum.integration_by_parts", "trace-integral", parts, TOL),
    ];
    let sx = QuantumQuantity::new(matrix::pauli_x())?;
    let sy = QuantumQuantity::new(matrix::pauli_y())?;
    let want = QuantumQuantity::new(matrix::pauli_z())?.scale(Complex64::new(-2.0, 0.0));
    checks.push(Check::new("quantum.pauli_example", "quantum-lie-bracket", diff(&sx.lie(&sy)?, &want), TOL));

    let (mut c_anti, mut c_leib, mut c_jac, mut c_int, mut c_parts) = (true, true, true, true, true);
    for k in 0..60 {
        let dof = 1 + k % 2;
        let a = random::polynomial(rng, dof, 4, 4)?;
        let b = random::polynomial(rng, dof, 4, 4)?;
        let c = random::polynomial(rng, dof, 4, 4)?;
        let ab = a.lie(&b)?;
        c_anti &= ab.try_add(&b.lie(&a)?)?.is_zero();
        c_leib &= a.lie(&b.try_mul(&c)?)? == ab.try_mul(&c)?.try_add(&b.try_mul(&a.lie(&c)?)?)?;
        c_jac &= a.lie(&b.lie(&c)?)?.try_add(&b.lie(&c.lie(&a)?)?)?.try_add(&c.lie(&ab)?)?.is_zero();
        let w = |p: ClassicalQuantity, rng: &mut ChaCha8Rng| GaussianEnvelopeQuantity::with_width(p, rng.random_range(1..=2));
        let (ea, eb, ec) = (w(a, rng)?, w(b, rng)?, w(c, rng)?);
        let eab = ea.lie(&eb)?;
        c_int &= eab.integral_exact().is_zero();
        c_parts &= eab.try_mul(&ec)?.integral_exact() == ea.try_mul(&eb.lie(&ec)?)?.integral_exact();
    }
    checks.extend([
        Check::exact("classical.anticommutativity", "classical-lie-product", c_anti),
        Check::exact("classical.product_rule", "classical-lie-product", c_leib),
        Check::exact("classical.jacobi", "classical-lie-product", c_jac),
        Check::exact("classical.integral_of_bracket", "liouville-integral", c_int),
        Check::exact("classical.integration_by_parts", "liouville-integral", c_parts),
    ]);

    let q = ClassicalQuantity::q(1, 0)?;
    let p = ClassicalQuantity::p(1, 0)?;
    let minus_one = ClassicalQuantity::one(1).scale(&thermal_core::classical::rational(-1, 1));
    checks.push(Check::exact("correspondence.classical", "correspondence", q.lie(&p)? == minus_one));
    let osc = Oscillator::new(40, 1.0, 1.0, 1.0)?;
    let bracket = osc.position().lie(&osc.momentum())?;
    let mut corr: f64 = 0.0;
    for i in 0..39 {
        for j in 0..39 {
            let want = if i == j { -1.0 } else { 0.0 };
            corr = corr.max((bracket.matrix()[(i, j)] - Complex64::new(want, 0.0)).norm());
        }
    }
    checks.push(Check::new("correspondence.quantum_block", "correspondence", corr, TOL));

    // Classical expectation by moment recursion against the exact envelope integral.
    let g = GaussianPhaseState::standard(2);
    let mut cexp: f64 = 0.0;
    for _ in 0..20 {
        let a = random::polynomial(rng, 2, 4, 5)?;
        let direct = g.expectation(&a)?;
        let via_integral = GaussianEnvelopeQuantity::standard(a).integral() / (2.0 * std::f64::consts::PI).powi(2);
        cexp = cexp.max((direct - via_integral).abs());
    }
    checks.push(Check::new("expectation.classical_gaussian", "q-expectation", cexp, TOL));
    let mut qexp: f64 = 0.0;
    for _ in 0..20 {
        let rho = random::density_state(rng, 4)?;
        let a = random::hermitian_quantity(rng, 4, 1.0)?;
        let e = rho.expectation(&a)?;
        let one = rho.expectation(&QuantumQuantity::identity(4, 1.0)?)?;
        qexp = qexp.max(e.im.abs()).max((one - Complex64::new(1.0, 0.0)).norm());
    }
    checks.push(Check::new("expectation.quantum_trace", "q-expectation", qexp, TOL));
    Ok(checks)
}

fn pictures_suite(rng: &mut ChaCha8Rng) -> LabResult<Vec<Check>> {
    let step = 1e-4;
    let (mut equiv, mut ehr, mut vn, mut qdot, mut rdot, mut norm) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    let (mut schro, mut heis, mut edyn, mut jac) = (true, true, 0.0, 0.0);
    for _ in 0..20 {
        let h = random::hermitian_quantity(rng, 4, 1.0)?;
        let rho = random::density_state(rng, 4)?;
        let a = random::hermitian_quantity(rng, 4, 1.0)?;
        let h1 = random::hermitian_quantity(rng, 4, 1.0)?;
        let splits = [GaugeSplit::schrodinger(&h)?, GaugeSplit::heisenberg(&h)?, GaugeSplit::interaction(&h, &h1)?];
        let evos: Vec<SplitEvolution> = splits.iter().map(SplitEvolution::new).collect::<Result<_, _>>()?;
        let mean = |evo: &SplitEvolution, t: f64| -> LabResult<Complex64> {
            Ok(evo.evolve_state(&rho, t)?.expectation(&evo.evolve_quantity(&a, t)?)?)
        };
        for k in 0..=20 {
            let t = 0.5 * k as f64;
            let base = mean(&evos[0], t)?;
            for evo in &evos[1..] {
                worst(&mut equiv, (mean(evo, t)? - base).norm());
            }
        }
        schro &= evos[0].evolve_quantity(&a, 3.0)? == a;
        heis &= evos[1].evolve_state(&rho, 3.0)? == rho;
        for &t in &[0.7, 5.3] {
            let rho_t = evos[0].evolve_state(&rho, t)?;
            let rate = ehrenfest_rhs(&rho_t, &a, &h)?;
            let fd = (mean(&evos[2], t + step)? - mean(&evos[2], t - step)?) / (2.0 * step);
            worst(&mut ehr, (fd - rate).norm());

            // Lie bracket on q-expectations drives ⟨A⟩ in any picture.
            let fd_h = (mean(&evos[1], t + step)? - mean(&evos[1], t - step)?) / (2.0 * step);
            worst(&mut edyn, (fd_h - rate).norm());

            let up = evos[0].evolve_state(&rho, t + step)?;
            let dn = evos[0].evolve_state(&rho, t - step)?;
            let rho_dot = (up.matrix() - dn.matrix()) / Complex64::new(2.0 * step, 0.0);
            let rho_q = QuantumQuantity::new(rho_t.matrix().clone())?;
            worst(&mut vn, matrix::max_abs_diff(&rho_dot, rho_q.lie(&h)?.matrix()));

            // Split equations: Ȧ = H₁ ◁ A and ρ̇ = ρ ◁ H₂(t).
            let evo = &evos[2];
            let a_dot = (evo.evolve_quantity(&a, t + step)?.matrix() - evo.evolve_quantity(&a, t - step)?.matrix())
                / Complex64::new(2.0 * step, 0.0);
            let a_t = evo.evolve_quantity(&a, t)?;
            worst(&mut qdot, matrix::max_abs_diff(&a_dot, h1.lie(&a_t)?.matrix()));
            let r_dot = (evo.evolve_state(&rho, t + step)?.matrix() - evo.evolve_state(&rho, t - step)?.matrix())
                / Complex64::new(2.0 * step, 0.0);
            let r_t = QuantumQuantity::new(evo.evolve_state(&rho, t)?.into_matrix())?;
            let h2_t = evo.evolve_quantity(splits[2].h2(), t)?;
            worst(&mut rdot, matrix::max_abs_diff(&r_dot, r_t.lie(&h2_t)?.matrix()));
            worst(&mut norm, (matrix::trace(r_t.matrix()) - Complex64::new(1.0, 0.0)).norm());
        }
        let b = random::hermitian_quantity(rng, 4, 1.0)?;
        let c = random::hermitian_quantity(rng, 4, 1.0)?;
        let cyc = rho.expectation(&a.lie(&b.lie(&c)?)?)?
            + rho.expectation(&b.lie(&c.lie(&a)?)?)?
            + rho.expectation(&c.lie(&a.lie(&b)?)?)?;
        worst(&mut jac, cyc.norm());
    }
    let mut checks = vec![
        Check::new("split.independence", "picture-equivalence", equiv, 1e-10),
        Check::exact("split.schrodinger_freezes_quantities", "schrodinger-picture", schro),
        Check::exact("split.heisenberg_freezes_state", "heisenberg-picture", heis),
        Check::new("split.interaction_matches", "interaction-picture", equiv, 1e-10),
        Check::new("split.quantity_equation", "gauge-split-dynamics", qdot, 1e-6),
        Check::new("split.state_equation", "gauge-split-dynamics", rdot, 1e-6),
        Check::new("split.normalization", "gauge-split-dynamics", norm, 1e-10),
        Check::new("ehrenfest.finite_difference", "ehrenfest-equation", ehr, 1e-6),
        Check::new("ehrenfest_picture.heisenberg_split", "ehrenfest-picture-dynamics", edyn, 1e-6),
        Check::new("expectation_bracket.jacobi", "expectation-lie-bracket", jac, 1e-12),
        Check::new("von_neumann.finite_difference", "von-neumann-equation", vn, 1e-6),
    ];

    let osc = Oscillator::new(40, 1.0, 1.0, 1.0)?;
    let (q, p, h) = (osc.position(), osc.momentum(), osc.hamiltonian());
    let alpha = Complex64::from_polar(rng.random_range(0.2..1.0), rng.random_range(0.0..std::f64::consts::TAU));
    let rho0 = osc.coherent_state(alpha)?;
    let evo = SplitEvolution::new(&GaugeSplit::schrodinger(&h)?)?;
    let (q0, p0) = osc.coherent_phase_point(alpha);
    let sigma0 = (osc.hbar() / (2.0 * osc.mass() * osc.omega())).sqrt();
    let (mut eqp, mut orbit, mut width, mut shift, mut closure) = (0.0, 0.0, 0.0, 0.0, 0.0);
    let m0 = MomentState::from_density(&rho0, std::slice::from_ref(&q), std::slice::from_ref(&p))?;
    let hq = QuadraticHamiltonian::oscillator(1, osc.mass(), osc.omega())?;
    for k in 0..=40 {
        let t = 0.25 * k as f64;
        let rho = evo.evolve_state(&rho0, t)?;
        let (mq, mp) = (rho.expectation(&q)?, rho.expectation(&p)?);
        worst(&mut eqp, (ehrenfest_rhs(&rho, &q, &h)? - mp / osc.mass()).norm());
        worst(&mut eqp, (ehrenfest_rhs(&rho, &p, &h)? + mq * osc.mass() * osc.omega().powi(2)).norm());
        worst(&mut orbit, (mq.re - (q0 * t.cos() + p0 * t.sin())).abs());
        worst(&mut width, (uncertain_value(&rho, &q)?.sigma - sigma0).abs());
        let full = MomentState::from_density(&rho, std::slice::from_ref(&q), std::slice::from_ref(&p))?;
        worst(&mut closure, evolve_moments_quadratic(&m0, &hq, t)?.max_abs_diff(&full));
    }
    for _ in 0..4 {
        let (s, t, u) = (rng.random_range(0.0..5.0), rng.random_range(0.0..5.0), rng.random_range(-5.0..5.0));
        worst(&mut shift, heisenberg_time_shift_residual(&rho0, &q, &h, s, t, u)?);
    }
    checks.extend([
        Check::new("oscillator.position_momentum", "ehrenfest-position-momentum", eqp, 1e-8),
        Check::new("oscillator.coherent_orbit", "coherent-classicality", orbit, 1e-6),
        Check::new("oscillator.coherent_width", "coherent-classicality", width, 1e-6),
        Check::new("oscillator.moment_closure", "moment-closure", closure, 1e-6),
        Check::new("oscillator.time_shift", "heisenberg-time-shift", shift, 1e-10),
    ]);
    Ok(checks)
}

fn uncertainty_suite(rng: &mut ChaCha8Rng) -> LabResult<Vec<Check>> {
    let (mut gup, mut robertson) = (0.0, 0.0);
    for k in 0..300 {
        let rho = if k % 2 == 0 { random::density_state(rng, 4)? } else { random::pure_state(rng, 4)? };
        let a = random::hermitian_quantity(rng, 4, 1.0)?;
        let b = random::hermitian_quantity(rng, 4, 1.0)?;
        worst(&mut gup, (uncertain_value(&rho, &a)?.sigma - sigma_centered(&rho, &a)?).abs());
        let n = QuantumQuantity::new(random::complex_matrix(rng, 4))?;
        worst(&mut gup, (uncertain_value(&rho, &n)?.sigma - sigma_centered(&rho, &n)?).abs());
        worst(&mut robertson, (-robertson_check(&rho, &a, &b)?.slack()).max(0.0));
    }
    let osc = Oscillator::new(40, 1.3, 0.7, 0.9)?;
    let ground = robertson_check(&osc.ground_state(), &osc.position(), &osc.momentum())?;
    let alpha = Complex64::new(0.6, -0.3);
    let coherent = osc.coherent_state(alpha)?;
    let lowering = uncertain_value(&coherent, &osc.annihilation())?;
    let nonherm = lowering.sigma.max((lowering.value - alpha).norm());

    let times = time_grid(0.0, 10.0, 40)?;
    let std_osc = Oscillator::new(40, 1.0, 1.0, 1.0)?;
    let split = GaugeSplit::schrodinger(&std_osc.hamiltonian())?;
    let traj = simulate(
        &std_osc.coherent_state(Complex64::new(0.8, 0.1))?,
        &split,
        &[("q".into(), std_osc.position())],
        &times,
    )?;
    let sigma0 = (0.5f64).sqrt();
    let tube = world_tube(&traj, &TubeComponents::Single(0), 1.0)?;
    let stationary = tube.halfwidth.iter().map(|w| (w - sigma0).abs()).fold(0.0, f64::max);
    let wide = world_tube(&traj, &TubeComponents::Single(0), 2.0)?;

    let significant = classify_significance(&UncertainValue::real(1.0, 1e-3)?, 10.0)? == Significance::Significant;
    let noise = classify_significance(&UncertainValue::real(1e-3, 1.0)?, 10.0)? == Significance::Noise;
    Ok(vec![
        Check::new("gup.variance_forms", "uncertainty-gup", gup, 1e-10),
        Check::new("gup.non_hermitian_lowering", "uncertainty-non-hermitian", nonherm, 1e-6),
        Check::new("robertson.random_instances", "robertson-relation", robertson, 1e-10),
        Check::new("heisenberg.ground_state", "heisenberg-relation", (ground.lhs - osc.hbar() / 2.0).abs(), 1e-9),
        Check::new("world_tube.coherent_width", "world-tube", stationary, 1e-6),
        Check::exact("world_tube.nesting", "world-tube", tube.contained_in(&wide)),
        Check::exact("significance.classes", "significance-principle", significant && noise),
    ])
}

fn random_model(rng: &mut ChaCha8Rng) -> LabResult<StochasticModel> {
    let n = rng.random_range(1..=10);
    let space = SampleSpace::new(n)?;
    let mut raw: Vec<f64> = (0..n).map(|_| if rng.random_bool(0.2) { 0.0 } else { rng.random_range(0.0..1.0) }).collect();
    if raw.iter().all(|&w| w == 0.0) {
        raw[0] = 1.0;
    }
    let sum: f64 = raw.iter().sum();
    Ok(StochasticModel::new(&space, raw.iter().map(|w| w / sum).collect())?)
}

fn lattice_variable(rng: &mut ChaCha8Rng, m: &StochasticModel) -> LabResult<RandomVariable> {
    let values = (0..m.space().size()).map(|_| rng.random_range(-4..=4) as f64 * 0.5).collect();
    Ok(RandomVariable::new(m.space(), values)?)
}

fn prob_suite(rng: &mut ChaCha8Rng) -> LabResult<Vec<Check>> {
    let mut e = [0.0f64; 7];
    let (mut cdf_ok, mut step, mut stieltjes, mut part, mut cond, mut bayes, mut product) =
        (true, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    for _ in 0..200 {
        let m = random_model(rng)?;
        let a = lattice_variable(rng, &m)?;
        let b = lattice_variable(rng, &m)?;
        let (al, be) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        worst(&mut e[0], axioms::normalization(&m)?);
        worst(&mut e[1], axioms::linearity(&m, &a, &b, al, be)?);
        worst(&mut e[2], axioms::positivity(&m, &a)?);
        worst(&mut e[3], axioms::definiteness(&m, &a)?);
        worst(&mut e[4], axioms::monotone_convergence(&m, &a, 0.5)?);
        worst(&mut e[5], axioms::square_definiteness(&m, &a)?);
        worst(&mut e[6], axioms::monotonicity(&m, &a, &b)?);
        cdf_ok &= axioms::cdf_laws(&m, &a)?;

        let mut jumps: Vec<f64> = (0..rng.random_range(0..=5)).map(|_| rng.random_range(-5..=5) as f64 * 0.5).collect();
        jumps.sort_by(f64::total_cmp);
        jumps.dedup();
        let levels = (0..=jumps.len()).map(|_| rng.random_range(-2.0..2.0)).collect();
        let f = StepFunction::new(jumps, levels)?;
        worst(&mut step, (m.step_expectation(&a, &f)? - m.composite_expectation(&a, &f)?).abs());

        // ⟨g(A)⟩ = Σ_x g(x) (F(x) − F(x⁻)) over the distinct values of A.
        let mut xs = a.values().to_vec();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let mut prev = 0.0;
        let mut sum = 0.0;
        for &x in &xs {
            let fx = m.cdf(&a, x)?;
            sum += x.sin() * (fx - prev);
            prev = fx;
        }
        worst(&mut stieltjes, (sum - m.expectation(&a.map(f64::sin)?)?).abs());

        let family: Vec<Statement> = xs.iter().map(|&x| a.equals(x)).collect();
        let (total, overlap) = axioms::partition(&m, &family)?;
        worst(&mut part, total.max(overlap));
        let s = a.at_most(0.0);
        worst(&mut part, (m.probability(&s)? + m.probability(&s.not())? - 1.0).abs());

        let bits: Vec<bool> = (0..m.space().size()).map(|_| rng.random_bool(0.5)).collect();
        let p = Statement::from_predicate(m.space(), |w| bits[w]);
        if let Ok(ce) = m.conditional_expectation(&b, p.as_variable()) {
            worst(&mut cond, (ce - m.conditioned(p.as_variable())?.expectation(&b)?).abs());
        }
        if let Ok(update) = m.bayes_update(&s, &p) {
            worst(&mut bayes, (update.posterior - m.conditional_probability(&s, &p)?).abs());
            worst(&mut product, update.product_rule_residual);
        }
    }

    let space = SampleSpace::new(6)?;
    let die = StochasticModel::uniform(&space);
    let n = RandomVariable::from_fn(&space, |w| (w + 1) as f64)?;
    let even = Statement::from_predicate(&space, |w| (w + 1) % 2 == 0);
    let die_ok = die.expectation(&n)? == 3.5
        && die.probability(&even)? == 0.5
        && die.conditional_probability(&n.equals(2.0), &even)? == 1.0 / 3.0;

    let data: Vec<f64> = (0..40).map(|_| rng.random_range(-3.0..3.0)).collect();
    let sample: Vec<usize> = (0..40).map(|_| rng.random_range(0..6)).collect();
    let from_sample = StochasticModel::from_sample(&space, &sample)?;
    let mean_gap = (sample_mean(&sample, &n)? - from_sample.expectation(&n)?).abs();
    let mut scdf: f64 = 0.0;
    for x in [-0.5, 0.5, 2.0, 3.0, 4.5, 7.0] {
        let direct = sample.iter().filter(|&&w| (w + 1) as f64 <= x).count() as f64 / sample.len() as f64;
        let values: Vec<f64> = sample.iter().map(|&w| (w + 1) as f64).collect();
        scdf = scdf.max((sample_cdf(&values, x)? - direct).abs()).max((from_sample.cdf(&n, x)? - direct).abs());
    }
    let (h, dx) = (0.5, 1e-3);
    let mut area = 0.0;
    let mut x = -4.0;
    while x < 4.0 {
        area += smoothed_density(&data, h, x + 0.5 * dx)? * dx;
        x += dx;
    }

    Ok(vec![
        Check::new("axiom.e1_normalization", "expectation-axioms", e[0], 1e-12),
        Check::new("axiom.e2_linearity", "expectation-axioms", e[1], 1e-12),
        Check::new("axiom.e3_positivity", "expectation-axioms", e[2], 0.0),
        Check::new("axiom.e4_definiteness", "expectation-axioms", e[3], 0.0),
        Check::new("axiom.e5_monotone_convergence", "expectation-axioms", e[4], 1e-12),
        Check::new("axiom.e6_square_definiteness", "expectation-axioms", e[5], 0.0),
        Check::new("axiom.e7_monotonicity", "expectation-axioms", e[6], 0.0),
        Check::new("statements.partition", "statements-probability", part, 1e-12),
        Check::exact("die.exact_values", "die-example", die_ok),
        Check::exact("cdf.laws_exact", "cdf-propositions", cdf_ok),
        Check::new("step.formula_vs_composition", "step-function-expectation", step, 1e-12),
        Check::new("stieltjes.jump_sum", "stieltjes-representation", stieltjes, 1e-12),
        Check::new("density.smoothed_mass", "densities", (area - 1.0).abs(), 1e-2),
        Check::new("sample.mean", "sample-mean", mean_gap, 1e-12),
        Check::new("sample.cdf", "sample-cdf", scdf, 1e-12),
        Check::new("conditional.restricted_model", "conditional-expectation", cond, 1e-12),
        Check::new("bayes.posterior", "bayes-theorem", bayes, 1e-12),
        Check::new("bayes.product_rule", "bayes-theorem", product, 1e-12),
    ])
}

fn lln_suite(rng: &mut ChaCha8Rng, seed: u64) -> LabResult<Vec<Check>> {
    let (mut ident, mut indep, mut mean, mut sigma, mut sum_var) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &d in &[2usize, 3] {
        for &n in &[1usize, 2, 4, 6] {
            let rho = random::density_state(rng, d)?;
            let a = random::hermitian_quantity(rng, d, 1.0)?;
            let ens = ProductEnsemble::new(rho, n)?;
            worst(&mut ident, ens.identical_residual(&a)?);
            worst(&mut indep, ens.independent_residual(&a)?);
            let out = lln_mean_quantity(&ens, &a)?;
            worst(&mut mean, out.mean_residual);
            worst(&mut sigma, out.sigma_residual);
            // Variance of the sum is N σ², the step behind σ/√N.
            let var_sum = out.mean.sigma.powi(2) * (n * n) as f64;
            worst(&mut sum_var, (var_sum - n as f64 * out.single.sigma.powi(2)).abs());
        }
    }

    let (mut qprob, mut proj, mut spectral, mut amp) = (0.0, 0.0, 0.0, 0.0);
    for _ in 0..20 {
        let rho = random::density_state(rng, 4)?;
        let a = random::hermitian_quantity(rng, 4, 1.0)?;
        let cuts = [-10.0, rng.random_range(-1.0..0.0), rng.random_range(0.0..1.0), 10.0];
        let events: Vec<QuantumStatement> = cuts.windows(2).map(|w| spectral_event(&a, w[0], w[1])).collect::<Result<_, _>>()?;
        let mut total = CMatrix::zeros(4, 4);
        for (i, e) in events.iter().enumerate() {
            let pm = e.quantity().matrix();
            total += pm;
            worst(&mut proj, matrix::max_abs_diff(&(pm * pm), pm).max(matrix::hermitian_deviation(pm)));
            let pr = q_probability(&rho, e.quantity())?;
            let u = uncertain_value(&rho, e.quantity())?;
            worst(&mut qprob, (u.sigma - (pr * (1.0 - pr)).max(0.0).sqrt()).abs());
            if !(0.0..=1.0).contains(&pr) {
                qprob = f64::INFINITY;
            }
            for f in &events[i + 1..] {
                worst(&mut spectral, matrix::max_abs(&(pm * f.quantity().matrix())));
            }
        }
        // Eigenvalues can sit on a cut only with probability zero.
        worst(&mut spectral, matrix::max_abs_diff(&total, &matrix::identity(4)));
        let phi = random::unit_vector(rng, 4);
        let psi = random::unit_vector(rng, 4);
        let rule = test_for_state(&phi, &psi)?;
        worst(&mut amp, (rule - test_for_state(&psi, &phi)?).abs());
        let pr = q_probability(&DensityState::from_pure(&psi)?, QuantumStatement::from_vector(&phi, 1.0)?.quantity())?;
        worst(&mut amp, (pr - rule).abs());
    }

    let trials = 10_000u64;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let phi = CVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
    let psi = CVector::from_vec(vec![Complex64::new(s, 0.0), Complex64::new(0.0, s)]);
    let quantum = relative_frequency(&DensityState::from_pure(&psi)?, &QuantumStatement::from_vector(&phi, 1.0)?, trials, seed)?;
    let mut checks = vec![
        Check::new("ensemble.identical", "lln-identical", ident, 1e-12),
        Check::new("ensemble.independent", "lln-independent", indep, 1e-12),
        Check::new("mean_quantity.expectation", "lln-mean", mean, 1e-12),
        Check::new("mean_quantity.sigma_over_sqrt_n", "lln-sigma-scaling", sigma, 1e-12),
        Check::new("mean_quantity.sum_variance", "lln-sum-variance", sum_var, 1e-12),
        Check::new("statement.projector", "projector-statements", proj, 1e-10),
        Check::new("statement.probability_sigma", "q-probability", qprob, 1e-10),
        Check::new("spectral.orthogonal_partition", "spectral-projector", spectral, 1e-10),
        Check::new("amplitude.squared_rule", "squared-amplitude", amp, 1e-12),
    ];
    for (label, result) in [
        ("frequency.p_0.1", bernoulli_frequency(0.1, trials, seed)?),
        ("frequency.p_0.5", bernoulli_frequency(0.5, trials, seed)?),
        ("frequency.amplitude_half", quantum),
    ] {
        let p = result.p_theory;
        let bound = result.k * (p * (1.0 - p) / trials as f64).sqrt();
        checks.push(Check::new(label, "relative-frequency", (result.p_hat - p).abs(), bound));
    }
    let repeat = bernoulli_frequency(0.5, trials, seed)? == bernoulli_frequency(0.5, trials, seed)?;
    checks.push(Check::exact("frequency.seeded_repeat", "statistical-safeguard", repeat));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        for s in Suite::EACH {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn pass_flag_follows_residual() {
        assert!(Check::new("a", "r", 1e-13, 1e-12).pass);
        assert!(!Check::new("a", "r", 2e-12, 1e-12).pass);
        assert!(!Check::new("a", "r", f64::NAN, 1e-12).pass);
        assert!(Check::exact("a", "r", true).pass);
        assert!(!Check::exact("a", "r", false).pass);
    }

    #[test]
    fn worst_treats_nan_as_failure() {
        let mut acc = 0.0;
        worst(&mut acc, f64::NAN);
        assert_eq!(acc, f64::INFINITY);
    }
}
