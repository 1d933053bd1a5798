use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thermal_core::dynamics::{ehrenfest_rhs, heisenberg_time_shift_residual, GaugeSplit, SplitEvolution};
use thermal_core::matrix::{self, CMatrix};
use thermal_core::moments::{evolve_moments_quadratic, MomentState, QuadraticHamiltonian};
use thermal_core::oscillator::{check_truncation, Oscillator};
use thermal_core::quantum::QuantumQuantity;
use thermal_core::random;
use thermal_core::state::DensityState;

/// Independent propagator: Taylor series of `exp(-iHt)` with repeated halving.
fn taylor_propagator(h: &CMatrix, t: f64) -> CMatrix {
    let n = h.nrows();
    let mut squarings = 0;
    let mut scaled = h * Complex64::new(0.0, -t);
    while matrix::max_abs(&scaled) * n as f64 > 0.25 {
        scaled /= Complex64::new(2.0, 0.0);
        squarings += 1;
    }
    let mut term = matrix::identity(n);
    let mut sum = term.clone();
    for k in 1..30 {
        term = &term * &scaled / Complex64::new(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

fn instance(seed: u64, dim: usize) -> (QuantumQuantity, DensityState, QuantumQuantity, QuantumQuantity) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = random::hermitian_quantity(&mut rng, dim, 1.0).unwrap();
    let rho = random::density_state(&mut rng, dim).unwrap();
    let a = random::hermitian_quantity(&mut rng, dim, 1.0).unwrap();
    let h1 = random::hermitian_quantity(&mut rng, dim, 1.0).unwrap();
    (h, rho, a, h1)
}

fn expectation_under(split: &GaugeSplit, rho: &DensityState, a: &QuantumQuantity, t: f64) -> Complex64 {
    let evo = SplitEvolution::new(split).unwrap();
    let rho_t = evo.evolve_state(rho, t).unwrap();
    rho_t.expectation(&evo.evolve_quantity(a, t).unwrap()).unwrap()
}

#[test]
fn all_splits_agree_with_taylor_oracle() {
    for seed in 0..50 {
        let (h, rho, a, h1) = instance(seed, 4);
        let splits = [
            GaugeSplit::schrodinger(&h).unwrap(),
            GaugeSplit::heisenberg(&h).unwrap(),
            GaugeSplit::interaction(&h, &h1).unwrap(),
        ];
        for k in 0..=20 {
            let t = 0.5 * k as f64;
            let u = taylor_propagator(h.matrix(), t);
            let oracle = matrix::trace(&(&u * rho.matrix() * u.adjoint() * a.matrix()));
            for split in &splits {
                let got = expectation_under(split, &rho, &a, t);
                assert!((got - oracle).norm() <= 1e-10, "seed {seed} t {t}: {got} vs {oracle}");
            }
        }
    }
}

#[test]
fn finite_difference_rate_matches_bracket() {
    let step = 1e-4;
    for seed in 0..50 {
        let (h, rho, a, h1) = instance(seed, 4);
        let split = GaugeSplit::interaction(&h, &h1).unwrap();
        for &t in &[0.0, 1.3, 4.7, 9.9] {
            let up = expectation_under(&split, &rho, &a, t + step);
            let dn = expectation_under(&split, &rho, &a, t - step);
            let fd = (up - dn) / (2.0 * step);
            let schrodinger = SplitEvolution::new(&GaugeSplit::schrodinger(&h).unwrap()).unwrap();
            let rho_t = schrodinger.evolve_state(&rho, t).unwrap();
            let rate = ehrenfest_rhs(&rho_t, &a, &h).unwrap();
            assert!((fd - rate).norm() <= 1e-6, "seed {seed} t {t}: {fd} vs {rate}");
        }
    }
}

#[test]
fn oscillator_ehrenfest_relations() {
    let osc = Oscillator::new(40, 1.7, 0.8, 0.6).unwrap();
    let (q, p, h) = (osc.position(), osc.momentum(), osc.hamiltonian());
    let m = osc.mass();
    let w = osc.omega();
    let rho0 = osc.coherent_state(Complex64::new(0.6, -0.5)).unwrap();
    let split = GaugeSplit::schrodinger(&h).unwrap();
    let evo = SplitEvolution::new(&split).unwrap();
    for k in 0..=10 {
        let rho = evo.evolve_state(&rho0, 0.7 * k as f64).unwrap();
        let dq = ehrenfest_rhs(&rho, &q, &h).unwrap();
        let dp = ehrenfest_rhs(&rho, &p, &h).unwrap();
        let mean_q = rho.expectation(&q).unwrap();
        let mean_p = rho.expectation(&p).unwrap();
        assert!((dq - mean_p / m).norm() <= 1e-8);
        assert!((dp + mean_q * (m * w * w)).norm() <= 1e-8);
    }
}

#[test]
fn coherent_states_follow_classical_orbits() {
    let osc = Oscillator::new(40, 1.0, 1.0, 1.0).unwrap();
    let (q, p) = (osc.position(), osc.momentum());
    let split = GaugeSplit::schrodinger(&osc.hamiltonian()).unwrap();
    let evo = SplitEvolution::new(&split).unwrap();
    let sigma0 = (osc.hbar() / (2.0 * osc.mass() * osc.omega())).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..8 {
        let r: f64 = rng.random_range(0.0..=1.0);
        let phase: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let alpha = Complex64::from_polar(r, phase);
        let rho0 = osc.coherent_state(alpha).unwrap();
        let (q0, p0) = osc.coherent_phase_point(alpha);
        for k in 0..=40 {
            let t = 0.25 * k as f64;
            let rho = evo.evolve_state(&rho0, t).unwrap();
            let classical = q0 * t.cos() + p0 * t.sin();
            let mean = rho.expectation(&q).unwrap();
            assert!((mean.re - classical).abs() <= 1e-6 && mean.im.abs() <= 1e-12);
            let u = thermal_core::uncertainty::uncertain_value(&rho, &q).unwrap();
            assert!((u.sigma - sigma0).abs() <= 1e-6);
            let _ = rho.expectation(&p).unwrap();
        }
    }
}

#[test]
fn moment_closure_matches_fock_evolution() {
    let osc = Oscillator::new(40, 1.3, 0.9, 1.0).unwrap();
    let (q, p) = (osc.position(), osc.momentum());
    let h_poly = QuadraticHamiltonian::oscillator(1, osc.mass(), osc.omega()).unwrap();
    let split = GaugeSplit::schrodinger(&osc.hamiltonian()).unwrap();
    let evo = SplitEvolution::new(&split).unwrap();
    let a = osc.coherent_state(Complex64::new(0.7, 0.2)).unwrap();
    let b = osc.coherent_state(Complex64::new(-0.3, 0.5)).unwrap();
    let mixture = DensityState::new((a.matrix() * Complex64::new(0.4, 0.0)) + (b.matrix() * Complex64::new(0.6, 0.0))).unwrap();
    check_truncation(&mixture).unwrap();
    let m0 = MomentState::from_density(&mixture, std::slice::from_ref(&q), std::slice::from_ref(&p)).unwrap();
    for k in 0..=12 {
        let t = 0.6 * k as f64;
        let closed = evolve_moments_quadratic(&m0, &h_poly, t).unwrap();
        let full = MomentState::from_density(&evo.evolve_state(&mixture, t).unwrap(), std::slice::from_ref(&q), std::slice::from_ref(&p)).unwrap();
        assert!(closed.max_abs_diff(&full) <= 1e-8, "t {t}: {}", closed.max_abs_diff(&full));
    }
}

#[test]
fn quadratic_operator_matches_fock_hamiltonian() {
    let osc = Oscillator::new(30, 2.0, 0.5, 1.0).unwrap();
    let h_poly = QuadraticHamiltonian::oscillator(1, 2.0, 0.5).unwrap();
    let op = h_poly.to_operator(&[osc.position()], &[osc.momentum()]).unwrap();
    let fock = osc.hamiltonian();
    for i in 0..29 {
        for j in 0..29 {
            assert!((op.matrix()[(i, j)] - fock.matrix()[(i, j)]).norm() <= 1e-12);
        }
    }
}

#[test]
fn time_shift_for_oscillator_position() {
    let osc = Oscillator::new(40, 1.0, 1.0, 1.0).unwrap();
    let rho = osc.coherent_state(Complex64::new(0.5, 0.5)).unwrap();
    let q = osc.position();
    let h = osc.hamiltonian();
    for &(s, t, u) in &[(0.0, 1.0, 2.0), (2.5, 0.3, -1.0), (4.0, 4.0, 0.0), (1.1, 7.3, 3.3)] {
        let r = heisenberg_time_shift_residual(&rho, &q, &h, s, t, u).unwrap();
        assert!(r <= 1e-10, "{s} {t} {u}: {r}");
    }
}

#[test]
fn noncommuting_split_state_obeys_frame_carried_generator() {
    let (h, rho, _, h1) = instance(77, 4);
    let split = GaugeSplit::interaction(&h, &h1).unwrap();
    let evo = SplitEvolution::new(&split).unwrap();
    let h2 = split.h2();
    let quantities = SplitEvolution::new(&GaugeSplit::heisenberg(&h1).unwrap()).unwrap();
    let step = 1e-4;
    for &t in &[0.4, 2.0, 6.5] {
        let up = evo.evolve_state(&rho, t + step).unwrap();
        let dn = evo.evolve_state(&rho, t - step).unwrap();
        let fd = (up.matrix() - dn.matrix()) / Complex64::new(2.0 * step, 0.0);
        let rho_t = QuantumQuantity::new(evo.evolve_state(&rho, t).unwrap().into_matrix()).unwrap();
        let h2_t = quantities.evolve_quantity(h2, t).unwrap();
        let rhs = rho_t.lie(&h2_t).unwrap();
        assert!(matrix::max_abs_diff(&fd, rhs.matrix()) <= 1e-6);
    }
}
