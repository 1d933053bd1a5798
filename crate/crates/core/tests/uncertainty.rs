use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use thermal_core::dynamics::GaugeSplit;
use thermal_core::matrix::{self, CMatrix};
use thermal_core::oscillator::Oscillator;
use thermal_core::quantum::QuantumQuantity;
use thermal_core::random;
use thermal_core::state::DensityState;
use thermal_core::trajectory::{simulate, time_grid};
use thermal_core::uncertainty::{robertson_check, sigma_centered, uncertain_value, world_tube, TubeComponents};

#[test]
fn robertson_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = f64::INFINITY;
    for k in 0..1000 {
        let rho = if k % 2 == 0 {
            random::density_state(&mut rng, 4).unwrap()
        } else {
            random::pure_state(&mut rng, 4).unwrap()
        };
        let a = random::hermitian_quantity(&mut rng, 4, 1.0).unwrap();
        let b = random::hermitian_quantity(&mut rng, 4, 1.0).unwrap();
        let r = robertson_check(&rho, &a, &b).unwrap();
        assert!(r.holds);
        worst = worst.min(r.slack());
    }
    assert!(worst >= -1e-10);
}

#[test]
fn oscillator_ground_state_saturates() {
    for &(m, w, hbar) in &[(1.0, 1.0, 1.0), (2.5, 0.4, 1.0), (0.7, 3.0, 0.3)] {
        let osc = Oscillator::new(40, m, w, hbar).unwrap();
        let ground = osc.ground_state();
        let r = robertson_check(&ground, &osc.position(), &osc.momentum()).unwrap();
        assert!((r.lhs - hbar / 2.0).abs() <= 1e-9);
        assert!((r.rhs - hbar / 2.0).abs() <= 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn variance_forms_agree(seed in any::<u64>(), dim in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random::density_state(&mut rng, dim).unwrap();
        let a = QuantumQuantity::new(random::complex_matrix(&mut rng, dim)).unwrap();
        let u = uncertain_value(&rho, &a).unwrap();
        let c = sigma_centered(&rho, &a).unwrap();
        prop_assert!((u.sigma - c).abs() <= 1e-10);
    }

    #[test]
    fn tubes_nest_in_kappa(seed in any::<u64>(), k1 in 0.0f64..3.0, extra in 0.0f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random::hermitian_quantity(&mut rng, 3, 1.0).unwrap();
        let q = random::hermitian_quantity(&mut rng, 3, 1.0).unwrap();
        let rho = random::density_state(&mut rng, 3).unwrap();
        let times = time_grid(0.0, 5.0, 20).unwrap();
        let traj = simulate(&rho, &GaugeSplit::schrodinger(&h).unwrap(), &[("q".into(), q)], &times).unwrap();
        let inner = world_tube(&traj, &TubeComponents::Single(0), k1).unwrap();
        let outer = world_tube(&traj, &TubeComponents::Single(0), k1 + extra).unwrap();
        prop_assert!(inner.contained_in(&outer));
    }
}

/// Free Gaussian packet on a position lattice, compared with the continuum
/// spreading law `σ(t)² = σ₀² + (ħt / 2mσ₀)²`.
#[test]
fn free_packet_tube_matches_spreading_law() {
    let n = 241;
    let dx = 0.2;
    let sigma0 = 1.0;
    let (hbar, mass) = (1.0, 1.0);
    let x = |i: usize| (i as f64 - (n - 1) as f64 / 2.0) * dx;
    let mut lap = CMatrix::zeros(n, n);
    let c = hbar * hbar / (2.0 * mass * dx * dx);
    for i in 0..n {
        lap[(i, i)] = Complex64::new(2.0 * c, 0.0);
        if i + 1 < n {
            lap[(i, i + 1)] = Complex64::new(-c, 0.0);
            lap[(i + 1, i)] = Complex64::new(-c, 0.0);
        }
    }
    let h = QuantumQuantity::with_hbar(lap, hbar).unwrap();
    let position = QuantumQuantity::with_hbar(
        matrix::from_real_diagonal(&(0..n).map(x).collect::<Vec<_>>()),
        hbar,
    )
    .unwrap();
    let psi = thermal_core::matrix::CVector::from_fn(n, |i, _| {
        Complex64::new((-x(i) * x(i) / (4.0 * sigma0 * sigma0)).exp(), 0.0)
    });
    let rho = DensityState::from_pure(&psi).unwrap();
    let times = time_grid(0.0, 3.0, 12).unwrap();
    let split = GaugeSplit::schrodinger(&h).unwrap();
    let traj = simulate(&rho, &split, &[("q".into(), position)], &times).unwrap();
    let kappa = 2.0;
    let tube = world_tube(&traj, &TubeComponents::Single(0), kappa).unwrap();
    for (i, &t) in tube.times.iter().enumerate() {
        let spread = (sigma0 * sigma0 + (hbar * t / (2.0 * mass * sigma0)).powi(2)).sqrt();
        assert!((tube.halfwidth[i] - kappa * spread).abs() <= 5e-3 * kappa * spread, "t {t}: {} vs {}", tube.halfwidth[i], kappa * spread);
        assert!(tube.center[i][0].abs() <= 1e-10);
    }
    // Widths grow monotonically for a free packet.
    assert!(tube.halfwidth.windows(2).all(|w| w[1] >= w[0]));
}
