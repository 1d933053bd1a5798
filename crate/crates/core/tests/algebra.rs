use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use thermal_core::classical::{rational, ClassicalQuantity};
use thermal_core::envelope::GaussianEnvelopeQuantity;
use thermal_core::gaussian::GaussianPhaseState;
use thermal_core::matrix::{self, CMatrix};
use thermal_core::quantum::QuantumQuantity;
use thermal_core::random;

fn quantum_triple(seed: u64, dim: usize, hbar: f64) -> [QuantumQuantity; 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut next = || QuantumQuantity::with_hbar(random::complex_matrix(&mut rng, dim), hbar).unwrap();
    [next(), next(), next()]
}

fn residual(a: &QuantumQuantity, b: &QuantumQuantity) -> f64 {
    matrix::max_abs_diff(a.matrix(), b.matrix())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn quantum_lie_axioms(seed in any::<u64>(), dim in 1usize..=8, hbar in 0.5f64..2.0) {
        let [a, b, c] = quantum_triple(seed, dim, hbar);
        let ab = a.lie(&b).unwrap();
        let ba = b.lie(&a).unwrap();
        prop_assert!(residual(&ab, &-&ba) <= 1e-12);

        // A ◁ (BC) = (A ◁ B)C + B(A ◁ C)
        let lhs = a.lie(&(&b * &c)).unwrap();
        let rhs = &(&ab * &c) + &(&b * &a.lie(&c).unwrap());
        prop_assert!(residual(&lhs, &rhs) <= 1e-12);

        let jacobi = &(&a.lie(&b.lie(&c).unwrap()).unwrap() + &b.lie(&c.lie(&a).unwrap()).unwrap())
            + &c.lie(&ab).unwrap();
        prop_assert!(matrix::max_abs(jacobi.matrix()) <= 1e-12);

        prop_assert!(ab.integral().norm() <= 1e-12);

        // ∫(A ◁ B)C = ∫A(B ◁ C)
        let left = (&ab * &c).integral();
        let right = (&a * &b.lie(&c).unwrap()).integral();
        prop_assert!((left - right).norm() <= 1e-12);
    }

    #[test]
    fn quantum_bracket_matches_commutator_oracle(seed in any::<u64>(), dim in 1usize..=6) {
        let [a, b, _] = quantum_triple(seed, dim, 1.0);
        let (x, y) = (a.matrix(), b.matrix());
        let mut oracle = CMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = Complex64::zero();
                for k in 0..dim {
                    acc += x[(i, k)] * y[(k, j)] - y[(i, k)] * x[(k, j)];
                }
                oracle[(i, j)] = Complex64::i() * acc;
            }
        }
        prop_assert!(matrix::max_abs_diff(a.lie(&b).unwrap().matrix(), &oracle) <= 1e-13);
    }

    #[test]
    fn hermitian_pairs_close_under_bracket(seed in any::<u64>(), dim in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random::hermitian_quantity(&mut rng, dim, 1.0).unwrap();
        let b = random::hermitian_quantity(&mut rng, dim, 1.0).unwrap();
        prop_assert!(a.lie(&b).unwrap().hermitian_deviation() <= 1e-13);
    }

    #[test]
    fn classical_lie_axioms_exact(seed in any::<u64>(), dof in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random::polynomial(&mut rng, dof, 4, 4).unwrap();
        let b = random::polynomial(&mut rng, dof, 4, 4).unwrap();
        let c = random::polynomial(&mut rng, dof, 4, 4).unwrap();
        let ab = a.lie(&b).unwrap();
        prop_assert_eq!(ab.try_add(&b.lie(&a).unwrap()).unwrap(), ClassicalQuantity::zero(dof));

        let lhs = a.lie(&b.try_mul(&c).unwrap()).unwrap();
        let rhs = ab.try_mul(&c).unwrap().try_add(&b.try_mul(&a.lie(&c).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);

        let jacobi = a.lie(&b.lie(&c).unwrap()).unwrap()
            .try_add(&b.lie(&c.lie(&a).unwrap()).unwrap()).unwrap()
            .try_add(&c.lie(&ab).unwrap()).unwrap();
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn enveloped_integrals_exact(seed in any::<u64>(), dof in 1usize..=2, ka in 1u32..=2, kb in 1u32..=2, kc in 1u32..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |k| GaussianEnvelopeQuantity::with_width(random::polynomial(&mut rng, dof, 4, 3).unwrap(), k).unwrap();
        let (a, b, c) = (draw(ka), draw(kb), draw(kc));
        prop_assert!(a.lie(&b).unwrap().integral_exact().is_zero());
        let left = a.lie(&b).unwrap().try_mul(&c).unwrap().integral_exact();
        let right = a.try_mul(&b.lie(&c).unwrap()).unwrap().integral_exact();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn classical_bracket_matches_finite_differences(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random::polynomial(&mut rng, 1, 3, 4).unwrap();
        let b = random::polynomial(&mut rng, 1, 3, 4).unwrap();
        let z = [0.3, -0.7];
        let h = 1e-5;
        let d = |f: &ClassicalQuantity, i: usize| {
            let mut up = z;
            let mut dn = z;
            up[i] += h;
            dn[i] -= h;
            (f.evaluate(&up).unwrap() - f.evaluate(&dn).unwrap()) / (2.0 * h)
        };
        let oracle = d(&a, 1) * d(&b, 0) - d(&b, 1) * d(&a, 0);
        let got = a.lie(&b).unwrap().evaluate(&z).unwrap();
        prop_assert!((got - oracle).abs() <= 1e-6 * (1.0 + oracle.abs()));
    }
}

#[test]
fn canonical_pair_in_both_realizations() {
    let q = ClassicalQuantity::q(1, 0).unwrap();
    let p = ClassicalQuantity::p(1, 0).unwrap();
    assert_eq!(q.lie(&p).unwrap(), ClassicalQuantity::constant(1, rational(-1, 1)));

    // On a truncated oscillator the identity survives away from the cutoff.
    let osc = thermal_core::oscillator::Oscillator::new(40, 1.0, 1.0, 1.0).unwrap();
    let bracket = osc.position().lie(&osc.momentum()).unwrap();
    for i in 0..39 {
        for j in 0..39 {
            let want = if i == j { -1.0 } else { 0.0 };
            assert!((bracket.matrix()[(i, j)] - Complex64::new(want, 0.0)).norm() <= 1e-12);
        }
    }
}

/// Trapezoid rule on `[-L, L]^2` for one degree of freedom.
fn quadrature_1dof(f: &GaussianEnvelopeQuantity) -> f64 {
    let n = 801;
    let l = 12.0;
    let h = 2.0 * l / (n - 1) as f64;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            let z = [-l + h * i as f64, -l + h * j as f64];
            acc += f.evaluate(&z).unwrap();
        }
    }
    acc * h * h
}

#[test]
fn envelope_integral_matches_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 1..=3 {
        let poly = random::polynomial(&mut rng, 1, 4, 4).unwrap();
        let f = GaussianEnvelopeQuantity::with_width(poly, k).unwrap();
        let oracle = quadrature_1dof(&f);
        assert!((f.integral() - oracle).abs() <= 1e-9 * (1.0 + oracle.abs()), "{} vs {}", f.integral(), oracle);
    }
}

/// Trapezoid oracle for `⟨A⟩` under a correlated two-dimensional Gaussian.
fn gaussian_quadrature(mean: [f64; 2], cov: [[f64; 2]; 2], a: &ClassicalQuantity) -> f64 {
    let det = cov[0][0] * cov[1][1] - cov[0][1] * cov[1][0];
    let inv = [[cov[1][1] / det, -cov[0][1] / det], [-cov[1][0] / det, cov[0][0] / det]];
    let norm = 1.0 / (2.0 * std::f64::consts::PI * det.sqrt());
    let n = 601;
    let l = 10.0;
    let h = 2.0 * l / (n - 1) as f64;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            let dx = [-l + h * i as f64, -l + h * j as f64];
            let quad = dx[0] * (inv[0][0] * dx[0] + inv[0][1] * dx[1]) + dx[1] * (inv[1][0] * dx[0] + inv[1][1] * dx[1]);
            let z = [mean[0] + dx[0], mean[1] + dx[1]];
            acc += a.evaluate(&z).unwrap() * (-0.5 * quad).exp();
        }
    }
    acc * norm * h * h
}

#[test]
fn gaussian_moments_match_quadrature() {
    let mean = [0.4, -1.1];
    let cov = [[1.3, 0.4], [0.4, 0.7]];
    let state = GaussianPhaseState::new(
        mean.to_vec(),
        nalgebra::DMatrix::from_row_slice(2, 2, &[cov[0][0], cov[0][1], cov[1][0], cov[1][1]]),
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..6 {
        let a = random::polynomial(&mut rng, 1, 4, 5).unwrap();
        let oracle = gaussian_quadrature(mean, cov, &a);
        let got = state.expectation(&a).unwrap();
        assert!((got - oracle).abs() <= 1e-9 * (1.0 + oracle.abs()), "{got} vs {oracle}");
    }
    // ⟨q²⟩ = σ_qq + μ_q²
    let q2 = ClassicalQuantity::monomial(1, vec![2, 0], BigRational::one()).unwrap();
    assert!((state.expectation(&q2).unwrap() - (1.3 + 0.16)).abs() < 1e-14);
}

#[test]
fn exact_rational_integrals_are_integral_coefficients_scaled() {
    // ∫ q⁴ e^{-|z|²/2} = 3 (2π) for one degree of freedom.
    let q4 = ClassicalQuantity::monomial(1, vec![4, 0], BigRational::one()).unwrap();
    let f = GaussianEnvelopeQuantity::standard(q4);
    assert_eq!(f.integral_exact(), BigRational::from_integer(BigInt::from(3)));
}
