//! Property tests for the norm and entropy invariants: homogeneity, triangle
//! inequality, lattice monotonicity, rearrangement invariance, membership
//! regularity, and the quantum counterparts.

use std::sync::Arc;

use proptest::prelude::*;

use orlicz_kit::classical::{
    luxemburg_norm, luxemburg_norm_steps, rearrange, MeasureSpace, SampledDensity,
};
use orlicz_kit::entropy::{h_epsilon, membership_check, truncated_entropy};
use orlicz_kit::quantum::{regularized_entropy, sequence_orlicz_norm, HermitianOperator, SingularSequence};
use orlicz_kit::young::catalog;

fn weighted_density() -> impl Strategy<Value = SampledDensity> {
    (1usize..30).prop_flat_map(|n| {
        (
            prop::collection::vec(0.01f64..2.0, n),
            prop::collection::vec(-4.0f64..4.0, n),
        )
            .prop_map(|(weights, values)| {
                let space = MeasureSpace::new(
                    weights
                        .into_iter()
                        .enumerate()
                        .map(|(i, w)| (i.to_string(), w))
                        .collect(),
                )
                .unwrap();
                SampledDensity::new(space, values).unwrap()
            })
    })
}

fn paired_densities() -> impl Strategy<Value = (SampledDensity, SampledDensity)> {
    (1usize..30).prop_flat_map(|n| {
        (
            prop::collection::vec(0.01f64..2.0, n),
            prop::collection::vec(-4.0f64..4.0, n),
            prop::collection::vec(-4.0f64..4.0, n),
        )
            .prop_map(|(weights, a, b)| {
                let space: Arc<MeasureSpace> = MeasureSpace::new(
                    weights
                        .into_iter()
                        .enumerate()
                        .map(|(i, w)| (i.to_string(), w))
                        .collect(),
                )
                .unwrap();
                (
                    SampledDensity::new(space.clone(), a).unwrap(),
                    SampledDensity::new(space, b).unwrap(),
                )
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn luxemburg_is_homogeneous(f in weighted_density(), c in -5.0f64..5.0) {
        prop_assume!(!f.is_zero() && c != 0.0);
        let psi = catalog::x_log1p();
        let base = luxemburg_norm(&f, &psi).unwrap().value;
        let scaled = luxemburg_norm(&f.scaled(c), &psi).unwrap().value;
        let expected = c.abs() * base;
        prop_assert!((scaled - expected).abs() <= 1e-9 * expected.max(1e-12),
            "{scaled} vs {expected}");
    }

    #[test]
    fn luxemburg_triangle_inequality((f, g) in paired_densities()) {
        let psi = catalog::cosh1();
        let sum = f.zip_map(&g, |a, b| a + b).unwrap();
        let nf = luxemburg_norm(&f, &psi).unwrap().value;
        let ng = luxemburg_norm(&g, &psi).unwrap().value;
        let ns = luxemburg_norm(&sum, &psi).unwrap().value;
        prop_assert!(ns <= (nf + ng) * (1.0 + 1e-9) + 1e-12, "{ns} > {nf} + {ng}");
    }

    #[test]
    fn luxemburg_is_monotone((g, h) in paired_densities()) {
        // |f| <= |g| cellwise forces the norms to order the same way
        let psi = catalog::x_log1p();
        let f = g.zip_map(&h, |gv, hv| gv * (hv.abs() / 4.0).min(1.0)).unwrap();
        let nf = luxemburg_norm(&f, &psi).unwrap().value;
        let ng = luxemburg_norm(&g, &psi).unwrap().value;
        prop_assert!(nf <= ng * (1.0 + 1e-9) + 1e-12, "{nf} > {ng}");
    }

    #[test]
    fn luxemburg_is_rearrangement_invariant(f in weighted_density()) {
        let psi = catalog::cosh1();
        let direct = luxemburg_norm(&f, &psi).unwrap().value;
        let via_steps = luxemburg_norm_steps(&rearrange(&f), &psi).unwrap().value;
        prop_assert!((direct - via_steps).abs() <= 1e-9 * direct.max(1e-12),
            "{direct} vs {via_steps}");
    }

    #[test]
    fn delta2_gauge_membership_is_scale_free(f in weighted_density()) {
        // for a globally doubling gauge, the lambda-free and lambda-dependent
        // membership tests agree at every truncation
        let psi = catalog::x_log1p();
        let lambda_free = f.modular(&psi).is_finite();
        let lambda_dependent = [8.0, 1.0, 1e-3].iter().any(|&lam| f.modular_scaled(&psi, lam).is_finite());
        prop_assert_eq!(lambda_free, lambda_dependent);
    }

    #[test]
    fn h_plus_below_h_eps(f in weighted_density(), eps in 1e-6f64..2.0) {
        let f = f.map(f64::abs).unwrap();
        let h_plus = f.weighted_sum(|v| if v == 0.0 { 0.0 } else { v * v.ln() });
        let h_eps = h_epsilon(&f, eps).unwrap().value;
        prop_assert!(h_plus <= h_eps + 1e-12 * h_eps.abs().max(1.0));
    }

    #[test]
    fn truncated_entropy_above_mass_bound(f in weighted_density(), eps in 1e-4f64..1.0) {
        let t = truncated_entropy(&f, eps).unwrap();
        prop_assert!(t.value.is_finite());
        prop_assert!(t.value >= -t.mass / std::f64::consts::E - 1e-12);
    }

    #[test]
    fn membership_forces_finite_h_eps(f in weighted_density(), eps in 1e-4f64..1.0) {
        let f = f.map(f64::abs).unwrap();
        let m = membership_check(&f);
        let h = h_epsilon(&f, eps).unwrap();
        prop_assert_eq!(m.member, h.member);
        if m.member {
            prop_assert!(h.value.is_finite());
        }
    }

    #[test]
    fn sequence_norm_equals_unit_weight_gauge(mut values in prop::collection::vec(0.0f64..3.0, 1..15)) {
        values.sort_by(|a, b| b.total_cmp(a));
        let a = SingularSequence::new(values.clone()).unwrap();
        let space = MeasureSpace::unit(values.len());
        let f = SampledDensity::new(space, values).unwrap();
        let psi = catalog::x_log1p();
        let seq = sequence_orlicz_norm(&a, &psi).unwrap().value;
        let cls = luxemburg_norm(&f, &psi).unwrap().value;
        prop_assert_eq!(seq, cls);
    }

    #[test]
    fn regularized_entropy_monotone_in_eps(mut values in prop::collection::vec(0.01f64..1.0, 2..8)) {
        let total: f64 = values.iter().sum();
        for v in values.iter_mut() {
            *v /= total;
        }
        let rho = HermitianOperator::from_diagonal(&values).unwrap();
        let ladder = [1.0, 0.3, 0.1, 0.01, 1e-4];
        let s: Vec<f64> = ladder.iter().map(|&e| regularized_entropy(&rho, e).unwrap()).collect();
        for w in s.windows(2) {
            prop_assert!(w[0] <= w[1] + 1e-13);
        }
    }

    #[test]
    fn youngs_inequality_for_quadrature_conjugate(x in 0.0f64..5.0, y in 0.0f64..5.0) {
        // the numeric-path conjugate (no closed form) still satisfies the
        // inequality
        let psi = catalog::x_log1p();
        let phi = psi.complementary_numeric();
        prop_assert!(x * y <= psi.value(x) + phi.value(y) + 1e-9);
    }
}
