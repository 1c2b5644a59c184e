use proptest::prelude::*;
use zerodist_core::measures::{ks_statistic, EmpiricalMeasure, LimitMeasure};
use zerodist_core::phifield::{dist_to_cut, phi, scaled_phi};
use zerodist_core::toeplitz::{qn_at_zero, qn_at_zero_recurrence};
use zerodist_core::zeros::ZeroCascade;
use zerodist_core::{CoefficientFamily, Complex64};

fn off_cut() -> impl Strategy<Value = Complex64> {
    (-20.0..20.0f64, -20.0..20.0f64)
        .prop_map(|(re, im)| Complex64::new(re, im))
        .prop_filter("near the cut", |z| dist_to_cut(*z) > 1e-3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn phi_solves_the_cubic(z in off_cut()) {
        let p = phi(z).unwrap().phi;
        let lhs = z * p;
        let rhs = (Complex64::new(1.0, 0.0) + p * (4.0 / 27.0)).powi(3);
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
    }

    #[test]
    fn phi_is_conjugate_symmetric(z in off_cut()) {
        let a = phi(z).unwrap().phi;
        let b = phi(z.conj()).unwrap().phi;
        prop_assert!((a.conj() - b).norm() <= 1e-12 * (1.0 + a.norm()));
    }

    #[test]
    fn scaled_phi_matches_rescaling(z in off_cut(), alpha in 0.1..8.0f64) {
        let w = z * alpha;
        let a = scaled_phi(alpha, w).unwrap();
        let b = phi(z).unwrap().phi / alpha;
        prop_assert!((a - b).norm() <= 1e-11 * (1.0 + b.norm()));
    }

    #[test]
    fn ks_statistic_is_a_distance(points in prop::collection::vec(-0.5..1.5f64, 1..60)) {
        let r = ks_statistic(&EmpiricalMeasure::new(points), &LimitMeasure::UpsilonUnit).unwrap();
        prop_assert!((0.0..=1.0).contains(&r.statistic));
    }

    #[test]
    fn limit_cdf_is_monotone(x in -0.2..1.2f64, dx in 0.0..0.3f64, t in 0.1..2.0f64) {
        for m in [LimitMeasure::UpsilonUnit, LimitMeasure::nu_l(t).unwrap(), LimitMeasure::nu_m(t).unwrap()] {
            let a = m.cdf(x).unwrap();
            let b = m.cdf(x + dx).unwrap();
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&a));
            prop_assert!(b >= a - 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn constant_cascade_interlaces(alpha in 0.05..10.0f64, n in 2usize..40) {
        let fam = CoefficientFamily::constant(alpha).unwrap();
        let c = ZeroCascade::run(&fam, n, 1).unwrap();
        let hi = c.level(n).zeros;
        let lo = c.level(n - 1).zeros;
        prop_assert_eq!(hi.len(), n);
        for (k, x) in lo.iter().enumerate() {
            prop_assert!(hi[k] < *x && *x < hi[k + 1]);
        }
        prop_assert!(hi.iter().all(|&x| x > 0.0 && x < alpha * (1.0 + 1e-9)));
    }

    #[test]
    fn qn_closed_form_agrees_with_recurrence(alpha in 0.1..7.0f64, n in 1usize..40) {
        let a = qn_at_zero(alpha, n);
        let b = qn_at_zero_recurrence(alpha, n).unwrap();
        prop_assert!((a - b).abs() <= 1e-11 * a.abs().max(1e-300));
    }
}
