mod common;

use common::*;
use dbrk_core::analytic::{ExactComplex, UnitBallFunction};
use dbrk_core::experiments::*;
use dbrk_core::kernels::Precision;
use dbrk_core::scalar::Scalar;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn dyadic(lo: i32, hi: i32, denom: f64) -> impl Strategy<Value = f64> {
    (lo..=hi).prop_map(move |k| k as f64 / denom)
}

fn zeros() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((dyadic(-12, 12, 4.0), dyadic(2, 12, 4.0)), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn finite_verdict_is_monotone_in_n(zs in zeros(), t0 in dyadic(-8, 8, 4.0), c0 in dyadic(-8, 8, 4.0), x0 in dyadic(-8, 8, 4.0)) {
        let mut fs: Vec<_> = zs.iter().map(|&(x, y)| blaschke(x, y, 0.0)).collect();
        fs.push(point_mass(t0, 0.5));
        fs.push(dip(c0, 0.5, 0.5));
        let b = UnitBallFunction::new(fs).unwrap();
        let verdicts: Vec<bool> = (0..=3).map(|n| ahern_clark_report(&b, &x0.into(), n).finite).collect();
        for n in 1..verdicts.len() {
            prop_assert!(!verdicts[n] || verdicts[n - 1], "{verdicts:?}");
        }
    }

    #[test]
    fn identities_vanish_for_blaschke_products(zs in zeros(), x0 in dyadic(-16, 16, 8.0), n in 0usize..=3) {
        let b = UnitBallFunction::blaschke(&zs).unwrap();
        let a = b.taylor_coeffs(x0, 2 * n).unwrap();
        for r in coefficient_identities(&a, n).unwrap() {
            prop_assert!(r.value.norm() < 1e-10, "l={}: {}", r.index, r.value);
        }
        let exact = b.exact_jet(&ExactComplex::from_f64(x0, 0.0), 2 * n).unwrap().taylor_coeffs();
        prop_assert!(coefficient_identities(&exact, n).unwrap().iter().all(|r| r.value.is_exactly_zero()));
    }

    #[test]
    fn difference_norm_eventually_decreases(zs in zeros(), x0 in dyadic(-4, 4, 4.0), n in 0usize..=1) {
        let b = UnitBallFunction::blaschke(&zs).unwrap();
        let tr = norm_convergence_trace(&b, &x0.into(), n, &default_schedule(), Precision::Exact).unwrap();
        prop_assert!(tr.decreasing_tail(4));
        let first = tr.rows[0].difference_sq;
        prop_assert!(tr.final_difference().unwrap() < 1e-3 * first.max(1e-300) || first == 0.0);
    }
}

#[test]
fn condition_report_examples() {
    let b = UnitBallFunction::blaschke(&[(0.0, 1.0)]).unwrap();
    let r = ahern_clark_report(&b, &0.0.into(), 0);
    assert_eq!(r.blaschke_exact, BigRational::one());
    assert!(r.finite && r.singular_term == 0.0 && r.log_term == 0.0);

    let pm = UnitBallFunction::new(vec![point_mass(0.0, 1.0)]).unwrap();
    let r = ahern_clark_report(&pm, &0.0.into(), 0);
    assert!(r.singular_term.is_infinite() && !r.finite);

    // |log m| <= -log(1 - s/e) on the support, which lies at distance >= 2 from x0
    let d = UnitBallFunction::new(vec![dip(3.0, 1.0, 0.5)]).unwrap();
    let r = ahern_clark_report(&d, &0.0.into(), 1);
    let bound = -(1.0 - 0.5 / std::f64::consts::E).ln() * 2.0 / 2f64.powi(4);
    assert!(r.finite && r.log_term > 0.0 && r.log_term < bound);
    let inside = ahern_clark_report(&d, &3.0.into(), 0);
    assert!(!inside.finite && inside.log_term.is_infinite());

    let e = UnitBallFunction::new(vec![exp_infinity(2.0)]).unwrap();
    let r = ahern_clark_report(&e, &0.5.into(), 3);
    assert_eq!(r.total, 0.0);
    let tail = UnitBallFunction::blaschke(&[(0.0, 1.0)]).unwrap().with_tail_bound(Some(1e-6));
    assert_eq!(ahern_clark_report(&tail, &0.0.into(), 0).tail_bound, Some(1e-6));
}

#[test]
fn log_term_matches_direct_quadrature() {
    let d = UnitBallFunction::new(vec![dip(3.0, 1.0, 0.5)]).unwrap();
    // midpoint rule on a fine grid as an independent oracle
    let m = 200_000;
    let h = 2.0 / m as f64;
    let oracle: f64 = (0..m)
        .map(|k| {
            let t = 2.0 + (k as f64 + 0.5) * h;
            d.boundary_log_modulus(t).abs() / t.powi(4) * h
        })
        .sum();
    let r = ahern_clark_report(&d, &0.0.into(), 1);
    assert!((r.log_term - oracle).abs() < 1e-8 * oracle);
}

#[test]
fn identity_examples() {
    let b = UnitBallFunction::blaschke(&[(0.0, 1.0)]).unwrap();
    let a = b.taylor_coeffs(0.0, 2).unwrap();
    let r0 = coefficient_identities(&a[..1], 0).unwrap();
    assert_eq!(r0.len(), 1);
    assert!(r0[0].value.norm() < 1e-15);
    let r1 = coefficient_identities(&a, 1).unwrap();
    assert_eq!(r1.iter().map(|r| r.index).collect::<Vec<_>>(), vec![0, 1, 2]);
    assert!(r1.iter().all(|r| r.value.norm() < 1e-15));
    let one = UnitBallFunction::one().taylor_coeffs(0.0, 6).unwrap();
    assert!(coefficient_identities(&one, 3).unwrap().iter().all(|r| r.value.norm() == 0.0));
}

#[test]
fn lambda_suite_examples() {
    let b = UnitBallFunction::blaschke(&[(0.0, 1.0), (2.0, 1.0)]).unwrap();
    let a = b.taylor_coeffs(0.0, 7).unwrap();
    for n in 0..=3 {
        let suite = lambda_suite(&a, n, 1e-10).unwrap();
        assert!(suite.pass(), "n={n}: {:?}", suite.relations);
        let lead = lambda_zero_expected(n).to_string().parse::<f64>().unwrap();
        assert!((suite.lambdas[0].re - lead).abs() < 1e-10 * lead.abs());
    }
    let exact = b.exact_jet(&ExactComplex::from_f64(0.0, 0.0), 3).unwrap().taylor_coeffs();
    let suite = lambda_suite(&exact, 1, 0.0).unwrap();
    assert!(suite.relations.iter().all(|r| r.exact_zero));
}

#[test]
fn convergence_trace_examples() {
    let b = UnitBallFunction::blaschke(&[(0.0, 1.0)]).unwrap();
    let tr = norm_convergence_trace(&b, &0.0.into(), 0, &default_schedule(), Precision::Exact).unwrap();
    assert!(tr.decreasing_tail(12));
    // closed form for this configuration: t^2 / ((1 + t)^2 pi)
    for row in &tr.rows {
        let expect = row.t * row.t / ((1.0 + row.t).powi(2) * std::f64::consts::PI);
        assert!((row.difference_sq - expect).abs() < 1e-14 * expect);
    }
    assert!((tr.limit - 1.0 / std::f64::consts::PI).abs() < 1e-15);
    let gaps: Vec<f64> = tr.rows.iter().map(|r| (r.norm_sq_omega - tr.limit).abs()).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]));

    let one = UnitBallFunction::one();
    let tr = norm_convergence_trace(&one, &0.0.into(), 2, &default_schedule(), Precision::Auto).unwrap();
    assert!(tr.rows.iter().all(|r| r.difference_sq == 0.0 && r.norm_sq_omega == 0.0));

    assert!(norm_convergence_trace(&b, &0.0.into(), 0, &[0.5, 0.5], Precision::Exact).is_err());
}

#[test]
fn convergence_trace_on_the_extended_path() {
    let b = UnitBallFunction::new(vec![blaschke(1.0, 2.0, 0.0), exp_infinity(0.5), dip(4.0, 1.0, 0.5)]).unwrap();
    let tr = norm_convergence_trace(&b, &0.0.into(), 1, &default_schedule(), Precision::Auto).unwrap();
    assert!(matches!(tr.arithmetic, dbrk_core::kernels::Arithmetic::Extended(_)));
    assert!(tr.decreasing_tail(6));
    assert!(tr.final_difference().unwrap() < 1e-6 * tr.limit);
}

#[test]
fn odd_probe_reports_values() {
    let b = UnitBallFunction::blaschke(&[(0.0, 1.0), (1.0, 0.5)]).unwrap();
    let a = b.taylor_coeffs(0.5, 8).unwrap();
    let probe = odd_s_probe(&a, 4).unwrap();
    assert_eq!(probe.iter().map(|v| v.index).collect::<Vec<_>>(), vec![5, 7]);
    assert!(probe.iter().all(|v| v.value.norm() < 1e-10));
    let one = UnitBallFunction::one().taylor_coeffs(0.0, 4).unwrap();
    assert!(odd_s_probe(&one, 2).unwrap().iter().all(|v| v.value.norm() == 0.0));
    // near a dip edge the sums are only reported
    let d = UnitBallFunction::new(vec![dip(1.0, 0.5, 0.5)]).unwrap();
    let a = d.taylor_coeffs(0.45, 6).unwrap();
    assert_eq!(odd_s_probe(&a, 3).unwrap().len(), 1);
    assert!(odd_s_probe(&a[..3], 3).is_err());
}

#[test]
fn taylor_remainder_examples() {
    let b = UnitBallFunction::blaschke(&[(0.0, 1.0), (1.0, 1.0)]).unwrap();
    let rows = taylor_remainder_check(&b, 0.0, 2, &default_schedule()).unwrap();
    // |eps(it)| = O(t): the ratio to t settles
    let ratios: Vec<f64> = rows.iter().map(|r| r.magnitude / r.t).collect();
    let last = ratios[ratios.len() - 1];
    assert!(ratios[ratios.len() - 4..].iter().all(|q| (q - last).abs() < 0.01 * last));
    assert!(rows.last().unwrap().magnitude < 1e-2);
    assert!(taylor_remainder_check(&UnitBallFunction::one(), 0.0, 3, &default_schedule())
        .unwrap()
        .iter()
        .all(|r| r.magnitude == 0.0));
}

#[test]
fn exact_reports_use_exact_arithmetic() {
    let b = UnitBallFunction::blaschke(&[(0.5, 0.5), (1.0, 2.0)]).unwrap();
    let r = ahern_clark_report(&b, &0.0.into(), 1);
    // 0.5/|0.5+0.5i|^4 + 2/|1+2i|^4
    let expect = BigRational::new(2.into(), 1.into()) + BigRational::new(2.into(), 25.into());
    assert_eq!(r.blaschke_exact, expect);
    assert!(!r.blaschke_exact.is_zero());
}
