mod common;

use std::f64::consts::PI;

use common::*;
use dbrk_core::analytic::{ExactComplex, UnitBallFunction};
use dbrk_core::kernels::{Kernel, KernelSpec};
use dbrk_core::quadrature::*;
use dbrk_core::{Complex64, Error};

fn cauchy(w: Complex64) -> impl Fn(f64) -> dbrk_core::Result<Complex64> {
    move |t| Ok(Complex64::new(0.0, 1.0 / (2.0 * PI)) / (Complex64::new(t, 0.0) - w.conj()))
}

#[test]
fn error_estimates_are_honest() {
    let cfg = QuadratureConfig::default();
    let cases: Vec<(Box<dyn Fn(f64) -> dbrk_core::Result<Complex64>>, f64)> = vec![
        (Box::new(|t| Ok(c(1.0 / (t * t + 1.0), 0.0))), PI),
        (Box::new(|t| Ok(c(1.0 / (t * t + 1.0).powi(2), 0.0))), PI / 2.0),
        (
            Box::new(|t| Ok(c(1.0 / (PI * PI * (t * t + 1.0)), 0.0))),
            1.0 / PI,
        ),
    ];
    for (f, exact) in cases {
        let r = integrate_real_line(f, &cfg).unwrap();
        let err = (r.value.re - exact).abs();
        assert!(err < 1e-12);
        assert!(err <= 10.0 * r.error_estimate, "{err:e} vs {:e}", r.error_estimate);
    }
    // |k_0|^2 for the zero at i is (1/pi^2)/(t^2+1)
    let b = UnitBallFunction::blaschke(&[(0.0, 1.0)]).unwrap();
    let k = Kernel::new(&b, KernelSpec::boundary(0.0.into(), 0)).unwrap();
    let r = integrate_real_line(|t| Ok(c(k.eval(c(t, 0.0))?.value.norm_sqr(), 0.0)), &cfg).unwrap();
    let err = (r.value.re - 1.0 / PI).abs();
    assert!(err < 1e-12 && err <= 10.0 * r.error_estimate);
}

#[test]
fn pairing_examples() {
    let cfg = QuadratureConfig::default();
    let v = l2_pairing(cauchy(c(0.0, 1.0)), cauchy(c(0.0, 2.0)), &cfg).unwrap();
    assert!((v - 1.0 / (6.0 * PI)).norm() < 1e-12);
    let zero = l2_pairing(|_| Ok(c(0.0, 0.0)), cauchy(c(0.0, 1.0)), &cfg).unwrap();
    assert_eq!(zero, c(0.0, 0.0));

    let inner = UnitBallFunction::blaschke(&[(0.0, 1.0)]).unwrap();
    assert_eq!(rho_pairing(cauchy(c(0.0, 1.0)), cauchy(c(0.0, 1.0)), &inner, &cfg).unwrap(), c(0.0, 0.0));
    let dipped = UnitBallFunction::new(vec![dip(0.0, 1.0, 0.5)]).unwrap();
    let v = rho_pairing(cauchy(c(0.0, 1.0)), cauchy(c(0.0, 1.0)), &dipped, &cfg).unwrap();
    let l2 = l2_pairing(cauchy(c(0.0, 1.0)), cauchy(c(0.0, 1.0)), &cfg).unwrap();
    assert!(v.re > 0.0 && v.im.abs() < 1e-15 && v.re < l2.re);
    assert!((l2.re - 1.0 / (4.0 * PI)).abs() < 1e-12);
    assert_eq!(rho_pairing(|_| Ok(c(0.0, 0.0)), cauchy(c(0.0, 1.0)), &dipped, &cfg).unwrap(), c(0.0, 0.0));
}

#[test]
fn subdivision_cap_is_reported() {
    let cfg = QuadratureConfig {
        max_subdivisions: 3,
        ..QuadratureConfig::default()
    };
    let r = integrate_interval(|t| Ok(c((50.0 * t).sin() / (1.0 + t * t), 0.0)), -10.0, 7.0, &cfg);
    assert!(matches!(r, Err(Error::QuadratureFailure { subdivisions: 3, .. })), "{r:?}");
}

fn closed_form(b: &UnitBallFunction, source: &KernelSpec, z: Complex64, n: usize) -> Complex64 {
    Kernel::new(b, source.clone()).unwrap().z_derivative(z, n).unwrap().value
}

#[test]
fn interior_representation_examples() {
    let cfg = QuadratureConfig::default();
    let b = UnitBallFunction::blaschke(&[(0.0, 1.0), (1.0, 2.0)]).unwrap();
    let src = KernelSpec::interior(ExactComplex::from_f64(0.0, 1.0), 0).unwrap();
    let om = ExactComplex::from_f64(0.0, 2.0);
    let r = representation_interior(&b, &src, &om, 0, &cfg).unwrap();
    let expect = closed_form(&b, &src, om.value(), 0);
    assert!((r.value - expect).norm() < 1e-10 * expect.norm());
    assert!(r.rho_skipped);

    let one = UnitBallFunction::one();
    let r = representation_interior(&one, &src, &om, 1, &cfg).unwrap();
    assert!(r.value.norm() < 1e-15);

    let dipped = UnitBallFunction::new(vec![blaschke(0.5, 1.0, 0.0), dip(1.0, 1.0, 0.75)]).unwrap();
    let src = KernelSpec::interior(ExactComplex::from_f64(1.5, 0.5), 1).unwrap();
    let om = ExactComplex::from_f64(0.75, 0.5);
    let r = representation_interior(&dipped, &src, &om, 1, &cfg).unwrap();
    let expect = closed_form(&dipped, &src, om.value(), 1);
    assert!(r.rho_part.norm() > 1e-4 * r.value.norm());
    assert!((r.value - expect).norm() < 1e-6 * expect.norm());
}

#[test]
fn boundary_representation_examples() {
    let cfg = QuadratureConfig::default();
    let b = UnitBallFunction::blaschke(&[(0.0, 1.0), (-1.0, 0.5)]).unwrap();
    let src = KernelSpec::interior(ExactComplex::from_f64(0.0, 1.0), 0).unwrap();
    let f = Kernel::new(&b, src.clone()).unwrap();
    let r0 = representation_boundary(&b, &src, &0.0.into(), 0, &cfg).unwrap();
    assert!((r0.value - f.eval(c(0.0, 0.0)).unwrap().value).norm() < 1e-10);
    let r1 = representation_boundary(&b, &src, &0.0.into(), 1, &cfg).unwrap();
    assert!((r1.value - f.z_derivative(c(0.0, 0.0), 1).unwrap().value).norm() < 1e-10);

    // radial limit of f at a point outside the dip support
    let dipped = UnitBallFunction::new(vec![blaschke(0.0, 1.0, 0.0), dip(3.0, 1.0, 0.5)]).unwrap();
    let src = KernelSpec::interior(ExactComplex::from_f64(2.5, 0.5), 1).unwrap();
    let f = Kernel::new(&dipped, src.clone()).unwrap();
    let schedule: Vec<f64> = (1..=10).map(|k| 2f64.powi(-k)).collect();
    let radial: Vec<Complex64> = schedule.iter().map(|&t| f.eval(c(0.0, t)).unwrap().value).collect();
    let limit = neville_at_zero(&schedule, &radial);
    let r = representation_boundary(&dipped, &src, &0.0.into(), 0, &cfg).unwrap();
    assert!(r.rho_part.norm() > 1e-3 * r.value.norm());
    assert!((r.value - limit).norm() < 1e-6 * limit.norm());
}

fn neville_at_zero(t: &[f64], v: &[Complex64]) -> Complex64 {
    let mut p = v.to_vec();
    for k in 1..t.len() {
        for i in 0..t.len() - k {
            p[i] = (t[i] * p[i + 1] - t[i + k] * p[i]) / (t[i] - t[i + k]);
        }
    }
    p[0]
}

#[test]
fn representation_error_shrinks_with_tolerance() {
    let b = UnitBallFunction::new(vec![blaschke(0.25, 0.75, 0.0), dip(-1.0, 0.75, 0.5)]).unwrap();
    let src = KernelSpec::interior(ExactComplex::from_f64(-0.5, 0.25), 2).unwrap();
    let om = ExactComplex::from_f64(0.0, 0.5);
    let expect = closed_form(&b, &src, om.value(), 1);
    for tol in [1e-4, 1e-6, 1e-8, 1e-10] {
        let cfg = QuadratureConfig::default().with_tolerances(tol * 1e-3, tol);
        let r = representation_interior(&b, &src, &om, 1, &cfg).unwrap();
        let err = (r.value - expect).norm() / expect.norm();
        assert!(err <= 10.0 * tol, "tol={tol:e}: err={err:e}");
    }
}

#[test]
fn skipping_the_rho_integral_for_inner_functions_changes_nothing() {
    let b = UnitBallFunction::new(vec![blaschke(0.0, 1.0, 0.5), blaschke(2.0, 0.25, 0.0), exp_infinity(0.25)]).unwrap();
    let src = KernelSpec::interior(ExactComplex::from_f64(0.5, 0.5), 1).unwrap();
    let om = ExactComplex::from_f64(-0.5, 1.0);
    let on = QuadratureConfig::default();
    let off = QuadratureConfig {
        skip_rho_when_inner: false,
        ..QuadratureConfig::default()
    };
    let a = representation_interior(&b, &src, &om, 2, &on).unwrap();
    let z = representation_interior(&b, &src, &om, 2, &off).unwrap();
    assert!(a.rho_skipped && !z.rho_skipped);
    assert_eq!(z.rho_part, c(0.0, 0.0));
    assert_eq!(a.value, z.value);
}
