#![allow(dead_code)]

use dbrk_core::analytic::{Dip, ExactComplex, Factor, UnitBallFunction};
use dbrk_core::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn blaschke(re: f64, im: f64, phase: f64) -> Factor {
    Factor::Blaschke {
        zero: ExactComplex::from_f64(re, im),
        phase: phase.into(),
    }
}

pub fn point_mass(location: f64, mass: f64) -> Factor {
    Factor::PointMass {
        location: location.into(),
        mass: mass.into(),
    }
}

pub fn exp_infinity(a: f64) -> Factor {
    Factor::ExpInfinity { a: a.into() }
}

pub fn dip(center: f64, half_width: f64, depth: f64) -> Factor {
    Factor::OuterDip {
        dips: vec![Dip {
            center: center.into(),
            half_width: half_width.into(),
            depth: depth.into(),
        }],
    }
}

pub fn phase(alpha: f64) -> Factor {
    Factor::Phase { alpha: alpha.into() }
}

/// One representative function per factor kind.
pub fn factor_kinds() -> Vec<(&'static str, UnitBallFunction)> {
    vec![
        ("blaschke", UnitBallFunction::new(vec![blaschke(0.5, 1.0, 0.25)]).unwrap()),
        ("point_mass", UnitBallFunction::new(vec![point_mass(0.0, 0.75)]).unwrap()),
        ("exp_infinity", UnitBallFunction::new(vec![exp_infinity(1.5)]).unwrap()),
        ("outer_dip", UnitBallFunction::new(vec![dip(0.5, 1.0, 0.5)]).unwrap()),
        ("phase", UnitBallFunction::new(vec![phase(0.75), blaschke(-1.0, 2.0, 0.0)]).unwrap()),
    ]
}

/// Central stencils for the first three derivatives of `b` at `w` with step `h`.
pub fn stencil(b: &UnitBallFunction, w: Complex64, h: f64, q: usize) -> Complex64 {
    let f = |k: f64| b.eval(w + k * h).unwrap();
    match q {
        1 => (f(1.0) - f(-1.0)) / (2.0 * h),
        2 => (f(1.0) - 2.0 * f(0.0) + f(-1.0)) / (h * h),
        3 => (f(2.0) - 2.0 * f(1.0) + 2.0 * f(-1.0) - f(-2.0)) / (2.0 * h * h * h),
        _ => panic!("stencils are provided for orders 1 to 3"),
    }
}

/// Stencil errors against the jet at steps `h` and `h/2`, and the observed order.
pub fn observed_order(b: &UnitBallFunction, w: Complex64, h: f64, q: usize) -> (f64, f64, f64) {
    let exact = b.derivative_jet(w, q).unwrap().values[q];
    let e1 = (stencil(b, w, h, q) - exact).norm();
    let e2 = (stencil(b, w, h / 2.0, q) - exact).norm();
    (e1, e2, (e1 / e2).log2())
}
