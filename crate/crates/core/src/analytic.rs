//! Functions in the unit ball of `H^inf` of the upper half-plane, given as finite
//! products of Blaschke factors, point-mass singular factors, `e^{iaz}`, smooth outer
//! dips and unimodular constants.
//!
//! Derivative jets are built factor by factor in Taylor-coefficient form: Blaschke
//! factors in closed form, every exponential factor through one combined logarithm
//! `L` and the recurrence `f_j = (1/j) sum_k k l_k f_{j-k}` for `f = e^L`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_interval, QuadratureConfig};
use crate::real::ExactReal;
use crate::scalar::{big_consts, BigComplex, GaussianRational, Scalar};

/// A complex number with exact rational parts, written `[re, im]` in descriptions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[ExactReal; 2]", into = "[ExactReal; 2]")]
pub struct ExactComplex {
    pub re: ExactReal,
    pub im: ExactReal,
}

impl From<[ExactReal; 2]> for ExactComplex {
    fn from([re, im]: [ExactReal; 2]) -> Self {
        ExactComplex { re, im }
    }
}

impl From<ExactComplex> for [ExactReal; 2] {
    fn from(z: ExactComplex) -> Self {
        [z.re, z.im]
    }
}

impl ExactComplex {
    pub fn new(re: ExactReal, im: ExactReal) -> Self {
        ExactComplex { re, im }
    }

    /// Exact dyadic lift of two doubles.
    pub fn from_f64(re: f64, im: f64) -> Self {
        ExactComplex::new(ExactReal::from(re), ExactReal::from(im))
    }

    pub fn real(x: ExactReal) -> Self {
        ExactComplex::new(x, ExactReal::zero())
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }

    pub fn to_gaussian(&self) -> GaussianRational {
        GaussianRational::new(self.re.exact().clone(), self.im.exact().clone())
    }
}

/// One smooth dip of the boundary modulus: `m(t) = 1 - depth * bump((t - center)/half_width)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dip {
    pub center: ExactReal,
    pub half_width: ExactReal,
    pub depth: ExactReal,
}

/// `e^{-1/(1-u^2)}` on `|u| < 1`, zero elsewhere.
pub fn bump(u: f64) -> f64 {
    if u.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - u * u)).exp()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Factor {
    Blaschke {
        zero: ExactComplex,
        #[serde(default = "ExactReal::zero")]
        phase: ExactReal,
    },
    PointMass {
        location: ExactReal,
        mass: ExactReal,
    },
    ExpInfinity {
        a: ExactReal,
    },
    OuterDip {
        dips: Vec<Dip>,
    },
    Phase {
        alpha: ExactReal,
    },
}

/// The declarative description accepted from files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDescription {
    pub factors: Vec<Factor>,
    /// Bound on the discarded tail of a truncated infinite product, recorded but not used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_bound: Option<f64>,
}

#[derive(Clone, Debug)]
struct PreparedDip {
    center: f64,
    half_width: f64,
    depth: f64,
    /// `int s g(s) / (1 + s^2) ds`
    shift: f64,
}

impl PreparedDip {
    fn support(&self) -> (f64, f64) {
        (self.center - self.half_width, self.center + self.half_width)
    }

    /// `g = log m` for this dip.
    fn log_modulus(&self, s: f64) -> f64 {
        (-self.depth * bump((s - self.center) / self.half_width)).ln_1p()
    }

    fn modulus(&self, s: f64) -> f64 {
        1.0 - self.depth * bump((s - self.center) / self.half_width)
    }
}

fn inner_cfg(scale: f64) -> QuadratureConfig {
    QuadratureConfig {
        abs_tol: 1e-15 * scale,
        rel_tol: 1e-13,
        max_subdivisions: 3000,
        ..QuadratureConfig::default()
    }
}

/// A point of the closed unit ball of `H^inf(C_+)` described by its factors.
#[derive(Clone, Debug)]
pub struct UnitBallFunction {
    factors: Vec<Factor>,
    dips: Vec<PreparedDip>,
    tail_bound: Option<f64>,
}

const SPOT_GRID_X: [f64; 5] = [-3.0, -1.0, 0.0, 1.0, 3.0];
const SPOT_GRID_Y: [f64; 3] = [0.1, 1.0, 4.0];

impl UnitBallFunction {
    /// Validates every factor and spot-checks `|b| <= 1` on a grid of the half-plane.
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidFunction(msg));
        let mut dips = Vec::new();
        for f in &factors {
            match f {
                Factor::Blaschke { zero, .. } => {
                    if !zero.im.exact().is_positive() {
                        return bad(format!("Blaschke zero {:?} is not in the upper half-plane", zero.value()));
                    }
                }
                Factor::PointMass { mass, .. } => {
                    if !mass.exact().is_positive() {
                        return bad(format!("point mass {mass} is not positive"));
                    }
                }
                Factor::ExpInfinity { a } => {
                    if a.exact().is_negative() {
                        return bad(format!("exp_infinity parameter {a} is negative"));
                    }
                }
                Factor::OuterDip { dips: list } => {
                    for d in list {
                        if !d.half_width.exact().is_positive() {
                            return bad(format!("dip half-width {} is not positive", d.half_width));
                        }
                        let depth = d.depth.exact();
                        if !depth.is_positive() || depth >= &BigRational::from_integer(1.into()) {
                            return bad(format!("dip depth {} is not in (0, 1)", d.depth));
                        }
                        let mut p = PreparedDip {
                            center: d.center.value(),
                            half_width: d.half_width.value(),
                            depth: d.depth.value(),
                            shift: 0.0,
                        };
                        let (lo, hi) = p.support();
                        let q = p.clone();
                        p.shift = integrate_interval(
                            |s| Ok(Complex64::new(s * q.log_modulus(s) / (1.0 + s * s), 0.0)),
                            lo,
                            hi,
                            &inner_cfg(1.0),
                        )?
                        .value
                        .re;
                        dips.push(p);
                    }
                }
                Factor::Phase { .. } => {}
            }
        }
        let b = UnitBallFunction {
            factors,
            dips,
            tail_bound: None,
        };
        for x in SPOT_GRID_X {
            for y in SPOT_GRID_Y {
                let v = b.eval(Complex64::new(x, y))?;
                if !(v.norm() <= 1.0 + 1e-9) {
                    return bad(format!("|b({x} + {y}i)| = {} exceeds 1", v.norm()));
                }
            }
        }
        Ok(b)
    }

    /// `b == 1`.
    pub fn one() -> Self {
        UnitBallFunction {
            factors: Vec::new(),
            dips: Vec::new(),
            tail_bound: None,
        }
    }

    pub fn from_description(desc: FunctionDescription) -> Result<Self> {
        let mut b = UnitBallFunction::new(desc.factors)?;
        b.tail_bound = desc.tail_bound;
        Ok(b)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let desc: FunctionDescription =
            serde_json::from_str(text).map_err(|e| Error::InvalidFunction(e.to_string()))?;
        UnitBallFunction::from_description(desc)
    }

    pub fn description(&self) -> FunctionDescription {
        FunctionDescription {
            factors: self.factors.clone(),
            tail_bound: self.tail_bound,
        }
    }

    /// Finite Blaschke product with zero phases, from `(re, im)` pairs of doubles.
    pub fn blaschke(zeros: &[(f64, f64)]) -> Result<Self> {
        UnitBallFunction::new(
            zeros
                .iter()
                .map(|&(re, im)| Factor::Blaschke {
                    zero: ExactComplex::from_f64(re, im),
                    phase: ExactReal::zero(),
                })
                .collect(),
        )
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn tail_bound(&self) -> Option<f64> {
        self.tail_bound
    }

    pub fn with_tail_bound(mut self, bound: Option<f64>) -> Self {
        self.tail_bound = bound;
        self
    }

    pub fn is_blaschke_only(&self) -> bool {
        self.factors
            .iter()
            .all(|f| matches!(f, Factor::Blaschke { .. } | Factor::Phase { .. }))
    }

    /// `|b| = 1` almost everywhere on the line, i.e. no outer dips.
    pub fn is_inner(&self) -> bool {
        self.dips.is_empty()
    }

    /// The same function with every unimodular constant removed.
    pub fn without_phases(&self) -> Self {
        let factors = self
            .factors
            .iter()
            .filter(|f| !matches!(f, Factor::Phase { .. }))
            .map(|f| match f {
                Factor::Blaschke { zero, .. } => Factor::Blaschke {
                    zero: zero.clone(),
                    phase: ExactReal::zero(),
                },
                other => other.clone(),
            })
            .collect();
        UnitBallFunction {
            factors,
            dips: self.dips.clone(),
            tail_bound: self.tail_bound,
        }
    }

    fn has_phase(&self) -> bool {
        self.factors.iter().any(|f| match f {
            Factor::Blaschke { phase, .. } => !phase.exact().is_zero(),
            Factor::Phase { alpha } => !alpha.exact().is_zero(),
            _ => false,
        })
    }

    /// Supports `[c - w, c + w]` of the dips, where `rho` can be nonzero.
    pub fn rho_support(&self) -> Vec<(f64, f64)> {
        self.dips.iter().map(PreparedDip::support).collect()
    }

    /// Distance from `w` to the nearest singularity of `b` or of its continuation across the line.
    pub fn analytic_radius(&self, w: Complex64) -> f64 {
        let mut r = f64::INFINITY;
        for f in &self.factors {
            match f {
                Factor::Blaschke { zero, .. } => r = r.min((w - zero.value().conj()).norm()),
                Factor::PointMass { location, .. } => {
                    r = r.min((w - Complex64::new(location.value(), 0.0)).norm())
                }
                _ => {}
            }
        }
        for d in &self.dips {
            let (lo, hi) = d.support();
            let dx = if w.re < lo {
                lo - w.re
            } else if w.re > hi {
                w.re - hi
            } else {
                0.0
            };
            r = r.min(dx.hypot(w.im));
        }
        r
    }

    fn check_point(&self, z: Complex64) -> Result<()> {
        if !(z.re.is_finite() && z.im.is_finite()) || z.im < 0.0 {
            return Err(Error::Domain(format!("{z} is not in the closed upper half-plane")));
        }
        for f in &self.factors {
            if let Factor::PointMass { location, .. } = f {
                if z.im == 0.0 && z.re == location.value() {
                    return Err(Error::SingularPoint(format!("point mass at {}", location)));
                }
            }
        }
        Ok(())
    }

    /// `int g(s) / (s - z) ds` over the support of one dip, with the value of `g` at
    /// `Re z` subtracted when it lies inside the support.
    fn dip_cauchy(&self, d: &PreparedDip, z: Complex64) -> Result<Complex64> {
        let (lo, hi) = d.support();
        let x = z.re;
        let cfg = inner_cfg(d.depth.max(1e-300));
        if x > lo && x < hi {
            let gx = d.log_modulus(x);
            let cfg = cfg.with_breakpoints([x]);
            let body = integrate_interval(|s| Ok((d.log_modulus(s) - gx) / Complex64::new(s - x, -z.im)), lo, hi, &cfg)?;
            let log_ratio = if z.im == 0.0 {
                Complex64::new(((hi - x) / (x - lo)).ln(), PI)
            } else {
                (Complex64::new(hi, 0.0) - z).ln() - (Complex64::new(lo, 0.0) - z).ln()
            };
            Ok(body.value + gx * log_ratio)
        } else {
            Ok(integrate_interval(|s| Ok(d.log_modulus(s) / Complex64::new(s - x, -z.im)), lo, hi, &cfg)?.value)
        }
    }

    /// `int g(s) / (s - z)^(j+1) ds`, `j >= 1`.
    fn dip_cauchy_power(&self, d: &PreparedDip, z: Complex64, j: usize) -> Result<Complex64> {
        let (lo, hi) = d.support();
        if z.im == 0.0 && z.re > lo && z.re < hi {
            return Err(Error::SingularPoint(format!(
                "derivatives of the outer factor at {} inside the dip support [{lo}, {hi}]",
                z.re
            )));
        }
        let dist = self_distance(z, lo, hi);
        let cfg = inner_cfg(d.depth * dist.powi(-(j as i32 + 1)).min(1e300));
        let cfg = if z.re > lo && z.re < hi { cfg.with_breakpoints([z.re]) } else { cfg };
        let e = -(j as i32 + 1);
        Ok(integrate_interval(|s| Ok(d.log_modulus(s) * (Complex64::new(s, 0.0) - z).powi(e)), lo, hi, &cfg)?.value)
    }

    /// Taylor coefficients of the combined logarithm of all exponential factors, in doubles.
    fn log_series(&self, w: Complex64, order: usize) -> Result<Vec<Complex64>> {
        let i = Complex64::i();
        let mut l = vec![Complex64::new(0.0, 0.0); order + 1];
        for f in &self.factors {
            match f {
                Factor::PointMass { location, mass } => {
                    let t0 = location.value();
                    let k = i * mass.value() / PI;
                    let d = Complex64::new(t0, 0.0) - w;
                    l[0] += k * (1.0 / d - t0 / (1.0 + t0 * t0));
                    let inv = 1.0 / d;
                    let mut p = inv;
                    for lj in l.iter_mut().skip(1) {
                        p *= inv;
                        *lj += k * p;
                    }
                }
                Factor::ExpInfinity { a } => {
                    l[0] += i * a.value() * w;
                    if order >= 1 {
                        l[1] += i * a.value();
                    }
                }
                _ => {}
            }
        }
        let factor = Complex64::new(0.0, -1.0 / PI);
        for d in &self.dips {
            l[0] += factor * (self.dip_cauchy(d, w)? - d.shift);
            for (j, lj) in l.iter_mut().enumerate().skip(1) {
                *lj += factor * self.dip_cauchy_power(d, w, j)?;
            }
        }
        Ok(l)
    }

    fn has_exponential(&self) -> bool {
        self.factors
            .iter()
            .any(|f| matches!(f, Factor::PointMass { .. } | Factor::ExpInfinity { .. } | Factor::OuterDip { .. }))
    }

    /// `b(z)` for `Im z >= 0`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.check_point(z)?;
        let mut v = Complex64::new(1.0, 0.0);
        for f in &self.factors {
            match f {
                Factor::Blaschke { zero, phase } => {
                    let zk = zero.value();
                    v *= Complex64::from_polar(1.0, phase.value()) * (z - zk) / (z - zk.conj());
                }
                Factor::Phase { alpha } => v *= Complex64::from_polar(1.0, alpha.value()),
                _ => {}
            }
        }
        if self.has_exponential() {
            v *= self.log_series(z, 0)?[0].exp();
        }
        Ok(v)
    }

    /// `rho(t) = 1 - |b(t)|^2`, from the boundary modulus (only dips contribute).
    pub fn rho(&self, t: f64) -> Result<f64> {
        self.check_point(Complex64::new(t, 0.0))?;
        let m: f64 = self.dips.iter().map(|d| d.modulus(t)).product();
        Ok((1.0 - m * m).max(0.0))
    }

    /// Boundary modulus `|b(t)|`.
    pub fn boundary_modulus(&self, t: f64) -> f64 {
        self.dips.iter().map(|d| d.modulus(t)).product()
    }

    /// `log |b(t)|` on the line.
    pub fn boundary_log_modulus(&self, t: f64) -> f64 {
        self.dips.iter().map(|d| d.log_modulus(t)).sum()
    }

    /// Double-precision jet `b(w), ..., b^(order)(w)`.
    pub fn derivative_jet(&self, w: Complex64, order: usize) -> Result<DerivativeJet> {
        self.check_point(w)?;
        let mut series = vec![Complex64::new(0.0, 0.0); order + 1];
        series[0] = Complex64::new(1.0, 0.0);
        for f in &self.factors {
            match f {
                Factor::Blaschke { zero, phase } => {
                    let s = blaschke_series(w, zero.value(), Complex64::from_polar(1.0, phase.value()), order);
                    series = series_mul(&series, &s);
                }
                Factor::Phase { alpha } => {
                    let u = Complex64::from_polar(1.0, alpha.value());
                    series.iter_mut().for_each(|c| *c *= u);
                }
                _ => {}
            }
        }
        if self.has_exponential() {
            let l = self.log_series(w, order)?;
            let e = series_exp(&l, l[0].exp());
            series = series_mul(&series, &e);
        }
        Ok(DerivativeJet::from_taylor(w, series))
    }

    /// Exact jet in `Q(i)`; only for Blaschke products without phases at a Gaussian-rational point.
    pub fn exact_jet(&self, w: &ExactComplex, order: usize) -> Result<DerivativeJet<GaussianRational>> {
        if !self.is_blaschke_only() {
            return Err(Error::Domain("exact jets need a Blaschke-only function".into()));
        }
        if self.has_phase() {
            return Err(Error::Domain(
                "exact jets need zero phases; strip them for phase-invariant quantities".into(),
            ));
        }
        if w.im.exact().is_negative() {
            return Err(Error::Domain(format!("{:?} is not in the closed upper half-plane", w.value())));
        }
        let wq = w.to_gaussian();
        let mut series = vec![GaussianRational::zero(); order + 1];
        series[0] = GaussianRational::one();
        for f in &self.factors {
            if let Factor::Blaschke { zero, .. } = f {
                let s = blaschke_series(wq.clone(), zero.to_gaussian(), GaussianRational::one(), order);
                series = series_mul(&series, &s);
            }
        }
        Ok(DerivativeJet::from_taylor(w.value(), series))
    }

    /// Jet in binary floats of `prec` bits. Dips are integrated in double precision and
    /// lifted, so their contribution carries 53 significant bits.
    pub fn extended_jet(&self, w: &ExactComplex, order: usize, prec: usize) -> Result<DerivativeJet<BigComplex>> {
        let wf = w.value();
        self.check_point(wf)?;
        let mut cc = big_consts();
        let wb = BigComplex::from_gaussian(&w.to_gaussian(), prec);
        let one = BigComplex::from_rational(&BigRational::from_integer(1.into()), prec);
        let mut series = vec![BigComplex::zero(); order + 1];
        series[0] = one.clone();
        for f in &self.factors {
            match f {
                Factor::Blaschke { zero, phase } => {
                    let u = if phase.exact().is_zero() {
                        one.clone()
                    } else {
                        BigComplex::unimodular(phase.exact(), prec, &mut cc)
                    };
                    let zk = BigComplex::from_gaussian(&zero.to_gaussian(), prec);
                    series = series_mul(&series, &blaschke_series(wb.clone(), zk, u, order));
                }
                Factor::Phase { alpha } => {
                    let u = BigComplex::unimodular(alpha.exact(), prec, &mut cc);
                    series = series.into_iter().map(|c| c * u.clone()).collect();
                }
                _ => {}
            }
        }
        if self.has_exponential() {
            let pi = BigComplex::pi(prec, &mut cc);
            let i = BigComplex::imag_unit();
            let mut l = vec![BigComplex::zero(); order + 1];
            for f in &self.factors {
                match f {
                    Factor::PointMass { location, mass } => {
                        let t0q = location.exact();
                        let t0 = BigComplex::from_rational(t0q, prec);
                        let k = i.clone() * BigComplex::from_rational(mass.exact(), prec) / pi.clone();
                        let shift = t0q / (BigRational::from_integer(1.into()) + t0q * t0q);
                        let inv = one.clone() / (t0 - wb.clone());
                        l[0] = l[0].clone() + k.clone() * (inv.clone() - BigComplex::from_rational(&shift, prec));
                        let mut p = inv.clone();
                        for lj in l.iter_mut().skip(1) {
                            p = p * inv.clone();
                            *lj = lj.clone() + k.clone() * p.clone();
                        }
                    }
                    Factor::ExpInfinity { a } => {
                        let ia = i.clone() * BigComplex::from_rational(a.exact(), prec);
                        l[0] = l[0].clone() + ia.clone() * wb.clone();
                        if order >= 1 {
                            l[1] = l[1].clone() + ia;
                        }
                    }
                    _ => {}
                }
            }
            if !self.dips.is_empty() {
                let only_dips = UnitBallFunction {
                    factors: Vec::new(),
                    dips: self.dips.clone(),
                    tail_bound: None,
                };
                for (lj, d) in l.iter_mut().zip(only_dips.log_series(wf, order)?) {
                    *lj = lj.clone() + BigComplex::from_complex64(d, prec);
                }
            }
            let e0 = l[0].exp(&mut cc);
            series = series_mul(&series, &series_exp(&l, e0));
        }
        Ok(DerivativeJet::from_taylor(wf, series))
    }

    /// Taylor coefficients `a_p = b^(p)(x0)/p!`, `p = 0..=order`.
    pub fn taylor_coeffs(&self, x0: f64, order: usize) -> Result<Vec<Complex64>> {
        Ok(self.derivative_jet(Complex64::new(x0, 0.0), order)?.taylor_coeffs())
    }

    /// Boundary jet at `x0` as the limit of interior jets along `x0 + it`, by polynomial
    /// extrapolation to `t = 0` over the schedule.
    pub fn radial_jet_extrapolate(&self, x0: f64, order: usize, schedule: &[f64]) -> Result<ExtrapolatedJet> {
        if schedule.len() < 2 {
            return Err(Error::Domain("radial extrapolation needs at least two radii".into()));
        }
        if schedule.windows(2).any(|w| !(w[1] < w[0])) || schedule.iter().any(|t| !(*t > 0.0)) {
            return Err(Error::Domain("schedule must be positive and strictly decreasing".into()));
        }
        let samples: Vec<Vec<Complex64>> = schedule
            .iter()
            .map(|t| self.derivative_jet(Complex64::new(x0, *t), order).map(|j| j.values))
            .collect::<Result<_>>()?;
        let m = schedule.len();
        let mut best: Option<(f64, Vec<Complex64>)> = None;
        let mut diagonal: Vec<Vec<Complex64>> = Vec::with_capacity(m);
        for j in 0..=order {
            let mut p: Vec<Complex64> = samples.iter().map(|s| s[j]).collect();
            let mut diag = vec![p[0]];
            for k in 1..m {
                for i in 0..m - k {
                    let (ti, tk) = (schedule[i], schedule[i + k]);
                    p[i] = (ti * p[i + 1] - tk * p[i]) / (ti - tk);
                }
                diag.push(p[0]);
            }
            diagonal.push(diag);
        }
        // diagonal[j][k] interpolates radii 0..=k; keep the depth with the smallest step.
        for k in 1..m {
            let err = (0..=order)
                .map(|j| (diagonal[j][k] - diagonal[j][k - 1]).norm() / (1.0 + diagonal[j][k].norm()))
                .fold(0.0, f64::max);
            let values: Vec<Complex64> = (0..=order).map(|j| diagonal[j][k]).collect();
            if best.as_ref().is_none_or(|(e, _)| err < *e) {
                best = Some((err, values));
            }
        }
        let (err, values) = best.expect("at least two radii");
        if !err.is_finite() || err > 1e-2 {
            return Err(Error::NotConverging { error_estimate: err });
        }
        Ok(ExtrapolatedJet {
            jet: DerivativeJet {
                base: Complex64::new(x0, 0.0),
                values,
            },
            error_estimate: err,
        })
    }
}

fn self_distance(z: Complex64, lo: f64, hi: f64) -> f64 {
    let dx = if z.re < lo {
        lo - z.re
    } else if z.re > hi {
        z.re - hi
    } else {
        0.0
    };
    dx.hypot(z.im)
}

#[derive(Clone, Debug)]
pub struct ExtrapolatedJet {
    pub jet: DerivativeJet,
    /// Largest relative change between the last two extrapolation depths used.
    pub error_estimate: f64,
}

/// Derivatives `b^(j)(base)`, `j = 0..=order`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivativeJet<T = Complex64> {
    pub base: Complex64,
    pub values: Vec<T>,
}

impl<T: Scalar> DerivativeJet<T> {
    pub fn from_taylor(base: Complex64, coeffs: Vec<T>) -> Self {
        let mut fact = num_bigint::BigInt::from(1);
        let values = coeffs
            .into_iter()
            .enumerate()
            .map(|(p, c)| {
                if p > 0 {
                    fact *= p;
                }
                c.scale_int(&fact)
            })
            .collect();
        DerivativeJet { base, values }
    }

    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    /// `a_p = b^(p)/p!`.
    pub fn taylor(&self, p: usize) -> T {
        self.values[p].clone() / T::from_integer(&crate::combinatorics::factorial(p))
    }

    pub fn taylor_coeffs(&self) -> Vec<T> {
        (0..self.values.len()).map(|p| self.taylor(p)).collect()
    }

    pub fn require(&self, order: usize) -> Result<()> {
        if self.values.len() <= order {
            return Err(Error::Domain(format!(
                "jet of order {} supplied where order {order} is needed",
                self.order()
            )));
        }
        Ok(())
    }

    pub fn to_complex64(&self) -> DerivativeJet {
        DerivativeJet {
            base: self.base,
            values: self.values.iter().map(Scalar::to_complex64).collect(),
        }
    }
}

/// Taylor coefficients at `w` of `u (z - zk)/(z - conj zk)`.
pub fn blaschke_series<T: Scalar>(w: T, zk: T, u: T, order: usize) -> Vec<T> {
    let pole = zk.conj();
    let d = w.clone() - pole.clone();
    let inv = T::one() / d.clone();
    let mut out = Vec::with_capacity(order + 1);
    out.push(u.clone() * (w - zk.clone()) * inv.clone());
    let mut c = u * (pole - zk) * inv.clone();
    for _ in 1..=order {
        c = -(c * inv.clone());
        out.push(c.clone());
    }
    out
}

/// Cauchy product truncated to the length of `a`.
pub fn series_mul<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    (0..a.len())
        .map(|j| {
            let mut acc = T::zero();
            for k in 0..=j.min(b.len().saturating_sub(1)) {
                if a[j - k].is_exactly_zero() || b[k].is_exactly_zero() {
                    continue;
                }
                acc = acc + a[j - k].clone() * b[k].clone();
            }
            acc
        })
        .collect()
}

/// Taylor coefficients of `e^L` given those of `L` and the value `e^{L(w)}`.
pub fn series_exp<T: Scalar>(l: &[T], e0: T) -> Vec<T> {
    let mut f = Vec::with_capacity(l.len());
    f.push(e0);
    for j in 1..l.len() {
        let mut acc = T::zero();
        for k in 1..=j {
            if l[k].is_exactly_zero() {
                continue;
            }
            acc = acc + l[k].clone() * f[j - k].clone() * T::from_i64(k as i64);
        }
        f.push(acc / T::from_i64(j as i64));
    }
    f
}
