//! Adaptive Gauss-Kronrod integration on intervals and on the real line, and the
//! two-integral representations of `f^(n)` built from it.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::analytic::{ExactComplex, UnitBallFunction};
use crate::error::{Error, Result};
use crate::kernels::{Kernel, KernelSpec};

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208272359430,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Center of the `t = center + scale * tan(theta)` substitution.
    pub center: f64,
    pub scale: f64,
    /// Points where the integrand is singular or has a sharp feature; they become interval ends.
    pub breakpoints: Vec<f64>,
    /// Skip the rho integral when `b` is inner (rho vanishes identically).
    pub skip_rho_when_inner: bool,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-13,
            rel_tol: 1e-11,
            max_subdivisions: 4000,
            center: 0.0,
            scale: 1.0,
            breakpoints: Vec::new(),
            skip_rho_when_inner: true,
        }
    }
}

impl QuadratureConfig {
    pub fn centered(mut self, center: f64) -> Self {
        self.center = center;
        self
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn with_breakpoints(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        self.breakpoints.extend(points);
        self
    }

    pub fn with_tolerances(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegralResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub subdivisions: usize,
}

struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    roundoff: f64,
    order: usize,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.order.cmp(&self.order))
    }
}

fn kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<(Complex64, f64, f64)>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let fc = f(mid)?;
    let mut k = fc * WGK[10];
    let mut g = Complex64::new(0.0, 0.0);
    let mut abs = fc.norm() * WGK[10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(mid - dx)?;
        let f2 = f(mid + dx)?;
        k += (f1 + f2) * WGK[j];
        abs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            g += (f1 + f2) * WG[j / 2];
        }
    }
    let value = k * half;
    let raw = ((k - g) * half).norm();
    let floor = 50.0 * f64::EPSILON * abs * half.abs();
    Ok((value, raw.max(floor), floor))
}

fn refine<F>(f: &mut F, cuts: &[f64], cfg: &QuadratureConfig) -> Result<IntegralResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let mut heap = BinaryHeap::new();
    let mut counter = 0usize;
    for w in cuts.windows(2) {
        if w[1] > w[0] {
            let (value, error, roundoff) = kronrod(f, w[0], w[1])?;
            heap.push(Segment {
                a: w[0],
                b: w[1],
                value,
                error,
                roundoff,
                order: counter,
            });
            counter += 1;
        }
    }
    let mut subdivisions = 0usize;
    loop {
        let mut segments: Vec<&Segment> = heap.iter().collect();
        segments.sort_by(|x, y| x.a.total_cmp(&y.a));
        let value: Complex64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        let roundoff: f64 = segments.iter().map(|s| s.roundoff).sum();
        // An estimate dominated by rounding cannot be improved by bisection.
        if error <= cfg.abs_tol.max(cfg.rel_tol * value.norm()) || error <= 1.5 * roundoff {
            return Ok(IntegralResult {
                value,
                error_estimate: error,
                subdivisions,
            });
        }
        if subdivisions >= cfg.max_subdivisions {
            return Err(Error::QuadratureFailure {
                value,
                error_estimate: error,
                subdivisions,
            });
        }
        let worst = match heap.pop() {
            Some(s) => s,
            None => {
                return Ok(IntegralResult {
                    value,
                    error_estimate: error,
                    subdivisions,
                })
            }
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 1e-15 * (1.0 + mid.abs()) {
            return Err(Error::SingularityUnresolved {
                location: mid,
                error_estimate: error,
            });
        }
        for (a, b) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error, roundoff) = kronrod(f, a, b)?;
            heap.push(Segment {
                a,
                b,
                value,
                error,
                roundoff,
                order: counter,
            });
            counter += 1;
        }
        subdivisions += 1;
    }
}

fn sorted_cuts(a: f64, b: f64, inner: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut cuts = vec![a, b];
    cuts.extend(inner.into_iter().filter(|x| *x > a && *x < b));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts
}

/// Adaptive integral over `[a, b]`; breakpoints of the config inside the interval are honoured.
pub fn integrate_interval<F>(mut f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<IntegralResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("interval [{a}, {b}] is not finite")));
    }
    if a == b {
        return Ok(IntegralResult {
            value: Complex64::new(0.0, 0.0),
            error_estimate: 0.0,
            subdivisions: 0,
        });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let cuts = sorted_cuts(lo, hi, cfg.breakpoints.iter().copied());
    let mut r = refine(&mut f, &cuts, cfg)?;
    r.value *= sign;
    Ok(r)
}

/// Integral over the real line through `t = center + scale * tan(theta)`.
pub fn integrate_real_line<F>(mut f: F, cfg: &QuadratureConfig) -> Result<IntegralResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let half_pi = std::f64::consts::FRAC_PI_2;
    let (c, s) = (cfg.center, cfg.scale);
    let thetas = cfg.breakpoints.iter().map(|x| ((x - c) / s).atan()).chain([0.0]);
    let cuts = sorted_cuts(-half_pi, half_pi, thetas);
    let mut g = |theta: f64| -> Result<Complex64> {
        let cos = theta.cos();
        if cos <= 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let t = c + s * theta.tan();
        Ok(f(t)? * (s / (cos * cos)))
    };
    refine(&mut g, &cuts, cfg)
}

/// `<f, g>_2 = int f conj(g) dt`.
pub fn l2_pairing<F, G>(mut f: F, mut g: G, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F: FnMut(f64) -> Result<Complex64>,
    G: FnMut(f64) -> Result<Complex64>,
{
    integrate_real_line(|t| Ok(f(t)? * g(t)?.conj()), cfg).map(|r| r.value)
}

/// `int f conj(g) rho dt`; rho vanishes outside the dip supports, so only those are integrated.
pub fn rho_pairing<F, G>(mut f: F, mut g: G, b: &UnitBallFunction, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F: FnMut(f64) -> Result<Complex64>,
    G: FnMut(f64) -> Result<Complex64>,
{
    rho_integral(|t| Ok(f(t)? * g(t)?.conj()), b, cfg).map(|r| r.value)
}

fn rho_integral<F>(mut f: F, b: &UnitBallFunction, cfg: &QuadratureConfig) -> Result<IntegralResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let mut total = IntegralResult {
        value: Complex64::new(0.0, 0.0),
        error_estimate: 0.0,
        subdivisions: 0,
    };
    for (lo, hi) in b.rho_support() {
        let r = integrate_interval(
            |t| {
                let rho = b.rho(t)?;
                if rho == 0.0 {
                    Ok(Complex64::new(0.0, 0.0))
                } else {
                    Ok(f(t)? * rho)
                }
            },
            lo,
            hi,
            cfg,
        )?;
        total.value += r.value;
        total.error_estimate += r.error_estimate;
        total.subdivisions += r.subdivisions;
    }
    Ok(total)
}

/// The two integrals of a representation and their sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Representation {
    pub value: Complex64,
    pub l2_part: Complex64,
    pub rho_part: Complex64,
    pub error_estimate: f64,
    pub rho_skipped: bool,
}

fn represent(
    b: &UnitBallFunction,
    f: &Kernel,
    target: &Kernel,
    cfg: &QuadratureConfig,
    feature: f64,
) -> Result<Representation> {
    let mut cfg = cfg.clone();
    cfg.center = feature;
    cfg.breakpoints.push(feature);
    for p in f.spec().base.real_features() {
        cfg.breakpoints.push(p);
    }
    let l2 = integrate_real_line(
        |t| {
            let x = Complex64::new(t, 0.0);
            Ok(f.eval(x)?.value * target.eval(x)?.value.conj())
        },
        &cfg,
    )?;
    let skip = cfg.skip_rho_when_inner && b.is_inner();
    let rho = if skip {
        IntegralResult {
            value: Complex64::new(0.0, 0.0),
            error_estimate: 0.0,
            subdivisions: 0,
        }
    } else {
        rho_integral(|t| Ok(f.rho(t)? * target.rho(t)?.conj()), b, &cfg)?
    };
    Ok(Representation {
        value: l2.value + rho.value,
        l2_part: l2.value,
        rho_part: rho.value,
        error_estimate: l2.error_estimate + rho.error_estimate,
        rho_skipped: skip,
    })
}

/// `int f conj(k^b_{w,n}) + int g rho conj(k^rho_{w,n})` for `f = k^b_{source}`, `g = k^rho_{source}`.
pub fn representation_interior(
    b: &UnitBallFunction,
    source: &KernelSpec,
    omega: &ExactComplex,
    n: usize,
    cfg: &QuadratureConfig,
) -> Result<Representation> {
    let f = Kernel::new(b, source.clone())?;
    let target = Kernel::new(b, KernelSpec::interior(omega.clone(), n)?)?;
    represent(b, &f, &target, cfg, omega.value().re)
}

/// Boundary version at `x0`; the caller is responsible for the condition at `(x0, n)`.
pub fn representation_boundary(
    b: &UnitBallFunction,
    source: &KernelSpec,
    x0: &crate::real::ExactReal,
    n: usize,
    cfg: &QuadratureConfig,
) -> Result<Representation> {
    let f = Kernel::new(b, source.clone())?;
    let target = Kernel::new(b, KernelSpec::boundary(x0.clone(), n))?;
    represent(b, &f, &target, cfg, x0.value())
}
