//! The derivative kernels `k^b_{w,n}` and `k^rho_{w,n}`, their `z`-derivatives, the
//! auxiliary functions `phi` and `h`, the two norm formulas and the lambda sums.
//!
//! Quantities that carry a factor `1/pi` are computed in reduced form `R` with
//! `value = R / pi`, so the same generic code runs over doubles, binary big floats
//! and exact Gaussian rationals.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::analytic::{DerivativeJet, ExactComplex, UnitBallFunction};
use crate::combinatorics::{binomial, factorial};
use crate::error::{Error, Result};
use crate::real::ExactReal;
use crate::scalar::{BigComplex, GaussianRational, Scalar};

/// Extra Taylor orders kept for the removable-singularity series at a boundary base point.
pub const REMOVABLE_EXTRA_ORDERS: usize = 28;

/// Name of the environment variable overriding the extended-precision default.
pub const PRECISION_ENV: &str = "DBRK_PRECISION_BITS";

#[derive(Clone, Debug, PartialEq)]
pub enum KernelBase {
    Interior(ExactComplex),
    Boundary(ExactReal),
}

impl KernelBase {
    /// `conj(w)` for an interior base, `x0` for a boundary one.
    pub fn pole(&self) -> Complex64 {
        match self {
            KernelBase::Interior(w) => w.value().conj(),
            KernelBase::Boundary(x) => Complex64::new(x.value(), 0.0),
        }
    }

    pub fn point(&self) -> Complex64 {
        match self {
            KernelBase::Interior(w) => w.value(),
            KernelBase::Boundary(x) => Complex64::new(x.value(), 0.0),
        }
    }

    /// Real abscissae where kernels built on this base have their sharpest features.
    pub fn real_features(&self) -> Vec<f64> {
        vec![self.point().re]
    }

    fn exact_point(&self) -> ExactComplex {
        match self {
            KernelBase::Interior(w) => w.clone(),
            KernelBase::Boundary(x) => ExactComplex::real(x.clone()),
        }
    }

    fn exact_pole(&self) -> GaussianRational {
        match self {
            KernelBase::Interior(w) => w.to_gaussian().conj(),
            KernelBase::Boundary(x) => GaussianRational::real(x.exact().clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelSpec {
    pub base: KernelBase,
    pub n: usize,
}

impl KernelSpec {
    pub fn interior(omega: ExactComplex, n: usize) -> Result<Self> {
        if omega.im.value() <= 0.0 {
            return Err(Error::Domain(format!("interior base {:?} is not in the upper half-plane", omega.value())));
        }
        Ok(KernelSpec {
            base: KernelBase::Interior(omega),
            n,
        })
    }

    pub fn boundary(x0: ExactReal, n: usize) -> Self {
        KernelSpec {
            base: KernelBase::Boundary(x0),
            n,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelValue {
    pub value: Complex64,
    /// The value came from the Taylor series of `phi` around the boundary base point.
    pub removable: bool,
}

#[derive(Clone, Debug)]
struct RemovableSeries {
    window: f64,
    /// Taylor coefficients of `phi` at `x0`.
    phi: Vec<Complex64>,
}

/// A kernel prepared for repeated evaluation: the conjugated Taylor data at the base
/// point and, for boundary bases, the series used near `x0`.
#[derive(Clone, Debug)]
pub struct Kernel<'a> {
    b: &'a UnitBallFunction,
    spec: KernelSpec,
    pole: Complex64,
    conj_a: Vec<Complex64>,
    series: Option<RemovableSeries>,
}

fn kernel_constant(n: usize) -> Complex64 {
    Complex64::new(0.0, factorial_f64(n) / (2.0 * PI))
}

fn factorial_f64(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `x (x-1) ... (x-l+1)`.
fn falling(x: i64, l: usize) -> BigInt {
    (0..l as i64).fold(BigInt::from(1), |acc, j| acc * (x - j))
}

impl<'a> Kernel<'a> {
    pub fn new(b: &'a UnitBallFunction, spec: KernelSpec) -> Result<Self> {
        let n = spec.n;
        match &spec.base {
            KernelBase::Interior(w) => {
                let jet = b.derivative_jet(w.value(), n)?;
                Kernel::with_jet(b, spec, &jet)
            }
            KernelBase::Boundary(x0) => {
                let x = Complex64::new(x0.value(), 0.0);
                let long = 2 * n + 3 + REMOVABLE_EXTRA_ORDERS;
                let jet = if b.analytic_radius(x) > 0.0 {
                    b.derivative_jet(x, long).or_else(|_| b.derivative_jet(x, n))?
                } else {
                    b.derivative_jet(x, n)?
                };
                Kernel::with_jet(b, spec, &jet)
            }
        }
    }

    /// Uses a caller-supplied jet at the base point; it must have order at least `n`.
    pub fn with_jet(b: &'a UnitBallFunction, spec: KernelSpec, jet: &DerivativeJet) -> Result<Self> {
        let n = spec.n;
        jet.require(n)?;
        let a = jet.taylor_coeffs();
        let conj_a: Vec<Complex64> = a[..=n].iter().map(|c| c.conj()).collect();
        let pole = spec.base.pole();
        let series = match &spec.base {
            KernelBase::Boundary(_) if a.len() > n + 1 + REMOVABLE_EXTRA_ORDERS => {
                let radius = b.analytic_radius(pole);
                Some(RemovableSeries {
                    window: radius.min(1.0) / 4.0,
                    phi: phi_taylor(&a, n, a.len() - 1),
                })
            }
            _ => None,
        };
        Ok(Kernel {
            b,
            spec,
            pole,
            conj_a,
            series,
        })
    }

    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }

    /// `conj(a_p)` at the base point, `p = 0..=n`.
    pub fn conj_taylor(&self) -> &[Complex64] {
        &self.conj_a
    }

    fn partial_sum(&self, d: Complex64) -> Complex64 {
        self.conj_a.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * d + c)
    }

    fn series_for(&self, d: Complex64, q: usize) -> Option<&RemovableSeries> {
        let s = self.series.as_ref()?;
        let needed = q + self.spec.n + 1 + 8;
        if d.norm() < s.window && s.phi.len() > needed {
            Some(s)
        } else {
            None
        }
    }

    /// `k^b(z)`.
    pub fn eval(&self, z: Complex64) -> Result<KernelValue> {
        self.z_derivative(z, 0)
    }

    /// `k^rho(t)` on the line.
    pub fn rho(&self, t: f64) -> Result<Complex64> {
        let n = self.spec.n;
        let d = Complex64::new(t, 0.0) - self.pole;
        if d.norm() == 0.0 {
            return Err(Error::Singular);
        }
        Ok(kernel_constant(n) * self.partial_sum(d) / d.powi(n as i32 + 1))
    }

    /// `q`-th derivative of `k^b` in `z`.
    pub fn z_derivative(&self, z: Complex64, q: usize) -> Result<KernelValue> {
        let n = self.spec.n;
        let c = kernel_constant(n);
        let d = z - self.pole;
        if let Some(s) = self.series_for(d, q) {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut dp = Complex64::new(1.0, 0.0);
            for j in 0..s.phi.len() - q - n - 1 {
                let ratio: f64 = ((j + 1)..=(j + q)).map(|k| k as f64).product();
                acc += s.phi[j + q + n + 1] * ratio * dp;
                dp *= d;
            }
            return Ok(KernelValue {
                value: c * acc,
                removable: true,
            });
        }
        if d.norm() == 0.0 {
            return Err(Error::Singular);
        }
        let bj = self.b.derivative_jet(z, q)?;
        let bracket = kernel_bracket(&self.conj_a, d, &bj.values, n, q);
        Ok(KernelValue {
            value: c * bracket,
            removable: false,
        })
    }
}

/// `d^q/dz^q [D^{-n-1} - b(z) sum_p conj(a_p) D^{p-n-1}]` with `D = z - pole`, from the
/// values `b^(k)(z)`, `k <= q`.
pub fn kernel_bracket<T: Scalar>(conj_a: &[T], d: T, b_values: &[T], n: usize, q: usize) -> T {
    let ni = n as i64;
    let mut acc = T::from_integer(&falling(-ni - 1, q)) * d.powi(-ni - 1 - q as i64);
    for (p, ca) in conj_a.iter().enumerate().take(n + 1) {
        if ca.is_exactly_zero() {
            continue;
        }
        let mut inner = T::zero();
        for l in 0..=q {
            let coeff = binomial(q as i64, l as i64) * falling(p as i64 - ni - 1, l);
            if coeff.is_zero() {
                continue;
            }
            inner = inner + T::from_integer(&coeff) * d.powi(p as i64 - ni - 1 - l as i64) * b_values[q - l].clone();
        }
        acc = acc - ca.clone() * inner;
    }
    acc
}

/// `k^b_{w,n}(z)` with an explicit jet at the base point.
pub fn kernel_b(b: &UnitBallFunction, spec: &KernelSpec, jet: &DerivativeJet, z: Complex64) -> Result<KernelValue> {
    Kernel::with_jet(b, spec.clone(), jet)?.eval(z)
}

/// `k^rho_{w,n}(t)` with an explicit jet at the base point.
pub fn kernel_rho(b: &UnitBallFunction, spec: &KernelSpec, jet: &DerivativeJet, t: f64) -> Result<Complex64> {
    Kernel::with_jet(b, spec.clone(), jet)?.rho(t)
}

/// `q`-th `z`-derivative of `k^b_{w,n}` with an explicit jet at the base point.
pub fn kernel_b_z_derivative(
    b: &UnitBallFunction,
    spec: &KernelSpec,
    jet: &DerivativeJet,
    z: Complex64,
    q: usize,
) -> Result<KernelValue> {
    Kernel::with_jet(b, spec.clone(), jet)?.z_derivative(z, q)
}

/// Taylor coefficients of `phi(z) = 1 - b(z) sum_{p<=n} conj(a_p)(z-x0)^p` at `x0`.
pub fn phi_taylor<T: Scalar>(a: &[T], n: usize, order: usize) -> Vec<T> {
    (0..=order)
        .map(|l| {
            let mut acc = if l == 0 { T::one() } else { T::zero() };
            for p in 0..=l.min(n) {
                if p < a.len() && l - p < a.len() {
                    acc = acc - a[p].conj() * a[l - p].clone();
                }
            }
            acc
        })
        .collect()
}

/// Derivatives `phi^(l)(x0)`, `l = 0..=order`, from the Taylor coefficients of `b` at `x0`.
pub fn phi_jet<T: Scalar>(a: &[T], n: usize, order: usize) -> Vec<T> {
    phi_taylor(a, n, order)
        .into_iter()
        .enumerate()
        .map(|(l, c)| c.scale_int(&factorial(l)))
        .collect()
}

/// `h_{x0,n}(z) = (b(z) - sum_{p<=n} a_p (z-x0)^p) / (z-x0)^{n+1}`.
pub fn h_function(b: &UnitBallFunction, x0: f64, n: usize, jet: &DerivativeJet, z: Complex64) -> Result<Complex64> {
    jet.require(n)?;
    let d = z - x0;
    if d.norm() == 0.0 {
        return Err(Error::Singular);
    }
    let a = jet.taylor_coeffs();
    let poly = a[..=n].iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * d + c);
    Ok((b.eval(z)? - poly) / d.powi(n as i32 + 1))
}

/// `2 i pi sum_p a_{n-p}/p! k^b_{x0,p}(z)`, which equals `h_{x0,n}(z)` under the condition at `(x0, n)`.
pub fn h_expansion(b: &UnitBallFunction, x0: &ExactReal, n: usize, z: Complex64) -> Result<Complex64> {
    let a = b.taylor_coeffs(x0.value(), n)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..=n {
        let k = Kernel::new(b, KernelSpec::boundary(x0.clone(), p))?.eval(z)?.value;
        acc += a[n - p] / factorial_f64(p) * k;
    }
    Ok(Complex64::new(0.0, 2.0 * PI) * acc)
}

/// Reduced boundary norm `(n!^2 / 2i) sum_{p<=n} conj(a_p) a_{2n+1-p}`; the norm is this over pi.
pub fn norm_boundary_reduced<T: Scalar>(a: &[T], n: usize) -> T {
    let mut acc = T::zero();
    for p in 0..=n {
        acc = acc + a[p].conj() * a[2 * n + 1 - p].clone();
    }
    let f = factorial(n);
    acc.scale_int(&(&f * &f)) / (T::from_i64(2) * T::imag_unit())
}

fn checked_norm(value: Complex64, scale: f64, rel: f64) -> Result<f64> {
    let tol = rel * scale + f64::MIN_POSITIVE;
    if value.im.abs() > tol {
        return Err(Error::LargeImaginary {
            real: value.re,
            imag: value.im,
        });
    }
    if value.re < -tol {
        return Err(Error::NegativeNorm { value: value.re });
    }
    Ok(value.re.max(0.0))
}

/// `||k^b_{x0,n}||^2` from a double-precision jet of order `2n+1` at `x0`.
pub fn norm_sq_boundary(jet: &DerivativeJet, n: usize) -> Result<f64> {
    jet.require(2 * n + 1)?;
    let a = jet.taylor_coeffs();
    let value = norm_boundary_reduced(&a, n) / PI;
    let f = factorial_f64(n);
    let scale = f * f / (2.0 * PI) * (0..=n).map(|p| (a[p] * a[2 * n + 1 - p]).norm()).sum::<f64>();
    checked_norm(value, scale, 1e-8)
}

/// Exact reduced boundary norm; the norm is the returned rational over pi.
pub fn norm_sq_boundary_exact(jet: &DerivativeJet<GaussianRational>, n: usize) -> Result<BigRational> {
    jet.require(2 * n + 1)?;
    let r = norm_boundary_reduced(&jet.taylor_coeffs(), n);
    if !r.im.is_zero() {
        return Err(Error::LargeImaginary {
            real: r.to_complex64().re,
            imag: r.to_complex64().im,
        });
    }
    if r.re < BigRational::zero() {
        return Err(Error::NegativeNorm { value: r.to_complex64().re });
    }
    Ok(r.re)
}

/// Reduced interior norm from the expansion over `(w - conj w)^{2n+1}`, with the size of the
/// largest term in the numerator for cancellation accounting.
pub fn norm_interior_reduced<T: Scalar>(jet: &DerivativeJet<T>, omega: &T, n: usize) -> (T, f64, f64) {
    let ni = n as i64;
    let a = jet.taylor_coeffs();
    let delta = omega.clone() - omega.conj();
    let lead = factorial(2 * n) / factorial(n);
    let lead = if n % 2 == 1 { -lead } else { lead };
    let mut numer = T::from_integer(&lead);
    let mut largest = numer.magnitude();
    for p in 0..=n {
        let ca = a[p].conj();
        for l in 0..=n {
            let ratio = factorial(n - p + l) / factorial(n - p);
            let mut coeff = binomial(ni, l as i64) * ratio;
            if l % 2 == 1 {
                coeff = -coeff;
            }
            let term = T::from_integer(&coeff)
                * delta.powi((n + p - l) as i64)
                * ca.clone()
                * jet.values[n - l].clone();
            largest = largest.max(term.magnitude());
            numer = numer - term;
        }
    }
    let reduced = numer.clone() * T::imag_unit().scale_int(&factorial(n))
        / (T::from_i64(2) * delta.powi(2 * ni + 1));
    let residual = numer.magnitude();
    (reduced, largest, residual)
}

/// Cancellation in bits between the largest term and the result.
fn lost_bits(largest: f64, result: f64) -> f64 {
    if largest == 0.0 {
        0.0
    } else if result == 0.0 {
        f64::INFINITY
    } else {
        (largest / result).log2().max(0.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Double,
    Extended(u32),
    Exact,
    /// Exact for Blaschke-only functions (after stripping phases), extended otherwise.
    Auto,
}

/// The arithmetic actually used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arithmetic {
    Double,
    Extended(u32),
    Exact,
}

impl std::fmt::Display for Arithmetic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Arithmetic::Double => f.write_str("double"),
            Arithmetic::Extended(bits) => write!(f, "extended-{bits}"),
            Arithmetic::Exact => f.write_str("exact"),
        }
    }
}

/// `ceil((2n+1) log2(1/t)) + 64` bits plus a double-width working margin, or the value of
/// `DBRK_PRECISION_BITS` when set.
pub fn default_precision_bits(n: usize, t: f64) -> u32 {
    if let Some(bits) = std::env::var(PRECISION_ENV).ok().and_then(|v| v.trim().parse::<u32>().ok()) {
        return bits.max(64);
    }
    let need = ((2 * n + 1) as f64 * (1.0 / t).log2().max(0.0)).ceil() as u32;
    need + 64 + 53
}

fn resolve(b: &UnitBallFunction, precision: Precision, n: usize, t: f64) -> Arithmetic {
    match precision {
        Precision::Double => Arithmetic::Double,
        Precision::Extended(bits) => Arithmetic::Extended(bits.max(64)),
        Precision::Exact => Arithmetic::Exact,
        Precision::Auto => {
            if b.is_blaschke_only() {
                Arithmetic::Exact
            } else {
                Arithmetic::Extended(default_precision_bits(n, t))
            }
        }
    }
}

/// A norm together with how it was computed.
#[derive(Clone, Debug, PartialEq)]
pub struct NormValue {
    pub value: f64,
    pub arithmetic: Arithmetic,
    pub lost_bits: f64,
    /// The exact reduced value (norm times pi) on the exact path.
    pub exact_reduced: Option<BigRational>,
}

const GUARD_BITS: f64 = 24.0;

fn finish_interior<T: Scalar>(
    reduced: T,
    largest: f64,
    residual: f64,
    bits: u32,
    arithmetic: Arithmetic,
) -> Result<NormValue> {
    let lost = lost_bits(largest, residual);
    if lost > bits as f64 - GUARD_BITS {
        return Err(Error::Cancellation {
            lost_bits: lost,
            available_bits: bits,
        });
    }
    let v = reduced.to_complex64() / PI;
    let rel = 2f64.powf(-(bits as f64 - lost - 8.0)).max(1e-300);
    let value = checked_norm(v, v.norm().max(f64::MIN_POSITIVE), rel.max(4.0 * f64::EPSILON))?;
    Ok(NormValue {
        value,
        arithmetic,
        lost_bits: lost,
        exact_reduced: None,
    })
}

/// `||k^b_{w,n}||^2` for interior `w` from the expansion over `(w - conj w)^{2n+1}`.
pub fn norm_sq_interior(b: &UnitBallFunction, omega: &ExactComplex, n: usize, precision: Precision) -> Result<NormValue> {
    let t = omega.im.value();
    if t <= 0.0 {
        return Err(Error::Domain(format!("{:?} is not in the upper half-plane", omega.value())));
    }
    match resolve(b, precision, n, t) {
        Arithmetic::Exact => {
            let jet = b.without_phases().exact_jet(omega, n)?;
            let (reduced, largest, residual) = norm_interior_reduced(&jet, &omega.to_gaussian(), n);
            if !reduced.im.is_zero() {
                return Err(Error::Internal("exact interior norm is not real".into()));
            }
            if reduced.re < BigRational::zero() {
                return Err(Error::NegativeNorm {
                    value: reduced.to_complex64().re / PI,
                });
            }
            Ok(NormValue {
                value: reduced.to_complex64().re / PI,
                arithmetic: Arithmetic::Exact,
                lost_bits: lost_bits(largest, residual),
                exact_reduced: Some(reduced.re),
            })
        }
        Arithmetic::Extended(bits) => {
            let prec = bits as usize;
            let jet = b.extended_jet(omega, n, prec)?;
            let w = BigComplex::from_gaussian(&omega.to_gaussian(), prec);
            let (reduced, largest, residual) = norm_interior_reduced(&jet, &w, n);
            finish_interior(reduced, largest, residual, bits, Arithmetic::Extended(bits))
        }
        Arithmetic::Double => {
            let jet = b.derivative_jet(omega.value(), n)?;
            let (reduced, largest, residual) = norm_interior_reduced(&jet, &omega.value(), n);
            finish_interior(reduced, largest, residual, 53, Arithmetic::Double)
        }
    }
}

/// `lambda_{s,n}` from the Taylor coefficients `a_0..a_s` at `x0`.
pub fn lambda_coeff<T: Scalar>(a: &[T], s: usize, n: usize) -> T {
    let (ni, si) = (n as i64, s as i64);
    let mut total = T::zero();
    for p in 0..=ni {
        for l in 0..=ni {
            let outer = binomial(ni - p + l, l) << (ni + p - l) as usize;
            if outer.is_zero() {
                continue;
            }
            let mut inner = T::zero();
            for r in 0..=si {
                let c = binomial(r, ni - l) * binomial(si - r, p);
                if c.is_zero() {
                    continue;
                }
                let c = if (si - r) % 2 == 1 { -c } else { c };
                inner = inner + T::from_integer(&c) * a[r as usize].clone() * a[(si - r) as usize].conj();
            }
            let outer = if (p + l) % 2 == 1 { -outer } else { outer };
            total = total + T::from_integer(&outer) * inner;
        }
    }
    T::imag_unit().powi(si) * total
}

/// Reduced cross term `(k^b_{x0,n})^(n)(w)` times `pi`, given `conj(a_p(x0))` and the jet of
/// `b` at `w` of order `n`.
pub fn cross_term_reduced<T: Scalar>(conj_a_x0: &[T], x0: &T, omega: &T, jet_omega: &DerivativeJet<T>, n: usize) -> T {
    let d = omega.clone() - x0.clone();
    let bracket = kernel_bracket(conj_a_x0, d, &jet_omega.values, n, n);
    bracket * T::imag_unit().scale_int(&factorial(n)) / T::from_i64(2)
}

/// `||k_w - k_{x0}||^2` pieces at one radius, all in reduced form (times pi).
#[derive(Clone, Debug, PartialEq)]
pub struct DifferenceNorm {
    pub norm_sq_omega: f64,
    pub norm_sq_x0: f64,
    pub cross: Complex64,
    pub difference_sq: f64,
    pub arithmetic: Arithmetic,
    pub exact_difference: Option<BigRational>,
}

/// `||k^b_{w,n} - k^b_{x0,n}||^2` through the reproducing identity for the cross term.
pub fn difference_norm_sq(
    b: &UnitBallFunction,
    x0: &ExactReal,
    omega: &ExactComplex,
    n: usize,
    precision: Precision,
) -> Result<DifferenceNorm> {
    let t = omega.im.value();
    if t <= 0.0 {
        return Err(Error::Domain(format!("{:?} is not in the upper half-plane", omega.value())));
    }
    let base = KernelBase::Boundary(x0.clone());
    match resolve(b, precision, n, t) {
        Arithmetic::Exact => {
            let b0 = b.without_phases();
            let jx = b0.exact_jet(&base.exact_point(), 2 * n + 1)?;
            let jw = b0.exact_jet(omega, n)?;
            let w = omega.to_gaussian();
            let (r_w, _, _) = norm_interior_reduced(&jw, &w, n);
            let ax = jx.taylor_coeffs();
            let r_x = norm_boundary_reduced(&ax, n);
            let conj_a: Vec<GaussianRational> = ax[..=n].iter().map(|c| c.conj()).collect();
            let r_c = cross_term_reduced(&conj_a, &base.exact_pole(), &w, &jw, n);
            let diff = r_w.re.clone() + r_x.re.clone() - r_c.re.clone() * BigRational::from_integer(2.into());
            if !r_w.im.is_zero() || !r_x.im.is_zero() {
                return Err(Error::Internal("exact norms are not real".into()));
            }
            Ok(DifferenceNorm {
                norm_sq_omega: r_w.to_complex64().re / PI,
                norm_sq_x0: r_x.to_complex64().re / PI,
                cross: r_c.to_complex64() / PI,
                difference_sq: crate::scalar::rational_to_f64(&diff) / PI,
                arithmetic: Arithmetic::Exact,
                exact_difference: Some(diff),
            })
        }
        Arithmetic::Extended(bits) => {
            let prec = bits as usize;
            let jx = b.extended_jet(&base.exact_point(), 2 * n + 1, prec)?;
            let jw = b.extended_jet(omega, n, prec)?;
            let w = BigComplex::from_gaussian(&omega.to_gaussian(), prec);
            let x = BigComplex::from_gaussian(&base.exact_pole(), prec);
            let (r_w, largest, residual) = norm_interior_reduced(&jw, &w, n);
            let lost = lost_bits(largest, residual);
            if lost > bits as f64 - GUARD_BITS {
                return Err(Error::Cancellation {
                    lost_bits: lost,
                    available_bits: bits,
                });
            }
            let ax = jx.taylor_coeffs();
            let r_x = norm_boundary_reduced(&ax, n);
            let conj_a: Vec<BigComplex> = ax[..=n].iter().map(|c| c.conj()).collect();
            let r_c = cross_term_reduced(&conj_a, &x, &w, &jw, n);
            let two = BigComplex::from_i64(2);
            let diff = r_w.clone() + r_x.clone() - two * BigComplex::new(r_c.re.clone(), astro_zero(), prec);
            Ok(DifferenceNorm {
                norm_sq_omega: r_w.to_complex64().re / PI,
                norm_sq_x0: r_x.to_complex64().re / PI,
                cross: r_c.to_complex64() / PI,
                difference_sq: diff.to_complex64().re / PI,
                arithmetic: Arithmetic::Extended(bits),
                exact_difference: None,
            })
        }
        Arithmetic::Double => {
            let kx = Kernel::new(b, KernelSpec::boundary(x0.clone(), n))?;
            let jx = b.derivative_jet(Complex64::new(x0.value(), 0.0), 2 * n + 1)?;
            let nx = norm_sq_boundary(&jx, n)?;
            let nw = norm_sq_interior(b, omega, n, Precision::Double)?.value;
            let cross = kx.z_derivative(omega.value(), n)?.value;
            Ok(DifferenceNorm {
                norm_sq_omega: nw,
                norm_sq_x0: nx,
                cross,
                difference_sq: nw + nx - 2.0 * cross.re,
                arithmetic: Arithmetic::Double,
                exact_difference: None,
            })
        }
    }
}

fn astro_zero() -> astro_float::BigFloat {
    astro_float::BigFloat::from_u64(0, 64)
}
