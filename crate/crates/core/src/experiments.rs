//! Experiments at a boundary point: the Ahern-Clark condition, coefficient identities,
//! lambda relations, norm convergence along `x0 + it`, the odd-`s` probe and the Taylor
//! remainder of `b`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::analytic::{DerivativeJet, ExactComplex, Factor, UnitBallFunction};
use crate::combinatorics::{binomial, factorial};
use crate::error::{Error, Result};
use crate::kernels::{difference_norm_sq, norm_boundary_reduced, norm_sq_boundary, Arithmetic, Precision};
use crate::quadrature::{integrate_interval, QuadratureConfig};
use crate::real::ExactReal;
use crate::scalar::{rational_to_f64, Scalar};

/// `t = 2^-k`, `k = 1..=12`.
pub fn default_schedule() -> Vec<f64> {
    (1..=12).map(|k| 2f64.powi(-k)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub blaschke_term: f64,
    #[serde(skip)]
    pub blaschke_exact: BigRational,
    pub singular_term: f64,
    pub log_term: f64,
    pub log_error: f64,
    pub total: f64,
    pub finite: bool,
    /// Caller-supplied bound on a truncated infinite product, copied from the function.
    pub tail_bound: Option<f64>,
}

fn rational_pow(x: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

/// The three sums of the Ahern-Clark condition at `(x0, n)`.
pub fn ahern_clark_report(b: &UnitBallFunction, x0: &ExactReal, n: usize) -> ConditionReport {
    let x = x0.exact();
    let mut blaschke = BigRational::zero();
    let mut singular = BigRational::zero();
    let mut singular_infinite = false;
    for f in b.factors() {
        match f {
            Factor::Blaschke { zero, .. } => {
                let dx = zero.re.exact() - x;
                let y = zero.im.exact();
                let dist_sq = &dx * &dx + y * y;
                blaschke += y / rational_pow(&dist_sq, n + 1);
            }
            Factor::PointMass { location, mass } => {
                let dx = location.exact() - x;
                if dx.is_zero() {
                    singular_infinite = true;
                } else {
                    singular += mass.exact() / rational_pow(&(&dx * &dx), n + 1);
                }
            }
            _ => {}
        }
    }
    let (log_term, log_error) = log_term(b, x0.value(), n);
    let blaschke_term = rational_to_f64(&blaschke);
    let singular_term = if singular_infinite {
        f64::INFINITY
    } else {
        rational_to_f64(&singular)
    };
    let total = blaschke_term + singular_term + log_term;
    ConditionReport {
        blaschke_term,
        blaschke_exact: blaschke,
        singular_term,
        log_term,
        log_error,
        total,
        finite: total.is_finite(),
        tail_bound: b.tail_bound(),
    }
}

fn log_term(b: &UnitBallFunction, x0: f64, n: usize) -> (f64, f64) {
    let mut total = 0.0;
    let mut error = 0.0;
    let cfg = QuadratureConfig::default().with_tolerances(1e-15, 1e-10);
    for (lo, hi) in b.rho_support() {
        if lo < x0 && x0 < hi && b.boundary_log_modulus(x0) != 0.0 {
            return (f64::INFINITY, 0.0);
        }
        let f = |t: f64| {
            let d = (t - x0).abs();
            let g = b.boundary_log_modulus(t).abs();
            if g == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            if d == 0.0 {
                return Err(Error::Singular);
            }
            Ok(Complex64::new(g / d.powi(2 * n as i32 + 2), 0.0))
        };
        let mut pieces = vec![lo, hi];
        if lo < x0 && x0 < hi {
            pieces.insert(1, x0);
        }
        for w in pieces.windows(2) {
            match integrate_interval(f, w[0], w[1], &cfg) {
                Ok(r) => {
                    total += r.value.re;
                    error += r.error_estimate;
                }
                Err(_) => return (f64::INFINITY, 0.0),
            }
        }
    }
    (total, error)
}

/// A residual indexed by the `l` (or `s`) it belongs to.
#[derive(Clone, Debug, PartialEq)]
pub struct IndexedValue<T> {
    pub index: usize,
    pub value: T,
}

/// `1 - |a_0|^2` (index 0) and `sum_{q<=l} a_{l-q} conj(a_q)` for `1 <= l <= n` and even
/// `l` in `(n, 2n]`.
pub fn coefficient_identities<T: Scalar>(a: &[T], n: usize) -> Result<Vec<IndexedValue<T>>> {
    if a.len() < 2 * n + 1 {
        return Err(Error::Domain(format!("need Taylor coefficients up to order {}", 2 * n)));
    }
    let mut out = vec![IndexedValue {
        index: 0,
        value: T::one() - a[0].clone() * a[0].conj(),
    }];
    for l in (1..=n).chain((n + 1..=2 * n).filter(|l| l % 2 == 0)) {
        out.push(IndexedValue {
            index: l,
            value: autocorrelation(a, l),
        });
    }
    Ok(out)
}

/// `sum_{r=0}^{s} a_r conj(a_{s-r})`.
pub fn autocorrelation<T: Scalar>(a: &[T], s: usize) -> T {
    (0..=s).fold(T::zero(), |acc, r| acc + a[r].clone() * a[s - r].conj())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationCheck {
    pub label: String,
    pub residual: f64,
    pub exact_zero: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LambdaSuite<T> {
    pub lambdas: Vec<T>,
    pub relations: Vec<RelationCheck>,
    /// The residual of each relation, in the same order.
    pub residuals: Vec<T>,
}

impl<T> LambdaSuite<T> {
    pub fn pass(&self) -> bool {
        self.relations.iter().all(|r| r.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.relations.iter().map(|r| r.residual).fold(0.0, f64::max)
    }
}

fn relation<T: Scalar>(label: String, residual: T, scale: f64, tol: f64) -> RelationCheck {
    let exact_zero = residual.is_exactly_zero();
    let r = residual.magnitude();
    RelationCheck {
        label,
        residual: r,
        exact_zero,
        pass: exact_zero || r <= tol * scale.max(1.0),
    }
}

/// All `lambda_{s,n}` for `s = 0..=2n+1` with the relations they satisfy under the condition:
/// `(-1)^n (2n)!/n! = n! lambda_0`, `lambda_s = 0` for `1 <= s <= 2n`, and
/// `lambda_{2n+1} = (-1)^{n+1} 2^{2n+2} R / n!^2` with `R` the reduced boundary norm.
pub fn lambda_suite<T: Scalar>(a: &[T], n: usize, tol: f64) -> Result<LambdaSuite<T>> {
    if a.len() < 2 * n + 2 {
        return Err(Error::Domain(format!("need Taylor coefficients up to order {}", 2 * n + 1)));
    }
    let lambdas: Vec<T> = (0..=2 * n + 1).map(|s| crate::kernels::lambda_coeff(a, s, n)).collect();
    let fact = factorial(n);
    let mut lead = factorial(2 * n) / &fact;
    if n % 2 == 1 {
        lead = -lead;
    }
    let lead_f = lead.to_string().parse::<f64>().unwrap_or(f64::INFINITY).abs();
    let mut residuals = vec![T::from_integer(&lead) - lambdas[0].scale_int(&fact)];
    let mut relations = vec![relation("lambda_0".into(), residuals[0].clone(), lead_f, tol)];
    for (s, l) in lambdas.iter().enumerate().take(2 * n + 1).skip(1) {
        relations.push(relation(format!("lambda_{s}"), l.clone(), lead_f, tol));
        residuals.push(l.clone());
    }
    let reduced = norm_boundary_reduced(a, n);
    let mut k: BigInt = BigInt::one() << (2 * n + 2);
    if n.is_multiple_of(2) {
        k = -k;
    }
    let predicted = reduced.scale_int(&k) / T::from_integer(&(&fact * &fact));
    let top = lambdas[2 * n + 1].clone();
    let scale = top.magnitude().max(predicted.magnitude());
    let last = top - predicted;
    relations.push(relation(format!("lambda_{}_norm", 2 * n + 1), last.clone(), scale, tol));
    residuals.push(last);
    Ok(LambdaSuite {
        lambdas,
        relations,
        residuals,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub t: f64,
    pub norm_sq_omega: f64,
    pub difference_sq: f64,
    #[serde(skip)]
    pub exact_difference: Option<BigRational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceTrace {
    pub rows: Vec<ConvergenceRow>,
    /// `||k_{x0,n}||^2`, the limit of the interior norms.
    pub limit: f64,
    pub arithmetic: Arithmetic,
}

impl ConvergenceTrace {
    pub fn final_difference(&self) -> Option<f64> {
        self.rows.last().map(|r| r.difference_sq)
    }

    /// The difference column is strictly decreasing over the last `k` rows. Exact rows are
    /// compared exactly.
    pub fn decreasing_tail(&self, k: usize) -> bool {
        let start = self.rows.len().saturating_sub(k);
        self.rows[start..].windows(2).all(|w| match (&w[0].exact_difference, &w[1].exact_difference) {
            (Some(a), Some(b)) => b < a,
            _ => w[1].difference_sq < w[0].difference_sq,
        })
    }
}

/// Interior and difference norms along `x0 + it` for `t` in the schedule.
pub fn norm_convergence_trace(
    b: &UnitBallFunction,
    x0: &ExactReal,
    n: usize,
    schedule: &[f64],
    precision: Precision,
) -> Result<ConvergenceTrace> {
    if schedule.windows(2).any(|w| !(w[1] < w[0])) || schedule.iter().any(|t| !(*t > 0.0)) {
        return Err(Error::Domain("schedule must be positive and strictly decreasing".into()));
    }
    let mut rows = Vec::with_capacity(schedule.len());
    let mut arithmetic = Arithmetic::Double;
    for &t in schedule {
        let omega = ExactComplex::new(x0.clone(), ExactReal::from(t));
        let d = difference_norm_sq(b, x0, &omega, n, precision)?;
        arithmetic = d.arithmetic;
        rows.push(ConvergenceRow {
            t,
            norm_sq_omega: d.norm_sq_omega,
            difference_sq: d.difference_sq,
            exact_difference: d.exact_difference,
        });
    }
    let limit = match arithmetic {
        Arithmetic::Exact => {
            let jet = b
                .without_phases()
                .exact_jet(&ExactComplex::real(x0.clone()), 2 * n + 1)?;
            crate::kernels::norm_sq_boundary_exact(&jet, n).map(|r| rational_to_f64(&r) / std::f64::consts::PI)?
        }
        _ => norm_sq_boundary(&boundary_jet(b, x0.value(), 2 * n + 1)?, n)?,
    };
    Ok(ConvergenceTrace { rows, limit, arithmetic })
}

/// Jet of `b` at a boundary point: direct when `b` continues across the line there, by radial
/// extrapolation otherwise.
pub fn boundary_jet(b: &UnitBallFunction, x0: f64, order: usize) -> Result<DerivativeJet> {
    match b.derivative_jet(Complex64::new(x0, 0.0), order) {
        Ok(j) => Ok(j),
        Err(Error::SingularPoint(_)) | Err(Error::Singular) => {
            Ok(b.radial_jet_extrapolate(x0, order, &default_schedule())?.jet)
        }
        Err(e) => Err(e),
    }
}

/// The sums `sum_{r<=s} a_r conj(a_{s-r})` for odd `s` in `(n, 2n]`, reported without assertion.
pub fn odd_s_probe<T: Scalar>(a: &[T], n: usize) -> Result<Vec<IndexedValue<T>>> {
    if a.len() < 2 * n + 1 {
        return Err(Error::Domain(format!("need Taylor coefficients up to order {}", 2 * n)));
    }
    Ok((n + 1..=2 * n)
        .filter(|s| s % 2 == 1)
        .map(|s| IndexedValue {
            index: s,
            value: autocorrelation(a, s),
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RemainderRow {
    pub t: f64,
    pub epsilon: Complex64,
    pub magnitude: f64,
}

/// `eps(x0 + it) = (b(x0 + it) - sum_{p<=n} a_p (it)^p) / (it)^n` along the schedule.
pub fn taylor_remainder_check(b: &UnitBallFunction, x0: f64, n: usize, schedule: &[f64]) -> Result<Vec<RemainderRow>> {
    let a = boundary_jet(b, x0, n)?.taylor_coeffs();
    schedule
        .iter()
        .map(|&t| {
            let d = Complex64::new(0.0, t);
            let poly = a.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * d + c);
            let eps = (b.eval(Complex64::new(x0, t))? - poly) / d.powi(n as i32);
            Ok(RemainderRow {
                t,
                epsilon: eps,
                magnitude: eps.norm(),
            })
        })
        .collect()
}

/// `binomial(2n, n)` with the sign `(-1)^n`, the value of `lambda_{0,n}` under the condition.
pub fn lambda_zero_expected(n: usize) -> BigInt {
    let c = binomial(2 * n as i64, n as i64);
    if n % 2 == 1 {
        -c
    } else {
        c
    }
}
