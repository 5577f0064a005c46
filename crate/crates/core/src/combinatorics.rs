//! Exact binomial, Pochhammer and terminating hypergeometric arithmetic, and the
//! identity checks used to certify the coefficient sums behind the norm formula.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::real::format_rational;
use crate::scalar::rational_to_f64;

/// `C(n, k)`, zero when `k < 0`, `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Rows `0..=max` of Pascal's triangle, for sums that need many binomials.
#[derive(Clone, Debug)]
pub struct BinomialTable {
    rows: Vec<Vec<BigInt>>,
}

impl BinomialTable {
    pub fn new(max: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max + 1);
        for n in 0..=max {
            let mut row = vec![BigInt::one(); n + 1];
            for k in 1..n {
                row[k] = &rows[n - 1][k - 1] + &rows[n - 1][k];
            }
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn get(&self, n: i64, k: i64) -> BigInt {
        if n < 0 || k < 0 || k > n {
            return BigInt::zero();
        }
        match self.rows.get(n as usize) {
            Some(row) => row[k as usize].clone(),
            None => binomial(n, k),
        }
    }
}

/// Rising factorial `(t)_p`.
pub fn pochhammer(t: &BigRational, p: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut x = t.clone();
    for _ in 0..p {
        acc *= &x;
        x += BigRational::one();
    }
    acc
}

fn nonpositive_integer(q: &BigRational) -> Option<usize> {
    if q.is_integer() && !q.is_positive() {
        q.numer().abs().to_usize()
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum HyperArgument {
    Rational(BigRational),
    Complex(Complex64),
}

/// Parameters of `2F1(a, b; c; z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperSpec {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub z: HyperArgument,
}

impl HyperSpec {
    pub fn rational(a: BigRational, b: BigRational, c: BigRational, z: BigRational) -> Self {
        HyperSpec {
            a,
            b,
            c,
            z: HyperArgument::Rational(z),
        }
    }

    pub fn complex(a: BigRational, b: BigRational, c: BigRational, z: Complex64) -> Self {
        HyperSpec {
            a,
            b,
            c,
            z: HyperArgument::Complex(z),
        }
    }

    /// Degree of the polynomial when `a` or `b` is a non-positive integer.
    pub fn terminating_degree(&self) -> Option<usize> {
        match (nonpositive_integer(&self.a), nonpositive_integer(&self.b)) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (Some(x), None) | (None, Some(x)) => Some(x),
            (None, None) => None,
        }
    }

    fn z_complex(&self) -> Complex64 {
        match &self.z {
            HyperArgument::Rational(q) => Complex64::new(rational_to_f64(q), 0.0),
            HyperArgument::Complex(z) => *z,
        }
    }
}

/// Exact value of a terminating series at a rational argument.
pub fn hyp2f1_exact(spec: &HyperSpec) -> Result<BigRational> {
    let z = match &spec.z {
        HyperArgument::Rational(q) => q,
        HyperArgument::Complex(_) => {
            return Err(Error::Domain("exact evaluation needs a rational argument".into()))
        }
    };
    let degree = spec
        .terminating_degree()
        .ok_or_else(|| Error::Domain("series does not terminate: neither a nor b is a non-positive integer".into()))?;
    let one = BigRational::one();
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for p in 0..degree {
        let pq = BigRational::from_integer(p.into());
        let cp = &spec.c + &pq;
        if cp.is_zero() {
            return Err(Error::ParameterPole { index: p });
        }
        term = term * (&spec.a + &pq) * (&spec.b + &pq) * z / ((&pq + &one) * cp);
        sum += &term;
    }
    Ok(sum)
}

/// Partial sum of the series with a certified (or, on the unit circle, asymptotic) tail bound.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail_bound: f64,
    pub terms: usize,
}

const MAX_SERIES_TERMS: usize = 5_000_000;
/// Terms accumulated in exact arithmetic before falling back to doubles.
const MAX_EXACT_TERMS: usize = 2_000;

pub fn hyp2f1_numeric(spec: &HyperSpec, tol: f64) -> Result<SeriesValue> {
    let a = rational_to_f64(&spec.a);
    let b = rational_to_f64(&spec.b);
    let c = rational_to_f64(&spec.c);
    let z = spec.z_complex();

    if let Some(degree) = spec.terminating_degree() {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for p in 0..degree {
            let cp = &spec.c + BigRational::from_integer(p.into());
            if cp.is_zero() {
                return Err(Error::ParameterPole { index: p });
            }
            let pf = p as f64;
            term = term * (a + pf) * (b + pf) * z / ((pf + 1.0) * (c + pf));
            sum += term;
        }
        return Ok(SeriesValue {
            value: sum,
            tail_bound: 0.0,
            terms: degree + 1,
        });
    }
    if let Some(index) = nonpositive_integer(&spec.c) {
        return Err(Error::ParameterPole { index });
    }

    let r = z.norm();
    let excess = c - a - b;
    let on_circle = (r - 1.0).abs() <= f64::EPSILON;
    if r > 1.0 || (on_circle && excess <= 0.0) {
        return Err(Error::NoConvergence(format!(
            "|z| = {r}, Re(c - a - b) = {excess}"
        )));
    }
    if on_circle && r != 1.0 {
        return Err(Error::NoConvergence(format!("|z| = {r} is too close to 1")));
    }

    let (aa, ab, ac) = (a.abs(), b.abs(), c.abs());
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    // With a rational argument the partial sums are kept exact, so alternating series with
    // large intermediate terms lose nothing to rounding.
    let mut exact = match &spec.z {
        HyperArgument::Rational(zq) if r < 1.0 => Some((zq.clone(), BigRational::one(), BigRational::one())),
        _ => None,
    };
    for p in 0..MAX_SERIES_TERMS {
        let pf = p as f64;
        if pf > ac + 1.0 {
            let bound = if r < 1.0 {
                let q = r * ((pf + aa) / (pf + 1.0)).max(1.0) * (pf + ab) / (pf - ac);
                if q < 1.0 {
                    term.norm() * q / (1.0 - q)
                } else {
                    f64::INFINITY
                }
            } else {
                term.norm() * pf / excess
            };
            if bound < tol {
                if let Some((_, _, total)) = &exact {
                    sum = Complex64::new(rational_to_f64(total), 0.0);
                }
                return Ok(SeriesValue {
                    value: sum,
                    tail_bound: bound,
                    terms: p + 1,
                });
            }
        }
        if p == MAX_EXACT_TERMS {
            if let Some((_, _, total)) = exact.take() {
                sum = Complex64::new(rational_to_f64(&total), 0.0);
            }
        }
        if let Some((zq, tq, total)) = exact.as_mut() {
            let pq = BigRational::from_integer(p.into());
            *tq = &*tq * (&spec.a + &pq) * (&spec.b + &pq) * &*zq / ((&pq + BigRational::one()) * (&spec.c + &pq));
            *total += &*tq;
            term = Complex64::new(rational_to_f64(tq), 0.0);
        } else {
            term = term * (a + pf) * (b + pf) * z / ((pf + 1.0) * (c + pf));
        }
        sum += term;
    }
    Err(Error::NoConvergence(format!(
        "tail bound above {tol:e} after {MAX_SERIES_TERMS} terms"
    )))
}

fn range_check(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(what()))
    }
}

fn exact_quotient(sum: BigInt, shift: usize, what: &str) -> Result<BigInt> {
    let den = BigInt::one() << shift;
    let (q, rem) = sum.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::Internal(format!("{what}: non-integral result {sum}/2^{shift}")));
    }
    Ok(q)
}

/// The double sum `A_{n,r}`, accumulated over integers scaled by `2^n`.
pub fn anr(n: usize, r: usize) -> Result<BigInt> {
    range_check(r <= 2 * n + 1, || format!("r = {r} exceeds 2n+1 = {}", 2 * n + 1))?;
    let table = BinomialTable::new(2 * n + 1);
    let (ni, ri) = (n as i64, r as i64);
    let mut sum = BigInt::zero();
    for p in 0..=ni {
        let c2 = table.get(2 * ni + 1 - ri, p);
        if c2.is_zero() {
            continue;
        }
        for l in 0..=ni {
            let c1 = table.get(ri, ni - l);
            if c1.is_zero() {
                continue;
            }
            let mut term = c1 * &c2 * table.get(ni - p + l, l);
            term <<= (ni + p - l) as usize;
            if (p + l) % 2 == 1 {
                term = -term;
            }
            sum += term;
        }
    }
    let value = exact_quotient(sum, n, "A_{n,r}")?;
    Ok(if r.is_multiple_of(2) { -value } else { value })
}

/// `-2^n` for `r <= n`, `2^n` above.
pub fn anr_closed(n: usize, r: usize) -> Result<BigInt> {
    range_check(r <= 2 * n + 1, || format!("r = {r} exceeds 2n+1 = {}", 2 * n + 1))?;
    let v = BigInt::one() << n;
    Ok(if r <= n { -v } else { v })
}

/// The double sum `A_{n,r,s}`. Unlike `A_{n,r}` it is not always an integer
/// (`A_{2,0,4} = 3/2`), so the power-of-two denominator is kept.
pub fn anrs(n: usize, r: usize, s: usize) -> Result<BigRational> {
    range_check(r <= s && s <= 2 * n + 1, || {
        format!("need 0 <= r <= s <= 2n+1, got n={n}, r={r}, s={s}")
    })?;
    let table = BinomialTable::new(2 * n + 1);
    let (ni, ri, si) = (n as i64, r as i64, s as i64);
    let mut sum = BigInt::zero();
    for p in 0..=ni {
        let c2 = table.get(si - ri, p);
        if c2.is_zero() {
            continue;
        }
        for l in 0..=ni {
            let c1 = table.get(ri, ni - l);
            if c1.is_zero() {
                continue;
            }
            let mut term = c1 * &c2 * table.get(ni - p + l, l);
            term <<= (ni + p - l) as usize;
            if (p + l) % 2 == 1 {
                term = -term;
            }
            sum += term;
        }
    }
    let value = BigRational::new(sum, BigInt::one() << n);
    Ok(if r % 2 == 1 { -value } else { value })
}

/// Closed Gamma form of `A_{n,r,s}` for `0 <= r <= n < s <= 2n`.
pub fn anrs_gamma(n: usize, r: usize, s: usize) -> Result<BigRational> {
    range_check(r <= n && n < s && s <= 2 * n, || {
        format!("need 0 <= r <= n < s <= 2n, got n={n}, r={r}, s={s}")
    })?;
    let half = |k: i64| BigRational::new(k.into(), 2.into());
    let (ni, si) = (n as i64, s as i64);
    let spec = GammaRatioSpec {
        numerator: vec![half(si - ni + 1), half(si - ni + 2)],
        denominator: vec![half(si - 2 * ni + 1), half(si + 2)],
    };
    let ratio = gamma_ratio_exact(&spec)?;
    Ok(ratio * BigRational::from_integer(binomial(si, ni)))
}

/// `prod Gamma(numerator) / prod Gamma(denominator)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaRatioSpec {
    pub numerator: Vec<BigRational>,
    pub denominator: Vec<BigRational>,
}

enum PairValue {
    Finite(BigRational),
    Zero,
    Undefined,
}

fn gamma_pair(x: &BigRational, y: &BigRational) -> PairValue {
    let k = (x - y).to_integer().to_i64().unwrap_or(i64::MAX);
    match (nonpositive_integer(x), nonpositive_integer(y)) {
        (None, None) => {
            if k >= 0 {
                PairValue::Finite(pochhammer(y, k as usize))
            } else {
                PairValue::Finite(pochhammer(x, (-k) as usize).recip())
            }
        }
        (None, Some(_)) => PairValue::Zero,
        (Some(_), None) => PairValue::Undefined,
        (Some(m), Some(j)) => {
            let v = BigRational::new(factorial(j), factorial(m));
            PairValue::Finite(if (m + j) % 2 == 1 { -v } else { v })
        }
    }
}

/// Exact reduction by pairing arguments with integer differences.
pub fn gamma_ratio_exact(spec: &GammaRatioSpec) -> Result<BigRational> {
    if spec.numerator.len() != spec.denominator.len() {
        return Err(Error::Unmatched);
    }
    let mut used = vec![false; spec.denominator.len()];
    let mut pairs = Vec::with_capacity(spec.numerator.len());
    for x in &spec.numerator {
        let slot = spec
            .denominator
            .iter()
            .enumerate()
            .position(|(j, y)| !used[j] && (x - y).is_integer())
            .ok_or(Error::Unmatched)?;
        used[slot] = true;
        pairs.push(gamma_pair(x, &spec.denominator[slot]));
    }
    let mut acc = BigRational::one();
    let mut zero = false;
    for pair in pairs {
        match pair {
            PairValue::Undefined => return Err(Error::Undefined),
            PairValue::Zero => zero = true,
            PairValue::Finite(v) => acc *= v,
        }
    }
    Ok(if zero { BigRational::zero() } else { acc })
}

/// `Delta^m f(x)` from the tabulated values `f(x), ..., f(x+m)`.
pub fn difference_power(values: &[BigRational], m: usize) -> Result<BigRational> {
    if values.len() < m + 1 {
        return Err(Error::Domain(format!(
            "need {} values for a difference of order {m}, got {}",
            m + 1,
            values.len()
        )));
    }
    let mut acc = BigRational::zero();
    for (k, v) in values.iter().take(m + 1).enumerate() {
        let term = v * BigRational::from_integer(binomial(m as i64, k as i64));
        if (m - k) % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    Ok(acc)
}

/// A value produced on the exact or on the floating path.
#[derive(Clone, Debug, PartialEq)]
pub enum Number {
    Exact(BigRational),
    Float(f64),
}

impl Number {
    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Exact(q) => rational_to_f64(q),
            Number::Float(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Number::Exact(_))
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Exact(q) => f.write_str(&format_rational(q)),
            Number::Float(x) => write!(f, "{x:?}"),
        }
    }
}

/// Both sides of an identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub lhs: Number,
    pub rhs: Number,
}

impl Check {
    /// `|lhs - rhs|`, exact when both sides are.
    pub fn residual(&self) -> Number {
        match (&self.lhs, &self.rhs) {
            (Number::Exact(l), Number::Exact(r)) => Number::Exact((l - r).abs()),
            _ => Number::Float((self.lhs.to_f64() - self.rhs.to_f64()).abs()),
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.residual(), Number::Exact(q) if q.is_zero())
    }
}

fn rat_pow(q: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        num_traits::pow(q.clone(), k as usize)
    } else {
        num_traits::pow(q.recip(), (-k) as usize)
    }
}

/// Euler's transformation `F(a,b;c;z) = (1-z)^(c-a-b) F(c-a,c-b;c;z)` for `|z| <= 1/2`.
pub fn check_euler(a: &BigRational, b: &BigRational, c: &BigRational, z: &BigRational, tol: f64) -> Result<Check> {
    range_check(z.abs() <= BigRational::new(1.into(), 2.into()), || {
        format!("|z| = {} exceeds 1/2", format_rational(z))
    })?;
    let lhs_spec = HyperSpec::rational(a.clone(), b.clone(), c.clone(), z.clone());
    let rhs_spec = HyperSpec::rational(c - a, c - b, c.clone(), z.clone());
    let exponent = c - a - b;
    let one_minus_z = BigRational::one() - z;
    let exact = lhs_spec.terminating_degree().is_some()
        && rhs_spec.terminating_degree().is_some()
        && exponent.is_integer();
    if exact {
        let k = exponent.to_integer().to_i64().ok_or_else(|| Error::Domain("exponent out of range".into()))?;
        let lhs = hyp2f1_exact(&lhs_spec)?;
        let rhs = rat_pow(&one_minus_z, k) * hyp2f1_exact(&rhs_spec)?;
        return Ok(Check {
            lhs: Number::Exact(lhs),
            rhs: Number::Exact(rhs),
        });
    }
    let series_tol = tol * 1e-3;
    let lhs = hyp2f1_numeric(&lhs_spec, series_tol)?.value;
    let rhs = hyp2f1_numeric(&rhs_spec, series_tol)?.value
        * rational_to_f64(&one_minus_z).powf(rational_to_f64(&exponent));
    Ok(Check {
        lhs: Number::Float(lhs.re),
        rhs: Number::Float(rhs.re),
    })
}

/// Pfaff's transformation `F(a,b;c;1/2) = 2^a F(a,c-b;c;-1)` for `a` a non-positive integer.
pub fn check_pfaff(a: &BigRational, b: &BigRational, c: &BigRational) -> Result<Check> {
    let n = nonpositive_integer(a).ok_or_else(|| Error::Domain("a must be a non-positive integer".into()))?;
    range_check(b - a > -BigRational::one(), || "need b - a > -1".into())?;
    let half = BigRational::new(1.into(), 2.into());
    let lhs = hyp2f1_exact(&HyperSpec::rational(a.clone(), b.clone(), c.clone(), half.clone()))?;
    let rhs_series = hyp2f1_exact(&HyperSpec::rational(a.clone(), c - b, c.clone(), -BigRational::one()))?;
    let rhs = num_traits::pow(half, n) * rhs_series;
    Ok(Check {
        lhs: Number::Exact(lhs),
        rhs: Number::Exact(rhs),
    })
}

/// The difference-operator lemma
/// `sum_k C(m,k) (z-1)^(-k) F(a,b-k;c;z) = (c-a)_m/(c)_m (z/(z-1))^m F(a,b;c+m;z)`.
pub fn check_zeng_lemma(a: &BigRational, b: &BigRational, c: &BigRational, m: usize, z: &BigRational) -> Result<Check> {
    nonpositive_integer(a).ok_or_else(|| Error::Domain("a must be a non-positive integer".into()))?;
    range_check(!z.is_one(), || "z must differ from 1".into())?;
    let zm1 = z - BigRational::one();
    let mut lhs = BigRational::zero();
    for k in 0..=m {
        let kq = BigRational::from_integer(k.into());
        let f = hyp2f1_exact(&HyperSpec::rational(a.clone(), b - kq, c.clone(), z.clone()))?;
        lhs += BigRational::from_integer(binomial(m as i64, k as i64)) * rat_pow(&zm1, -(k as i64)) * f;
    }
    let cm = pochhammer(c, m);
    if cm.is_zero() {
        let index = (0..m)
            .find(|&j| (c + BigRational::from_integer(j.into())).is_zero())
            .unwrap_or(0);
        return Err(Error::ParameterPole { index });
    }
    let f = hyp2f1_exact(&HyperSpec::rational(
        a.clone(),
        b.clone(),
        c + BigRational::from_integer(m.into()),
        z.clone(),
    ))?;
    let rhs = pochhammer(&(c - a), m) / cm * num_traits::pow(z / &zm1, m) * f;
    Ok(Check {
        lhs: Number::Exact(lhs),
        rhs: Number::Exact(rhs),
    })
}

/// Bailey's sum `F(a,1-a;b;1/2) = G(b/2) G((1+b)/2) / (G((a+b)/2) G((1-a+b)/2))`.
///
/// Exact when `a` is a non-positive integer and the Gamma ratio reduces; numeric otherwise.
pub fn check_bailey(a: &BigRational, b: &BigRational, tol: f64) -> Result<Check> {
    let half = BigRational::new(1.into(), 2.into());
    let one = BigRational::one();
    let lhs_spec = HyperSpec::rational(a.clone(), &one - a, b.clone(), half.clone());
    let gamma = GammaRatioSpec {
        numerator: vec![b * &half, (&one + b) * &half],
        denominator: vec![(a + b) * &half, (&one - a + b) * &half],
    };
    if lhs_spec.terminating_degree().is_some() {
        match gamma_ratio_exact(&gamma) {
            Ok(rhs) => {
                let lhs = hyp2f1_exact(&lhs_spec)?;
                return Ok(Check {
                    lhs: Number::Exact(lhs),
                    rhs: Number::Exact(rhs),
                });
            }
            Err(Error::Unmatched) => {}
            Err(e) => return Err(e),
        }
    }
    let lhs = hyp2f1_numeric(&lhs_spec, tol * 1e-3)?.value.re;
    let rhs = gamma_ratio_numeric(&gamma)?;
    Ok(Check {
        lhs: Number::Float(lhs),
        rhs: Number::Float(rhs),
    })
}

fn gamma_ratio_numeric(spec: &GammaRatioSpec) -> Result<f64> {
    let mut acc = 1.0;
    for x in &spec.numerator {
        if nonpositive_integer(x).is_some() {
            return Err(Error::Undefined);
        }
        acc *= statrs::function::gamma::gamma(rational_to_f64(x));
    }
    for y in &spec.denominator {
        if nonpositive_integer(y).is_some() {
            return Ok(0.0);
        }
        acc /= statrs::function::gamma::gamma(rational_to_f64(y));
    }
    Ok(acc)
}

/// `sum_{i=0}^{n} C(2n+1, i)`.
pub fn binomial_half_sum(n: usize) -> BigInt {
    let m = 2 * n as i64 + 1;
    (0..=n as i64).map(|i| binomial(m, i)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn int(n: i64) -> BigRational {
        q(n, 1)
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(4, 0), BigInt::one());
        assert_eq!(binomial(-1, 0), BigInt::zero());
        let t = BinomialTable::new(30);
        for n in 0..=30 {
            for k in -1..=31 {
                assert_eq!(t.get(n, k), binomial(n, k));
            }
        }
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&int(3), 0), int(1));
        assert_eq!(pochhammer(&int(1), 4), int(24));
        assert_eq!(pochhammer(&q(1, 2), 2), q(3, 4));
    }

    #[test]
    fn terminating_series() {
        let f = |a, b, c, z| hyp2f1_exact(&HyperSpec::rational(a, b, c, z));
        assert_eq!(f(int(0), int(7), int(3), q(1, 3)).unwrap(), int(1));
        assert_eq!(f(int(-1), int(2), int(3), q(1, 2)).unwrap(), q(2, 3));
        assert_eq!(f(int(-1), int(1), int(3), int(-1)).unwrap(), q(4, 3));
        assert_eq!(
            f(int(-3), int(1), int(-1), q(1, 2)),
            Err(Error::ParameterPole { index: 1 })
        );
        assert!(f(q(1, 2), int(1), int(1), q(1, 2)).is_err());
    }

    #[test]
    fn numeric_series() {
        let s = hyp2f1_numeric(&HyperSpec::rational(int(1), int(1), int(2), q(1, 2)), 1e-15).unwrap();
        assert!((s.value.re - 2.0 * std::f64::consts::LN_2).abs() < 1e-14);
        assert!(s.tail_bound < 1e-15);
        let t = hyp2f1_numeric(&HyperSpec::rational(int(-1), int(2), int(3), q(1, 2)), 1e-15).unwrap();
        assert!((t.value.re - 2.0 / 3.0).abs() < 1e-15);
        let u = hyp2f1_numeric(&HyperSpec::complex(int(0), q(3, 7), int(2), Complex64::new(0.3, 0.4)), 1e-12).unwrap();
        assert_eq!(u.value, Complex64::new(1.0, 0.0));
        assert!(matches!(
            hyp2f1_numeric(&HyperSpec::complex(int(1), int(1), int(1), Complex64::new(0.0, 1.0)), 1e-10),
            Err(Error::NoConvergence(_))
        ));
        // on the unit circle with c - a - b = 2: F(1/2, 1/2; 3; -1)
        let v = hyp2f1_numeric(&HyperSpec::rational(q(1, 2), q(1, 2), int(3), int(-1)), 1e-9).unwrap();
        assert!(v.value.re > 0.9 && v.value.re < 1.0);
    }

    #[test]
    fn anr_spot_values() {
        assert_eq!(anr(0, 0).unwrap(), BigInt::from(-1));
        assert_eq!(anr(3, 2).unwrap(), BigInt::from(-8));
        assert_eq!(anr(3, 5).unwrap(), BigInt::from(8));
        assert_eq!(anr_closed(0, 1).unwrap(), BigInt::from(1));
        assert_eq!(anr_closed(5, 5).unwrap(), BigInt::from(-32));
        assert_eq!(anr_closed(5, 6).unwrap(), BigInt::from(32));
        assert!(anr(2, 6).is_err());
    }

    #[test]
    fn anrs_spot_values() {
        assert_eq!(anrs(1, 0, 2).unwrap(), int(1));
        assert_eq!(anrs(3, 2, 7).unwrap(), int(8));
        assert_eq!(anrs(2, 0, 4).unwrap(), q(3, 2));
        assert_eq!(anrs(1, 1, 3).unwrap(), -anrs(1, 2, 3).unwrap());
        assert_eq!(anrs_gamma(1, 0, 2).unwrap(), int(1));
        assert_eq!(anrs_gamma(2, 1, 3).unwrap(), int(0));
        assert_eq!(anrs(2, 1, 3).unwrap(), int(0));
        assert_eq!(anrs_gamma(2, 0, 4).unwrap(), anrs(2, 0, 4).unwrap());
        assert!(anrs_gamma(2, 3, 4).is_err());
    }

    #[test]
    fn gamma_ratios() {
        let g = |num: Vec<BigRational>, den: Vec<BigRational>| {
            gamma_ratio_exact(&GammaRatioSpec {
                numerator: num,
                denominator: den,
            })
        };
        assert_eq!(g(vec![int(3)], vec![int(1)]).unwrap(), int(2));
        assert_eq!(g(vec![int(1), q(3, 2)], vec![q(1, 2), int(2)]).unwrap(), q(1, 2));
        assert_eq!(g(vec![int(1)], vec![int(0)]).unwrap(), int(0));
        assert_eq!(g(vec![int(0)], vec![int(1)]), Err(Error::Undefined));
        assert_eq!(g(vec![q(1, 3)], vec![q(1, 2)]), Err(Error::Unmatched));
        // Gamma(-2)/Gamma(-1) = Res(-2)/Res(-1) = (1/2)/(-1)
        assert_eq!(g(vec![int(-2)], vec![int(-1)]).unwrap(), q(-1, 2));
        assert_eq!(g(vec![q(1, 2)], vec![q(5, 2)]).unwrap(), q(4, 3));
    }

    #[test]
    fn differences() {
        assert_eq!(difference_power(&[int(4), int(4)], 1).unwrap(), int(0));
        assert_eq!(difference_power(&[int(7), int(8)], 1).unwrap(), int(1));
        assert_eq!(difference_power(&[int(0), int(1), int(4)], 2).unwrap(), int(2));
        assert!(difference_power(&[int(0)], 1).is_err());
    }

    #[test]
    fn identity_examples() {
        let euler = check_euler(&int(-1), &int(2), &int(3), &q(1, 2), 1e-13).unwrap();
        assert!(euler.residual().to_f64() < 1e-13);
        assert!((euler.lhs.to_f64() - 2.0 / 3.0).abs() < 1e-15);
        let euler = check_euler(&int(1), &int(1), &int(3), &q(1, 4), 1e-13).unwrap();
        assert!(euler.residual().to_f64() < 1e-12);
        let euler = check_euler(&int(0), &q(5, 2), &q(5, 2), &q(1, 3), 1e-13).unwrap();
        assert!(euler.is_exact_zero());

        let pfaff = check_pfaff(&int(-1), &int(2), &int(3)).unwrap();
        assert_eq!(pfaff.lhs, Number::Exact(q(2, 3)));
        assert!(pfaff.is_exact_zero());
        assert!(check_pfaff(&int(0), &q(1, 3), &q(7, 2)).unwrap().is_exact_zero());
        assert!(check_pfaff(&int(-3), &int(4), &int(5)).unwrap().is_exact_zero());

        assert!(check_zeng_lemma(&int(-2), &q(1, 3), &q(5, 2), 0, &q(1, 2)).unwrap().is_exact_zero());
        assert!(check_zeng_lemma(&int(-1), &int(1), &int(2), 1, &q(1, 2)).unwrap().is_exact_zero());
        assert!(check_zeng_lemma(&int(-2), &int(3), &int(4), 2, &q(1, 3)).unwrap().is_exact_zero());

        assert!(check_bailey(&int(0), &int(3), 1e-12).unwrap().is_exact_zero());
        assert!(check_bailey(&int(-1), &int(2), 1e-12).unwrap().is_exact_zero());
        assert!(check_bailey(&int(-2), &int(3), 1e-12).unwrap().is_exact_zero());
        let numeric = check_bailey(&q(1, 3), &q(5, 2), 1e-12).unwrap();
        assert!(!numeric.lhs.is_exact());
        assert!(numeric.residual().to_f64() < 1e-12);
    }

    #[test]
    fn half_sums() {
        assert_eq!(binomial_half_sum(0), BigInt::from(1));
        assert_eq!(binomial_half_sum(1), BigInt::from(4));
        assert_eq!(binomial_half_sum(5), BigInt::from(1024));
    }
}
