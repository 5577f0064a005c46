//! Scalar fields used by the jet and kernel algebra.
//!
//! Three implementations share the [`Scalar`] trait:
//! - [`Complex64`] for the ordinary floating path,
//! - [`GaussianRational`] for exact arithmetic in Q(i),
//! - [`BigComplex`] for extended-precision binary floats.
//!
//! Generic code built on the trait never needs transcendental functions; those are
//! confined to the jet constructors, which know which field they produce.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// A commutative field with complex conjugation, closed under the operations
/// needed by Leibniz products, kernel numerators and the lambda sums.
pub trait Scalar:
    Clone
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Exact embedding of an integer.
    fn from_integer(n: &BigInt) -> Self;

    fn imag_unit() -> Self;

    fn conj(&self) -> Self;

    fn to_complex64(&self) -> Complex64;

    fn is_exactly_zero(&self) -> bool;

    /// Working precision in bits, `None` for exact fields.
    fn precision_bits(&self) -> Option<u32>;

    fn from_i64(n: i64) -> Self {
        Self::from_integer(&BigInt::from(n))
    }

    fn zero() -> Self {
        Self::from_i64(0)
    }

    fn one() -> Self {
        Self::from_i64(1)
    }

    fn scale_int(&self, n: &BigInt) -> Self {
        self.clone() * Self::from_integer(n)
    }

    /// Integer power; negative exponents invert.
    fn powi(&self, k: i64) -> Self {
        if k < 0 {
            return Self::one() / self.powi(-k);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// |z| as a double, used for cancellation accounting.
    fn magnitude(&self) -> f64 {
        self.to_complex64().norm()
    }
}

impl Scalar for Complex64 {
    fn from_integer(n: &BigInt) -> Self {
        Complex64::new(n.to_f64().unwrap_or(f64::INFINITY), 0.0)
    }

    fn imag_unit() -> Self {
        Complex64::i()
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn to_complex64(&self) -> Complex64 {
        *self
    }

    fn is_exactly_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn precision_bits(&self) -> Option<u32> {
        Some(53)
    }
}

/// Exact element of Q(i).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    /// Exact conversion of a double-precision complex number (every finite double is dyadic).
    pub fn from_complex64(z: Complex64) -> Result<Self> {
        let re = BigRational::from_float(z.re).ok_or_else(|| Error::Domain(format!("non-finite value {z}")))?;
        let im = BigRational::from_float(z.im).ok_or_else(|| Error::Domain(format!("non-finite value {z}")))?;
        Ok(GaussianRational { re, im })
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussianRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussianRational::new(re, im)
    }
}

impl Div for GaussianRational {
    type Output = Self;
    /// Panics on division by zero, like `BigRational`.
    fn div(self, rhs: Self) -> Self {
        let d = rhs.norm_sqr();
        let re = (&self.re * &rhs.re + &self.im * &rhs.im) / &d;
        let im = (&self.im * &rhs.re - &self.re * &rhs.im) / &d;
        GaussianRational::new(re, im)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Scalar for GaussianRational {
    fn from_integer(n: &BigInt) -> Self {
        GaussianRational::real(BigRational::from_integer(n.clone()))
    }

    fn imag_unit() -> Self {
        GaussianRational::from_ints(0, 1)
    }

    fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    fn to_complex64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn is_exactly_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn precision_bits(&self) -> Option<u32> {
        None
    }
}

/// Correctly scaled conversion that survives numerators and denominators beyond the f64 range.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    // shift so that the integer quotient keeps ~64 significant bits
    let shift = 64 - (nb - db);
    let num = q.numer().abs();
    let scaled = if shift >= 0 {
        (num << shift as usize) / q.denom()
    } else {
        num / (q.denom() << (-shift) as usize)
    };
    let mant = scaled.to_f64().unwrap_or(f64::INFINITY);
    let v = scale_pow2(mant, -shift);
    if q.is_negative() {
        -v
    } else {
        v
    }
}

fn scale_pow2(x: f64, e: i64) -> f64 {
    let mut v = x;
    let mut e = e;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

/// Extended-precision complex number built on binary big floats.
///
/// Binary operations run at the larger of the two operand precisions, so integer
/// constants (which are embedded exactly at their own bit length) never lower the
/// working precision of jet data.
#[derive(Clone)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
    prec: usize,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat, prec: usize) -> Self {
        BigComplex { re, im, prec }
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn from_rational(q: &BigRational, prec: usize) -> Self {
        let re = bigfloat_from_rational(q, prec);
        BigComplex::new(re, BigFloat::from_u64(0, 64), prec)
    }

    pub fn from_gaussian(q: &GaussianRational, prec: usize) -> Self {
        BigComplex::new(
            bigfloat_from_rational(&q.re, prec),
            bigfloat_from_rational(&q.im, prec),
            prec,
        )
    }

    /// Exact lift of a double-precision value.
    pub fn from_complex64(z: Complex64, prec: usize) -> Self {
        BigComplex::new(BigFloat::from_f64(z.re, 64), BigFloat::from_f64(z.im, 64), prec)
    }

    pub fn exp(&self, cc: &mut Consts) -> Self {
        let p = self.prec;
        let m = self.re.exp(p, RM, cc);
        let c = self.im.cos(p, RM, cc);
        let s = self.im.sin(p, RM, cc);
        BigComplex::new(m.mul(&c, p, RM), m.mul(&s, p, RM), p)
    }

    /// e^{i alpha} at this precision, alpha given as an exact rational.
    pub fn unimodular(alpha: &BigRational, prec: usize, cc: &mut Consts) -> Self {
        let a = bigfloat_from_rational(alpha, prec);
        BigComplex::new(a.cos(prec, RM, cc), a.sin(prec, RM, cc), prec)
    }

    pub fn pi(prec: usize, cc: &mut Consts) -> Self {
        BigComplex::new(cc.pi(prec, RM), BigFloat::from_u64(0, 64), prec)
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigComplex({}, {}; {} bits)", self.re, self.im, self.prec)
    }
}

pub fn bigfloat_from_integer(n: &BigInt) -> BigFloat {
    let (sign, digits) = n.to_u64_digits();
    let bits = (digits.len().max(1) * 64) + 64;
    let two64 = BigFloat::from_f64(18446744073709551616.0, 128);
    let mut acc = BigFloat::from_u64(0, bits);
    for limb in digits.iter().rev() {
        acc = acc.mul(&two64, bits, RM).add(&BigFloat::from_u64(*limb, 64), bits, RM);
    }
    if sign == num_bigint::Sign::Minus {
        acc.set_sign(Sign::Neg);
    }
    acc
}

pub fn bigfloat_from_rational(q: &BigRational, prec: usize) -> BigFloat {
    let n = bigfloat_from_integer(q.numer());
    if q.denom().is_one() {
        return n;
    }
    let d = bigfloat_from_integer(q.denom());
    n.div(&d, prec, RM)
}

pub fn bigfloat_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    match x.as_raw_parts() {
        Some((words, _p, sign, exp, _)) => {
            let top = *words.last().unwrap_or(&0);
            let v = scale_pow2(top as f64, exp as i64 - 64);
            if sign == Sign::Neg {
                -v
            } else {
                v
            }
        }
        None => f64::NAN,
    }
}

impl Add for BigComplex {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let p = self.prec.max(rhs.prec);
        BigComplex::new(self.re.add(&rhs.re, p, RM), self.im.add(&rhs.im, p, RM), p)
    }
}

impl Sub for BigComplex {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let p = self.prec.max(rhs.prec);
        BigComplex::new(self.re.sub(&rhs.re, p, RM), self.im.sub(&rhs.im, p, RM), p)
    }
}

impl Mul for BigComplex {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let p = self.prec.max(rhs.prec);
        let q = p + 64;
        let rr = self.re.mul(&rhs.re, q, RM);
        let ii = self.im.mul(&rhs.im, q, RM);
        let ri = self.re.mul(&rhs.im, q, RM);
        let ir = self.im.mul(&rhs.re, q, RM);
        BigComplex::new(rr.sub(&ii, p, RM), ri.add(&ir, p, RM), p)
    }
}

impl Div for BigComplex {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let p = self.prec.max(rhs.prec);
        let q = p + 64;
        let d = rhs.re.mul(&rhs.re, q, RM).add(&rhs.im.mul(&rhs.im, q, RM), q, RM);
        let nr = self.re.mul(&rhs.re, q, RM).add(&self.im.mul(&rhs.im, q, RM), q, RM);
        let ni = self.im.mul(&rhs.re, q, RM).sub(&self.re.mul(&rhs.im, q, RM), q, RM);
        BigComplex::new(nr.div(&d, p, RM), ni.div(&d, p, RM), p)
    }
}

impl Neg for BigComplex {
    type Output = Self;
    fn neg(self) -> Self {
        let p = self.prec;
        BigComplex::new(self.re.neg(), self.im.neg(), p)
    }
}

impl Scalar for BigComplex {
    fn from_integer(n: &BigInt) -> Self {
        let re = bigfloat_from_integer(n);
        let prec = re.mantissa_max_bit_len().unwrap_or(64).max(64);
        BigComplex::new(re, BigFloat::from_u64(0, 64), prec)
    }

    fn imag_unit() -> Self {
        BigComplex::new(BigFloat::from_u64(0, 64), BigFloat::from_u64(1, 64), 64)
    }

    fn conj(&self) -> Self {
        BigComplex::new(self.re.clone(), -self.im.clone(), self.prec)
    }

    fn to_complex64(&self) -> Complex64 {
        Complex64::new(bigfloat_to_f64(&self.re), bigfloat_to_f64(&self.im))
    }

    fn is_exactly_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn precision_bits(&self) -> Option<u32> {
        Some(self.prec as u32)
    }
}

/// Fresh constant cache for transcendental big-float operations.
pub fn big_consts() -> Consts {
    Consts::new().expect("astro-float constant cache allocation")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn gaussian_field_ops() {
        let a = GaussianRational::new(q(1, 2), q(-3, 4));
        let b = GaussianRational::new(q(2, 3), q(5, 7));
        let back = (a.clone() * b.clone()) / b.clone();
        assert_eq!(back, a);
        assert_eq!((a.clone() - a.clone()), GaussianRational::zero());
        assert_eq!(GaussianRational::imag_unit().powi(2), GaussianRational::from_ints(-1, 0));
        assert_eq!(b.powi(-2) * b.powi(2), GaussianRational::one());
    }

    #[test]
    fn rational_to_f64_handles_huge_parts() {
        let big = BigInt::from(10).pow(400);
        let r = BigRational::new(big.clone() * 3, big * 7);
        assert!((rational_to_f64(&r) - 3.0 / 7.0).abs() < 1e-16);
        let tiny = BigRational::new(1.into(), BigInt::from(2).pow(1030));
        assert_eq!(rational_to_f64(&tiny), 2f64.powi(-1000) * 2f64.powi(-30));
    }

    #[test]
    fn bigcomplex_roundtrip_and_division() {
        let z = BigComplex::from_gaussian(&GaussianRational::new(q(1, 3), q(-2, 5)), 256);
        let w = BigComplex::from_gaussian(&GaussianRational::new(q(7, 2), q(1, 9)), 256);
        let back = (z.clone() * w.clone()) / w;
        let d = (back - z).to_complex64();
        assert!(d.norm() < 1e-70);
        let third = BigComplex::from_rational(&q(1, 3), 256).to_complex64();
        assert_eq!(third.re, 1.0 / 3.0);
    }

    #[test]
    fn bigcomplex_integer_embedding_is_exact() {
        let n = BigInt::from(3).pow(60) + 1;
        let z = BigComplex::from_integer(&n);
        let m = z.clone() - BigComplex::from_integer(&BigInt::from(3).pow(60));
        assert_eq!(m.to_complex64(), Complex64::new(1.0, 0.0));
        assert_eq!(BigComplex::from_i64(-5).to_complex64().re, -5.0);
    }

    #[test]
    fn bigcomplex_exp_matches_f64() {
        let mut cc = big_consts();
        let z = BigComplex::from_complex64(Complex64::new(0.3, -1.2), 200);
        let e = z.exp(&mut cc).to_complex64();
        let r = Complex64::new(0.3, -1.2).exp();
        assert!((e - r).norm() < 1e-15);
        let pi = BigComplex::pi(200, &mut cc).to_complex64();
        assert_eq!(pi.re, std::f64::consts::PI);
    }
}
