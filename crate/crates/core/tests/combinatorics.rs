use dbrk_core::combinatorics::*;
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn small_binomial(n: i64, k: i64) -> i128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let mut c: i128 = 1;
    for j in 0..k {
        c = c * (n - j) as i128 / (j + 1) as i128;
    }
    c
}

fn pow2(e: i64) -> Ratio<i128> {
    if e >= 0 {
        Ratio::from_integer(1i128 << e)
    } else {
        Ratio::new(1, 1i128 << -e)
    }
}

/// The double sum with `(-2)^(p-l)` read literally, in machine rationals.
fn anr_oracle(n: i64, r: i64) -> Ratio<i128> {
    let mut sum = Ratio::from_integer(0i128);
    for p in 0..=n {
        for l in 0..=n {
            let sign = if (p - l).rem_euclid(2) == 1 { -1 } else { 1 };
            let term = pow2(p - l)
                * sign
                * small_binomial(r, n - l)
                * small_binomial(2 * n + 1 - r, p)
                * small_binomial(n - p + l, l);
            sum += term;
        }
    }
    if (r + 1) % 2 == 1 {
        -sum
    } else {
        sum
    }
}

fn anrs_oracle(n: i64, r: i64, s: i64) -> Ratio<i128> {
    let mut sum = Ratio::from_integer(0i128);
    for p in 0..=n {
        for l in 0..=n {
            let sign = if (p + l) % 2 == 1 { -1 } else { 1 };
            sum += pow2(p - l) * sign * small_binomial(r, n - l) * small_binomial(s - r, p) * small_binomial(n - p + l, l);
        }
    }
    if r % 2 == 1 {
        -sum
    } else {
        sum
    }
}

fn to_big(x: Ratio<i128>) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

#[test]
fn anr_matches_machine_rational_oracle() {
    for n in 0..=12i64 {
        for r in 0..=2 * n + 1 {
            let got = anr(n as usize, r as usize).unwrap();
            assert_eq!(BigRational::from_integer(got), to_big(anr_oracle(n, r)), "n={n} r={r}");
        }
    }
}

#[test]
fn anrs_matches_machine_rational_oracle() {
    for n in 0..=8i64 {
        for s in 0..=2 * n + 1 {
            for r in 0..=s {
                let got = anrs(n as usize, r as usize, s as usize).unwrap();
                assert_eq!(got, to_big(anrs_oracle(n, r, s)), "n={n} r={r} s={s}");
            }
        }
    }
}

#[test]
fn anrs_spec_examples() {
    assert_eq!(anrs(1, 0, 2).unwrap(), q(1, 1));
    assert_eq!(anrs(3, 2, 7).unwrap(), q(8, 1));
    assert_eq!(anr(3, 2).unwrap(), BigInt::from(-8));
    assert_eq!(anrs(1, 1, 3).unwrap(), -anrs(1, 2, 3).unwrap());
    assert_eq!(anrs_gamma(1, 0, 2).unwrap(), q(1, 1));
    assert_eq!(anrs_gamma(2, 1, 3).unwrap(), BigRational::zero());
    assert_eq!(anrs_gamma(2, 0, 4).unwrap(), anrs(2, 0, 4).unwrap());
}

/// Partial sums of the defining series, term by term.
fn series_oracle(a: &BigRational, b: &BigRational, c: &BigRational, z: &BigRational) -> BigRational {
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    let mut p = 0i64;
    loop {
        let pq = BigRational::from_integer(p.into());
        term = term * (a + &pq) * (b + &pq) / ((c + &pq) * (&pq + BigRational::one())) * z;
        if term.is_zero() {
            return sum;
        }
        sum += &term;
        p += 1;
    }
}

fn hyp(a: &BigRational, b: &BigRational, c: &BigRational, z: &BigRational) -> BigRational {
    hyp2f1_exact(&HyperSpec::rational(a.clone(), b.clone(), c.clone(), z.clone())).unwrap()
}

#[test]
fn numeric_series_spec_example() {
    let v = hyp2f1_numeric(&HyperSpec::rational(q(1, 1), q(1, 1), q(2, 1), q(1, 2)), 1e-14).unwrap();
    assert!((v.value.re - 2.0 * 2f64.ln()).abs() < 1e-13);
    assert!(v.tail_bound <= 1e-14);
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (1i64..40, 1i64..6).prop_map(|(n, d)| q(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn anr_is_antisymmetric(n in 0usize..=25, r in 0usize..=51) {
        prop_assume!(r <= 2 * n + 1);
        prop_assert_eq!(anr(n, 2 * n + 1 - r).unwrap(), -anr(n, r).unwrap());
        prop_assert_eq!(anr(n, r).unwrap(), anr_closed(n, r).unwrap());
    }

    #[test]
    fn anrs_reflection(n in 0usize..=12, s in 0usize..=25, r in 0usize..=25) {
        prop_assume!(s <= 2 * n + 1 && r <= s);
        let sign = if s % 2 == 1 { -BigRational::one() } else { BigRational::one() };
        prop_assert_eq!(anrs(n, s - r, s).unwrap(), sign * anrs(n, r, s).unwrap());
    }

    #[test]
    fn anrs_gamma_form(n in 1usize..=12, s in 2usize..=24, r in 0usize..=12) {
        prop_assume!(n < s && s <= 2 * n && r <= n);
        if s % 2 == 0 {
            prop_assert_eq!(anrs(n, r, s).unwrap(), anrs_gamma(n, r, s).unwrap());
        } else {
            prop_assert!(anrs(n, r, s).unwrap().is_zero());
            prop_assert!(anrs_gamma(n, r, s).unwrap().is_zero());
        }
    }

    #[test]
    fn exact_matches_series_oracle(n in 0i64..=10, b in small_rational(), c in small_rational(), zn in -6i64..=6, zd in 1i64..=7) {
        let (a, z) = (q(-n, 1), q(zn, zd));
        prop_assert_eq!(hyp(&a, &b, &c, &z), series_oracle(&a, &b, &c, &z));
    }

    #[test]
    fn exact_matches_numeric(n in 0i64..=10, b in small_rational(), c in small_rational(), zn in -3i64..=3) {
        let z = q(zn, 7);
        let spec = HyperSpec::rational(q(-n, 1), b, c, z);
        let exact = hyp2f1_exact(&spec).unwrap().to_f64().unwrap();
        let num = hyp2f1_numeric(&spec, 1e-12).unwrap();
        prop_assert!((num.value.re - exact).abs() <= 1e-12 * (1.0 + exact.abs()));
    }

    #[test]
    fn difference_kills_polynomials(coeffs in prop::collection::vec(-20i64..20, 1..7), x in -10i64..10) {
        let p = coeffs.len() - 1;
        let values: Vec<BigRational> = (0..=p as i64 + 1)
            .map(|k| {
                let t = BigRational::from_integer((x + k).into());
                coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &t + BigRational::from_integer((*c).into()))
            })
            .collect();
        prop_assert!(difference_power(&values, p + 1).unwrap().is_zero());
    }

    #[test]
    fn pfaff_is_exact(n in 0i64..=10, b in small_rational(), c in small_rational()) {
        prop_assert!(check_pfaff(&q(-n, 1), &b, &c).unwrap().is_exact_zero());
    }

    #[test]
    fn zeng_is_exact(n in 0i64..=10, b in small_rational(), c in small_rational(), m in 0usize..=8, zn in -5i64..=5, zd in 2i64..=7) {
        prop_assume!(zn != zd);
        let z = q(zn, zd);
        prop_assert!(check_zeng_lemma(&q(-n, 1), &b, &c, m, &z).unwrap().is_exact_zero());
    }

    #[test]
    fn bailey_is_exact(n in 0i64..=10, b in small_rational()) {
        let check = check_bailey(&q(-n, 1), &b, 1e-12).unwrap();
        prop_assert!(check.is_exact_zero(), "{:?}", check);
    }

    #[test]
    fn euler_numeric(a in -30i64..30, b in -30i64..30, c in 1i64..40, zn in -4i64..=4) {
        let (a, b, c, z) = (q(a, 7), q(b, 5), q(c, 3), q(zn, 8));
        let check = check_euler(&a, &b, &c, &z, 1e-12).unwrap();
        let scale = 1.0 + check.lhs.to_f64().abs();
        prop_assert!(check.residual().to_f64().abs() < 1e-12 * scale, "{:?}", check);
    }

    #[test]
    fn pochhammer_recurrence(n in -20i64..20, d in 1i64..9, p in 0usize..12) {
        let t = q(n, d);
        let lhs = pochhammer(&t, p + 1);
        let rhs = pochhammer(&t, p) * (&t + BigRational::from_integer(p.into()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn binomial_pascal(n in 1i64..60, k in -3i64..63) {
        prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
        prop_assert!(!binomial(n, k).is_negative());
    }
}

#[test]
fn half_sums_are_powers_of_four() {
    for n in 0..=30usize {
        assert_eq!(binomial_half_sum(n), BigInt::one() << (2 * n));
    }
}
