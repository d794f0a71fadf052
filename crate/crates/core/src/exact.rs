//! Exact integer and rational building blocks: factorials, binomials,
//! Bernoulli numbers, the even-zeta coefficients, and the Beta function at
//! positive integer arguments.
//!
//! Everything here is exact; no floating point enters this module. Values
//! are memoized behind locks so concurrent readers are safe.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision fraction in canonical form: reduced, with a
/// positive denominator. `num_rational::BigRational` maintains both
/// invariants on construction.
pub type Rational = num_rational::BigRational;

/// Shorthand for a rational from machine integers.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

static FACTORIALS: RwLock<Vec<BigInt>> = RwLock::new(Vec::new());
static BERNOULLIS: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// n!, with `factorial(0) = 1`. Cached; the cache only grows.
pub fn factorial(n: u64) -> BigInt {
    let n = n as usize;
    {
        let cache = FACTORIALS.read().unwrap();
        if let Some(v) = cache.get(n) {
            return v.clone();
        }
    }
    let mut cache = FACTORIALS.write().unwrap();
    if cache.is_empty() {
        cache.push(BigInt::one());
    }
    while cache.len() <= n {
        let next = cache.last().unwrap() * BigInt::from(cache.len());
        cache.push(next);
    }
    cache[n].clone()
}

/// Binomial coefficient C(n, k); zero when k < 0 or k > n.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = k as u64;
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// The m-th Bernoulli number under the convention B_1 = -1/2, computed by
/// the recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1. Cached.
pub fn bernoulli(m: u32) -> Rational {
    let m = m as usize;
    {
        let cache = BERNOULLIS.read().unwrap();
        if let Some(v) = cache.get(m) {
            return v.clone();
        }
    }
    let mut cache = BERNOULLIS.write().unwrap();
    if cache.is_empty() {
        cache.push(Rational::one());
    }
    while cache.len() <= m {
        let k = cache.len() as u64; // computing B_k
        let mut acc = Rational::zero();
        for (j, bj) in cache.iter().enumerate() {
            acc += Rational::from_integer(binomial(k + 1, j as i64)) * bj;
        }
        let bk = -acc / Rational::from_integer(BigInt::from(k + 1));
        cache.push(bk);
    }
    cache[m].clone()
}

/// The exact rational r_n with zeta(2n) = r_n * pi^(2n).
///
/// r_0 = -1/2: the analytic-continuation value of zeta(0), forced by the
/// normalization x*cot(x) -> 1 as x -> 0 in the cotangent expansion. For
/// n >= 1, r_n = (-1)^(n+1) * B_{2n} * 2^(2n-1) / (2n)!.
pub fn even_zeta_coeff(n: u32) -> Rational {
    if n == 0 {
        return ratio(-1, 2);
    }
    let sign = if n % 2 == 1 { 1 } else { -1 };
    let num = BigInt::from(sign) * bernoulli(2 * n).numer() * (BigInt::one() << (2 * n - 1));
    let den = bernoulli(2 * n).denom() * factorial(2 * n as u64);
    Rational::new(num, den)
}

/// B(r, s) = (r-1)! (s-1)! / (r+s-1)! for positive integers r, s.
pub fn beta_pos_int(r: u64, s: u64) -> Result<Rational> {
    if r == 0 || s == 0 {
        return Err(Error::Domain(format!(
            "beta_pos_int requires positive integer arguments, got ({r}, {s})"
        )));
    }
    Ok(Rational::new(
        factorial(r - 1) * factorial(s - 1),
        factorial(r + s - 1),
    ))
}

/// Product of the consecutive integers lo..=hi, empty product = 1.
pub fn int_product(lo: u64, hi: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut j = lo;
    while j <= hi {
        acc *= BigInt::from(j);
        j += 1;
    }
    acc
}

/// True iff the rational is an integer power of two (2^e for some e in Z).
pub fn is_power_of_two(q: &Rational) -> bool {
    if q.is_zero() || q.is_negative() {
        return false;
    }
    let numer_pow2 = q.numer().magnitude().count_ones() == 1;
    let denom_pow2 = q.denom().magnitude().count_ones() == 1;
    (numer_pow2 && q.denom().is_one()) || (denom_pow2 && q.numer().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_base_cases() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(1), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
    }

    #[test]
    fn binomial_cases() {
        assert_eq!(binomial(2, 2), BigInt::one());
        assert_eq!(binomial(2, 1), BigInt::from(2));
        assert_eq!(binomial(4, 5), BigInt::zero());
        assert_eq!(binomial(4, -1), BigInt::zero());
    }

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli(0), Rational::one());
        assert_eq!(bernoulli(1), ratio(-1, 2));
        assert_eq!(bernoulli(2), ratio(1, 6));
        assert_eq!(bernoulli(3), Rational::zero());
        assert_eq!(bernoulli(4), ratio(-1, 30));
    }

    #[test]
    fn bernoulli_recurrence_holds() {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0 for 1 <= m <= 60
        for m in 1..=60u64 {
            let mut acc = Rational::zero();
            for j in 0..=m {
                acc += Rational::from_integer(binomial(m + 1, j as i64)) * bernoulli(j as u32);
            }
            assert!(acc.is_zero(), "recurrence failed at m = {m}");
        }
    }

    #[test]
    fn bernoulli_odd_vanish() {
        for m in (3..=61u32).step_by(2) {
            assert!(bernoulli(m).is_zero(), "B_{m} should vanish");
        }
    }

    #[test]
    fn even_zeta_coeff_values() {
        assert_eq!(even_zeta_coeff(0), ratio(-1, 2));
        assert_eq!(even_zeta_coeff(1), ratio(1, 6));
        assert_eq!(even_zeta_coeff(2), ratio(1, 90));
        assert_eq!(even_zeta_coeff(3), ratio(1, 945));
    }

    #[test]
    fn beta_values() {
        assert_eq!(beta_pos_int(1, 1).unwrap(), Rational::one());
        assert_eq!(beta_pos_int(2, 2).unwrap(), ratio(1, 6));
        // 2n+2a+2 = 4, 2b+2 = 2 at n=1, a=0, b=0
        assert_eq!(beta_pos_int(4, 2).unwrap(), ratio(1, 20));
        assert!(beta_pos_int(0, 3).is_err());
        assert!(beta_pos_int(3, 0).is_err());
    }

    #[test]
    fn beta_symmetry_grid() {
        for r in 1..=30u64 {
            for s in 1..=30u64 {
                assert_eq!(beta_pos_int(r, s).unwrap(), beta_pos_int(s, r).unwrap());
            }
        }
    }

    #[test]
    fn beta_factorial_identity_small_grid() {
        // beta(2n+2a+2, 2b+2) * (2n+2a+2b+3)! = (2n+2a+1)! * (2b+1)!
        for n in 0..=3u64 {
            for a in 0..=3u64 {
                for b in 0..=3u64 {
                    let lhs = beta_pos_int(2 * n + 2 * a + 2, 2 * b + 2).unwrap()
                        * Rational::from_integer(factorial(2 * n + 2 * a + 2 * b + 3));
                    let rhs =
                        Rational::from_integer(factorial(2 * n + 2 * a + 1) * factorial(2 * b + 1));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn int_product_matches_factorial_ratio() {
        assert_eq!(int_product(5, 4), BigInt::one());
        assert_eq!(int_product(3, 6), BigInt::from(360));
        assert_eq!(int_product(1, 10), factorial(10));
    }

    #[test]
    fn power_of_two_detection() {
        assert!(is_power_of_two(&ratio(4, 1)));
        assert!(is_power_of_two(&ratio(1, 8)));
        assert!(is_power_of_two(&ratio(1, 1)));
        assert!(!is_power_of_two(&ratio(3, 4)));
        assert!(!is_power_of_two(&ratio(-2, 1)));
        assert!(!is_power_of_two(&Rational::zero()));
    }
}
