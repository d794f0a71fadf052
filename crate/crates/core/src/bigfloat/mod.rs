//! Arbitrary-precision binary floating point with an explicit precision
//! contract.
//!
//! A [`BigFloat`] is `mantissa * 2^exp` with the mantissa held odd (or zero),
//! so every dyadic rational has exactly one representation and equality is
//! structural. Arithmetic rounds to nearest, ties to even, at the working
//! precision of a [`PrecisionContext`] (`precision_bits + guard_bits`).
//! Identical inputs under the same context give bit-identical outputs.
//!
//! The error model used throughout the crate is deliberately coarse but
//! sound: every evaluator reports `truncation bound + flops * 2^(1-w) * M`
//! where `w` is the working precision and `M` dominates every intermediate
//! magnitude. Each primitive operation here keeps its error below
//! `2^(1-w) * |result|`: add/mul/div are correctly rounded (additions fold
//! an operand smaller than 2^(-w-8) of the other into the result with error
//! still under one ulp).

mod consts;
mod series;
mod trig;

pub use consts::pi;
pub use series::{cot_series_eval, sum_with_tail, zeta_even, zeta_odd, SUM_TERM_CAP};
pub use trig::{cot, sin_cos, x_cot_x};

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Working-precision contract for a computation.
///
/// All operations carried out under a context round to nearest at
/// `precision_bits + guard_bits` bits; results are *reported* (printed,
/// compared) at `precision_bits`. The rounding mode is fixed to
/// round-to-nearest, ties-to-even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    precision_bits: u32,
    guard_bits: u32,
}

/// Default number of guard bits added on top of the reporting precision.
pub const DEFAULT_GUARD_BITS: u32 = 32;

impl PrecisionContext {
    /// Context with the default 32 guard bits. Panics if `precision_bits < 64`.
    pub fn new(precision_bits: u32) -> Self {
        Self::with_guard(precision_bits, DEFAULT_GUARD_BITS)
    }

    /// Context with explicit guard bits. Panics if `precision_bits < 64`
    /// or `guard_bits < 16`.
    pub fn with_guard(precision_bits: u32, guard_bits: u32) -> Self {
        assert!(precision_bits >= 64, "precision_bits must be at least 64");
        assert!(guard_bits >= 16, "guard_bits must be at least 16");
        PrecisionContext {
            precision_bits,
            guard_bits,
        }
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    /// Mantissa width actually used by arithmetic under this context.
    pub fn working_bits(&self) -> u32 {
        self.precision_bits + self.guard_bits
    }

    /// Accumulated-rounding term of the error model: `ops * 2^(1-w) * max_mag`,
    /// doubled to absorb the rounding of the bound computation itself.
    pub fn rounding_bound(&self, ops: u64, max_mag: &BigFloat) -> BigFloat {
        let w = self.working_bits();
        let scale = BigFloat::pow2(2 - i64::from(w), w);
        &(&BigFloat::from_u64(ops, w) * &scale) * &max_mag.abs()
    }
}

/// Arbitrary-precision binary float bound to a working precision.
///
/// Representation: `value = mantissa * 2^exp`, mantissa odd or zero,
/// `|mantissa| < 2^prec`. Comparison and equality are by value.
#[derive(Clone)]
pub struct BigFloat {
    mantissa: BigInt,
    exp: i64,
    prec: u32,
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat {
            mantissa: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn one(prec: u32) -> Self {
        BigFloat {
            mantissa: BigInt::one(),
            exp: 0,
            prec,
        }
    }

    /// Exactly 2^e.
    pub fn pow2(e: i64, prec: u32) -> Self {
        BigFloat {
            mantissa: BigInt::one(),
            exp: e,
            prec,
        }
    }

    pub fn from_u64(v: u64, prec: u32) -> Self {
        Self::from_bigint(&BigInt::from(v), prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::from_bigint(&BigInt::from(v), prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        round_to(v.clone(), 0, prec)
    }

    /// `num / den` correctly rounded to `prec` bits. Panics if `den` is zero.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(!den.is_zero(), "from_ratio: zero denominator");
        div_mantissas(num, 0, den, 0, prec)
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        Self::from_ratio(q.numer(), q.denom(), prec)
    }

    /// Exact rational value of this float.
    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mantissa << self.exp as u64)
        } else {
            Rational::new(self.mantissa.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    /// Smallest exponent t with `|self| < 2^t`; `None` for zero.
    pub fn top_exponent(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mantissa.magnitude().bits() as i64)
        }
    }

    /// One unit in the last place at this float's working precision.
    pub fn ulp(&self) -> BigFloat {
        let top = self.top_exponent().unwrap_or(0);
        BigFloat::pow2(top - i64::from(self.prec), self.prec)
    }

    pub fn abs(&self) -> BigFloat {
        BigFloat {
            mantissa: self.mantissa.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> BigFloat {
        BigFloat {
            mantissa: -&self.mantissa,
            exp: self.exp,
            prec: self.prec,
        }
    }

    /// Exact scaling by 2^k.
    pub fn mul_pow2(&self, k: i64) -> BigFloat {
        if self.is_zero() {
            return self.clone();
        }
        BigFloat {
            mantissa: self.mantissa.clone(),
            exp: self.exp + k,
            prec: self.prec,
        }
    }

    /// Re-round to a different precision.
    pub fn with_precision(&self, prec: u32) -> BigFloat {
        round_to(self.mantissa.clone(), self.exp, prec)
    }

    pub fn add(&self, other: &BigFloat) -> BigFloat {
        let prec = self.prec.max(other.prec);
        if self.is_zero() {
            return other.with_precision(prec);
        }
        if other.is_zero() {
            return self.with_precision(prec);
        }
        let top_a = self.top_exponent().unwrap();
        let top_b = other.top_exponent().unwrap();
        let gap = i64::from(prec) + 8;
        // An operand below 2^(-w-8) of the other cannot move the rounded
        // result by a full ulp; fold it away.
        if top_a - top_b > gap {
            return self.with_precision(prec);
        }
        if top_b - top_a > gap {
            return other.with_precision(prec);
        }
        let e = self.exp.min(other.exp);
        let m =
            (&self.mantissa << (self.exp - e) as u64) + (&other.mantissa << (other.exp - e) as u64);
        round_to(m, e, prec)
    }

    pub fn sub(&self, other: &BigFloat) -> BigFloat {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BigFloat) -> BigFloat {
        let prec = self.prec.max(other.prec);
        round_to(&self.mantissa * &other.mantissa, self.exp + other.exp, prec)
    }

    /// Correctly rounded quotient. Panics on division by zero.
    pub fn div(&self, other: &BigFloat) -> BigFloat {
        assert!(!other.is_zero(), "division by zero BigFloat");
        let prec = self.prec.max(other.prec);
        if self.is_zero() {
            return BigFloat::zero(prec);
        }
        div_mantissas(&self.mantissa, self.exp, &other.mantissa, other.exp, prec)
    }

    pub fn div_u64(&self, d: u64) -> BigFloat {
        assert!(d != 0, "division by zero");
        if self.is_zero() {
            return self.clone();
        }
        div_mantissas(&self.mantissa, self.exp, &BigInt::from(d), 0, self.prec)
    }

    pub fn mul_u64(&self, m: u64) -> BigFloat {
        round_to(&self.mantissa * BigInt::from(m), self.exp, self.prec)
    }

    /// Integer power by binary exponentiation (each step rounded).
    pub fn pow_u32(&self, k: u32) -> BigFloat {
        let mut acc = BigFloat::one(self.prec);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn cmp_value(&self, other: &BigFloat) -> Ordering {
        let sa = self.mantissa.sign();
        let sb = other.mantissa.sign();
        let sign_rank = |s: Sign| match s {
            Sign::Minus => 0,
            Sign::NoSign => 1,
            Sign::Plus => 2,
        };
        match sign_rank(sa).cmp(&sign_rank(sb)) {
            Ordering::Equal => {}
            ord => return ord,
        }
        if self.is_zero() {
            return Ordering::Equal;
        }
        // Same nonzero sign: compare magnitudes, then flip for negatives.
        let mag_ord = {
            let ta = self.top_exponent().unwrap();
            let tb = other.top_exponent().unwrap();
            if ta != tb {
                ta.cmp(&tb)
            } else {
                let e = self.exp.min(other.exp);
                let ma = self.mantissa.magnitude() << (self.exp - e) as u64;
                let mb = other.mantissa.magnitude() << (other.exp - e) as u64;
                ma.cmp(&mb)
            }
        };
        if sa == Sign::Minus {
            mag_ord.reverse()
        } else {
            mag_ord
        }
    }

    /// Decimal string with exactly `frac_digits` digits after the point,
    /// rounded to nearest (ties to even).
    pub fn to_decimal_string(&self, frac_digits: u32) -> String {
        let scaled = self.round_scaled_pow10(frac_digits);
        let neg = scaled.is_negative();
        let digits = scaled.magnitude().to_string();
        let d = frac_digits as usize;
        let padded = if digits.len() <= d {
            format!("{}{}", "0".repeat(d + 1 - digits.len()), digits)
        } else {
            digits
        };
        let split = padded.len() - d;
        let mut out = String::new();
        if neg && padded.bytes().any(|c| c != b'0') {
            out.push('-');
        }
        out.push_str(&padded[..split]);
        if d > 0 {
            out.push('.');
            out.push_str(&padded[split..]);
        }
        out
    }

    /// round(value * 10^k) as an integer, ties to even.
    fn round_scaled_pow10(&self, k: u32) -> BigInt {
        let pow10 = BigInt::from(10u32).pow(k);
        let num = &self.mantissa * &pow10;
        if self.exp >= 0 {
            return num << self.exp as u64;
        }
        let den: BigUint = BigUint::one() << (-self.exp) as u64;
        let (q, r) = num.magnitude().div_rem(&den);
        let twice_r = &r << 1u32;
        let round_up = match twice_r.cmp(&den) {
            Ordering::Greater => true,
            Ordering::Equal => q.is_odd(),
            Ordering::Less => false,
        };
        let q = if round_up { q + BigUint::one() } else { q };
        BigInt::from_biguint(self.mantissa.sign(), q)
    }

    /// Scientific notation with `sig` significant digits; `Up` rounds the
    /// magnitude upward (used for printing error bounds, which must never
    /// shrink in print).
    pub fn to_sci_string(&self, sig: u32, mode: SciRounding) -> String {
        assert!(sig >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let v = self.to_rational().abs();
        // Decimal exponent k with 10^k <= v < 10^(k+1).
        let mut k =
            ((self.top_exponent().unwrap() as f64) * std::f64::consts::LOG10_2).floor() as i64;
        while pow10_rational(k + 1) <= v {
            k += 1;
        }
        while pow10_rational(k) > v {
            k -= 1;
        }
        // Integer mantissa with `sig` digits.
        let scale = pow10_rational(i64::from(sig) - 1 - k);
        let scaled = v * scale;
        let (q, r) = scaled.numer().div_rem(scaled.denom());
        let mut m = q.magnitude().clone();
        match mode {
            SciRounding::Up => {
                if !r.is_zero() {
                    m += BigUint::one();
                }
            }
            SciRounding::Nearest => {
                let twice_r = r.magnitude() << 1u32;
                match twice_r.cmp(scaled.denom().magnitude()) {
                    Ordering::Greater => m += BigUint::one(),
                    Ordering::Equal if m.is_odd() => m += BigUint::one(),
                    _ => {}
                }
            }
        }
        let mut digits = m.to_string();
        if digits.len() > sig as usize {
            // rounding carried into an extra digit (e.g. 999.. -> 1000..)
            digits.truncate(sig as usize);
            k += 1;
        }
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(&digits[..1]);
        if digits.len() > 1 {
            out.push('.');
            out.push_str(&digits[1..]);
        }
        out.push('e');
        out.push_str(&k.to_string());
        out
    }

    /// Parses decimal strings of the form `[+-]ddd[.ddd][e[+-]ddd]` exactly,
    /// then rounds once to `prec` bits.
    pub fn parse_decimal(s: &str, prec: u32) -> Result<BigFloat> {
        let q = parse_decimal_rational(s)
            .ok_or_else(|| Error::InvalidArgument(format!("not a decimal number: {s:?}")))?;
        Ok(BigFloat::from_rational(&q, prec))
    }
}

/// Rounding mode for [`BigFloat::to_sci_string`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SciRounding {
    Nearest,
    Up,
}

fn pow10_rational(k: i64) -> Rational {
    let p = BigInt::from(10u32).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

fn parse_decimal_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (mantissa_part, exp_part) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], Some(&s[i + 1..])),
        None => (s, None),
    };
    let exp10: i64 = match exp_part {
        Some(e) => e.parse().ok()?,
        None => 0,
    };
    let (sign, digits_part) = match mantissa_part.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa_part.strip_prefix('+').unwrap_or(mantissa_part)),
    };
    let (int_part, frac_part) = match digits_part.find('.') {
        Some(i) => (&digits_part[..i], &digits_part[i + 1..]),
        None => (digits_part, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let joined = format!("{int_part}{frac_part}");
    let n: BigInt = joined.parse().ok()?;
    let shift = exp10 - frac_part.len() as i64;
    Some(Rational::from_integer(BigInt::from(sign) * n) * pow10_rational(shift))
}

/// Rounds `m * 2^e` to `prec` significant bits, nearest, ties to even, and
/// canonicalizes (odd mantissa or zero).
fn round_to(m: BigInt, e: i64, prec: u32) -> BigFloat {
    if m.is_zero() {
        return BigFloat::zero(prec);
    }
    let bits = m.magnitude().bits();
    if bits <= u64::from(prec) {
        return canonicalize(m, e, prec);
    }
    let shift = bits - u64::from(prec);
    let sign = m.sign();
    let mag = m.magnitude();
    let high = mag >> shift;
    let low = mag - (&high << shift);
    let half = BigUint::one() << (shift - 1);
    let round_up = match low.cmp(&half) {
        Ordering::Greater => true,
        Ordering::Equal => high.is_odd(),
        Ordering::Less => false,
    };
    let high = if round_up {
        high + BigUint::one()
    } else {
        high
    };
    canonicalize(BigInt::from_biguint(sign, high), e + shift as i64, prec)
}

fn canonicalize(m: BigInt, e: i64, prec: u32) -> BigFloat {
    if m.is_zero() {
        return BigFloat::zero(prec);
    }
    let tz = m.magnitude().trailing_zeros().unwrap_or(0);
    let m = m >> tz;
    let mut out = BigFloat {
        mantissa: m,
        exp: e + tz as i64,
        prec,
    };
    // rounding carry can leave exactly prec+1 bits (a power of two); the
    // trailing-zero strip above already reduced that case to mantissa 1.
    debug_assert!(out.mantissa.magnitude().bits() <= u64::from(prec.max(1)));
    out.prec = prec;
    out
}

/// `(m1 * 2^e1) / (m2 * 2^e2)` correctly rounded to `prec` bits, via a
/// truncating division with a sticky bit.
fn div_mantissas(m1: &BigInt, e1: i64, m2: &BigInt, e2: i64, prec: u32) -> BigFloat {
    if m1.is_zero() {
        return BigFloat::zero(prec);
    }
    let sign = if (m1.sign() == Sign::Minus) == (m2.sign() == Sign::Minus) {
        Sign::Plus
    } else {
        Sign::Minus
    };
    let b1 = m1.magnitude().bits() as i64;
    let b2 = m2.magnitude().bits() as i64;
    let shift = (i64::from(prec) + 2 + b2 - b1).max(0) as u64;
    let num = m1.magnitude() << shift;
    let (q, r) = num.div_rem(m2.magnitude());
    let mut q = q;
    let mut e = e1 - e2 - shift as i64;
    if !r.is_zero() {
        q = (q << 1u32) + BigUint::one();
        e -= 1;
    }
    round_to(BigInt::from_biguint(sign, q), e, prec)
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        // canonical representation makes value equality structural
        self.mantissa == other.mantissa && (self.is_zero() || self.exp == other.exp)
    }
}

impl Eq for BigFloat {}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BigFloat({} * 2^{}, prec={})",
            self.mantissa, self.exp, self.prec
        )
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.to_sci_string(24, SciRounding::Nearest))
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for &BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &BigFloat) -> BigFloat {
                BigFloat::$method(self, rhs)
            }
        }
    };
}

impl_binop!(Add, add);
impl_binop!(Sub, sub);
impl_binop!(Mul, mul);
impl_binop!(Div, div);

impl std::ops::Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat::neg(self)
    }
}

/// Whether an error bound is proven (truncation + rounding model) or an
/// empirical estimate (quadrature's node-doubling delta).
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Proven,
    Heuristic,
}

/// A value together with an upper bound on its total error (truncation plus
/// accumulated rounding).
#[derive(Clone, Debug)]
pub struct EvalResult {
    pub value: BigFloat,
    pub error_bound: BigFloat,
    pub bound_kind: BoundKind,
}

impl EvalResult {
    pub fn new(value: BigFloat, error_bound: BigFloat) -> Self {
        debug_assert!(!error_bound.is_negative());
        EvalResult {
            value,
            error_bound,
            bound_kind: BoundKind::Proven,
        }
    }

    pub fn heuristic(value: BigFloat, error_bound: BigFloat) -> Self {
        EvalResult {
            value,
            error_bound,
            bound_kind: BoundKind::Heuristic,
        }
    }

    /// Exact value of a known quantity: zero error.
    pub fn exact(value: BigFloat) -> Self {
        let prec = value.precision();
        EvalResult::new(value, BigFloat::zero(prec))
    }

    /// True iff the two intervals `value +- error_bound` intersect,
    /// decided in exact rational arithmetic.
    pub fn agrees_with(&self, other: &EvalResult) -> bool {
        let diff = (self.value.to_rational() - other.value.to_rational()).abs();
        diff <= self.error_bound.to_rational() + other.error_bound.to_rational()
    }

    /// Exact test `|self.value - reference| <= tol`.
    pub fn within_of(&self, reference: &BigFloat, tol: &BigFloat) -> bool {
        let diff = (self.value.to_rational() - reference.to_rational()).abs();
        diff <= tol.to_rational()
    }
}

/// Largest number of fractional decimal digits justified by an error bound:
/// the maximal d with `bound <= 0.5 * 10^-d`, capped by the value's working
/// precision. An exactly-zero bound returns the cap.
pub fn justified_frac_digits(bound: &BigFloat, prec: u32) -> u32 {
    let cap = (u64::from(prec) * 301 / 1000).saturating_sub(1) as u32;
    if bound.is_zero() {
        return cap;
    }
    let b = bound.to_rational().abs();
    let mut d = 0u32;
    let mut threshold = Rational::new(BigInt::one(), BigInt::from(2));
    let ten = Rational::from_integer(BigInt::from(10));
    // invariant: threshold = 0.5 * 10^-d
    while d < cap {
        let next = &threshold / &ten;
        if b <= next {
            d += 1;
            threshold = next;
        } else {
            break;
        }
    }
    if d == 0 && b > threshold {
        0
    } else {
        d
    }
}
