//! Exact-rational replay of the termwise derivation behind the single-series
//! forms of H(a,b) and T(a,b).
//!
//! Expanding the integral representations along the cotangent series and
//! reducing each moment integral through the Beta function makes both sides
//! of each closed-form identity a series in the common factor
//! pi^(2n+2a+2b+2) * r_n * 2^(-2n) (r_n the rational even-zeta coefficient).
//! Stripping that factor leaves one exact rational coefficient identity per
//! series index n; the kernel checks those identities with zero tolerance.
//! No floating point enters this module.
//!
//! The analytic step (termwise integration of the series) is *not* certified
//! here; the numeric agreement between the integral and series routes is
//! the evidence for it.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::closed_form::SeriesFamily;
use crate::error::{Error, Result, ViolationDetail};
use crate::exact::{factorial, int_product, Rational};

/// One coefficient identity: the exact rational multipliers of
/// pi^(2n+2a+2b+2) r_n 2^(-2n) on the derivation side (`lhs_coeff`) and on
/// the statement side (`rhs_coeff`). The identity holds iff they are equal
/// as canonical rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermIdentity {
    pub n: u64,
    pub a: u32,
    pub b: u32,
    pub context: SeriesFamily,
    pub lhs_coeff: Rational,
    pub rhs_coeff: Rational,
}

impl TermIdentity {
    pub fn holds(&self) -> bool {
        self.lhs_coeff == self.rhs_coeff
    }
}

/// Which identity family to replay. `TExtendedProduct` is the negative
/// control: the T identity with the statement's denominator product extended
/// by one extra factor (2n+2a+2b+3). It must fail for every b >= 1 cell and
/// is kept to demonstrate that the checker detects a wrong coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReplayForm {
    H,
    T,
    TExtendedProduct,
}

impl ReplayForm {
    pub fn family(&self) -> SeriesFamily {
        match self {
            ReplayForm::H => SeriesFamily::H,
            ReplayForm::T | ReplayForm::TExtendedProduct => SeriesFamily::T,
        }
    }
}

impl std::fmt::Display for ReplayForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReplayForm::H => write!(f, "H"),
            ReplayForm::T => write!(f, "T"),
            ReplayForm::TExtendedProduct => write!(f, "T-extended-product"),
        }
    }
}

/// Unreduced (numerator, denominator) pair; comparison cross-multiplies, so
/// the hot path never runs a gcd.
type RawRatio = (BigInt, BigInt);

fn raw_eq(x: &RawRatio, y: &RawRatio) -> bool {
    &x.0 * &y.1 == &y.0 * &x.1
}

fn to_rational(x: RawRatio) -> Rational {
    Rational::new(x.0, x.1)
}

fn h_lhs(n: u64, a: u64, b: u64) -> RawRatio {
    // -4 (2n+2a+1)! / ((2a+2)! (2n+2a+2b+3)!)
    (
        BigInt::from(-4) * factorial(2 * n + 2 * a + 1),
        factorial(2 * a + 2) * factorial(2 * n + 2 * a + 2 * b + 3),
    )
}

fn h_rhs(n: u64, a: u64, b: u64) -> RawRatio {
    // -4 / ((2a+2)! (2n+2a+2)...(2n+2a+2b+3))
    (
        BigInt::from(-4),
        factorial(2 * a + 2) * int_product(2 * n + 2 * a + 2, 2 * n + 2 * a + 2 * b + 3),
    )
}

fn t_lhs(n: u64, a: u64, b: u64) -> RawRatio {
    // -2 (2n+2a)! / ((2a+1)! (2n+2a+2b+2)! 2^(2a+2b+2))
    (
        BigInt::from(-2) * factorial(2 * n + 2 * a),
        factorial(2 * a + 1)
            * factorial(2 * n + 2 * a + 2 * b + 2)
            * (BigInt::one() << (2 * a + 2 * b + 2)),
    )
}

fn t_rhs(n: u64, a: u64, b: u64, extended: bool) -> RawRatio {
    // -2 / ((2a+1)! (2n+2a+1)...(2n+2a+2b+2) 2^(2a+2b+2));
    // the extended variant runs the product one factor further
    let hi = 2 * n + 2 * a + 2 * b + if extended { 3 } else { 2 };
    (
        BigInt::from(-2),
        factorial(2 * a + 1)
            * int_product(2 * n + 2 * a + 1, hi)
            * (BigInt::one() << (2 * a + 2 * b + 2)),
    )
}

fn raw_sides(form: ReplayForm, n: u64, a: u64, b: u64) -> (RawRatio, RawRatio) {
    match form {
        ReplayForm::H => (h_lhs(n, a, b), h_rhs(n, a, b)),
        ReplayForm::T => (t_lhs(n, a, b), t_rhs(n, a, b, false)),
        ReplayForm::TExtendedProduct => (t_lhs(n, a, b), t_rhs(n, a, b, true)),
    }
}

fn term(form: ReplayForm, n: u64, a: u32, b: u32) -> TermIdentity {
    let (lhs, rhs) = raw_sides(form, n, u64::from(a), u64::from(b));
    TermIdentity {
        n,
        a,
        b,
        context: form.family(),
        lhs_coeff: to_rational(lhs),
        rhs_coeff: to_rational(rhs),
    }
}

/// The n-th coefficient identity of the H derivation.
pub fn term_h(n: u64, a: u32, b: u32) -> TermIdentity {
    term(ReplayForm::H, n, a, b)
}

/// The n-th coefficient identity of the T derivation (statement form).
pub fn term_t(n: u64, a: u32, b: u32) -> TermIdentity {
    term(ReplayForm::T, n, a, b)
}

/// The negative-control variant of [`term_t`] with the denominator product
/// extended one factor past the statement form.
pub fn term_t_extended_product(n: u64, a: u32, b: u32) -> TermIdentity {
    term(ReplayForm::TExtendedProduct, n, a, b)
}

/// Machine-readable outcome of one replayed cell.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Certificate {
    pub form: String,
    pub a: u32,
    pub b: u32,
    pub n_max: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationRecord>,
}

/// The first offending index with both exact coefficients.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ViolationRecord {
    pub n: u64,
    pub lhs: String,
    pub rhs: String,
}

/// Checks lhs = rhs for all 0 <= n <= n_max; the error carries the first
/// counterexample.
pub fn replay(form: ReplayForm, a: u32, b: u32, n_max: u64) -> Result<Certificate> {
    let (a64, b64) = (u64::from(a), u64::from(b));
    for n in 0..=n_max {
        let (lhs, rhs) = raw_sides(form, n, a64, b64);
        if !raw_eq(&lhs, &rhs) {
            return Err(Error::IdentityViolation(Box::new(ViolationDetail {
                a,
                b,
                n,
                lhs: to_rational(lhs),
                rhs: to_rational(rhs),
            })));
        }
    }
    Ok(Certificate {
        form: form.to_string(),
        a,
        b,
        n_max,
        pass: true,
        violation: None,
    })
}

/// [`replay`], folding a violation into a failing certificate instead of an
/// error.
pub fn replay_certificate(form: ReplayForm, a: u32, b: u32, n_max: u64) -> Certificate {
    match replay(form, a, b, n_max) {
        Ok(cert) => cert,
        Err(Error::IdentityViolation(detail)) => Certificate {
            form: form.to_string(),
            a,
            b,
            n_max,
            pass: false,
            violation: Some(ViolationRecord {
                n: detail.n,
                lhs: detail.lhs.to_string(),
                rhs: detail.rhs.to_string(),
            }),
        },
        Err(_) => unreachable!("replay only fails with IdentityViolation"),
    }
}
