//! Trigonometric evaluation on [0, pi/2] by Taylor series.
//!
//! This is the crate's "numeric trigonometric route" to cot(x): it shares no
//! machinery with the cotangent power series in [`super::series`], which
//! keeps the two usable as mutual cross-checks.

use super::{BigFloat, PrecisionContext};

/// (sin x, cos x) for |x| <= 2, each within a few ulps of working precision.
///
/// Both series alternate with strictly decreasing terms on this range, so
/// truncation is bounded by the first omitted term.
pub fn sin_cos(x: &BigFloat, ctx: &PrecisionContext) -> (BigFloat, BigFloat) {
    let w = ctx.working_bits();
    assert!(
        x.abs() <= BigFloat::from_u64(2, w),
        "sin_cos requires |x| <= 2"
    );
    let x2 = &x.mul(x).neg(); // -x^2
    let threshold_sin = x.abs().mul_pow2(-(i64::from(w) + 6));
    let threshold_cos = BigFloat::pow2(-(i64::from(w) + 6), w);

    let mut sin = x.clone();
    let mut term = x.clone();
    let mut k = 1u64;
    while !term.is_zero() && term.abs() > threshold_sin {
        term = term.mul(x2).div_u64(2 * k * (2 * k + 1));
        sin = sin.add(&term);
        k += 1;
    }

    let one = BigFloat::one(w);
    let mut cos = one.clone();
    let mut term = one;
    let mut k = 1u64;
    while !term.is_zero() && term.abs() > threshold_cos {
        term = term.mul(x2).div_u64((2 * k - 1) * (2 * k));
        cos = cos.add(&term);
        k += 1;
    }

    (sin, cos)
}

/// cot x = cos x / sin x for 0 < x <= pi/2 (more generally 0 < x < 2).
pub fn cot(x: &BigFloat, ctx: &PrecisionContext) -> BigFloat {
    assert!(x.is_positive(), "cot requires x > 0");
    let (sin, cos) = sin_cos(x, ctx);
    cos.div(&sin)
}

/// x * cot x, extended by its limit 1 at x = 0.
pub fn x_cot_x(x: &BigFloat, ctx: &PrecisionContext) -> BigFloat {
    if x.is_zero() {
        return BigFloat::one(ctx.working_bits());
    }
    x.mul(&cot(x, ctx))
}
