//! Direct evaluation of the defining nested series with proven truncation
//! bounds, plus the all-2s closed forms.
//!
//! The nested sums run over 1 <= k_1 < ... < k_r <= N by a prefix-sum
//! dynamic program (O(r N) time, O(N) space). Direct summation is the
//! low-precision definitional anchor; the closed forms and the single-series
//! route provide the high-precision values.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::bigfloat::{BigFloat, EvalResult, PrecisionContext};
use crate::error::{Error, Result};
use crate::exact::{factorial, ratio, Rational};
use crate::index::MultiIndex;

/// Default truncation length for the direct routes.
pub const DEFAULT_DIRECT_TERMS: usize = 100_000;

enum SeriesKind {
    Zeta,
    OddT,
}

/// zeta(s_1, ..., s_r) truncated at k_r <= `n_terms`, with a proven tail
/// bound. Rejects indices whose last entry is 1. The empty index gives
/// exactly 1.
pub fn mzv_direct(s: &MultiIndex, n_terms: usize, ctx: &PrecisionContext) -> Result<EvalResult> {
    nested_direct(s, n_terms, ctx, SeriesKind::Zeta)
}

/// t(s_1, ..., s_r) truncated at k_r <= `n_terms`; the summation variables
/// run over the odd integers 2k-1. The empty index gives exactly 1.
pub fn mtv_direct(s: &MultiIndex, n_terms: usize, ctx: &PrecisionContext) -> Result<EvalResult> {
    nested_direct(s, n_terms, ctx, SeriesKind::OddT)
}

fn nested_direct(
    s: &MultiIndex,
    n_terms: usize,
    ctx: &PrecisionContext,
    kind: SeriesKind,
) -> Result<EvalResult> {
    let w = ctx.working_bits();
    if s.depth() == 0 {
        return Ok(EvalResult::exact(BigFloat::one(w)));
    }
    if s.last() == Some(1) {
        return Err(Error::InadmissibleIndex);
    }
    if n_terms < s.depth() {
        return Err(Error::InvalidArgument(format!(
            "need at least depth = {} terms, got {}",
            s.depth(),
            n_terms
        )));
    }

    // one reciprocal-power table per distinct exponent
    let mut tables: HashMap<u32, Vec<BigFloat>> = HashMap::new();
    for &e in s.entries() {
        tables.entry(e).or_insert_with(|| {
            (0..=n_terms)
                .map(|m| {
                    if m == 0 {
                        BigFloat::zero(w)
                    } else {
                        let base = match kind {
                            SeriesKind::Zeta => BigInt::from(m),
                            SeriesKind::OddT => BigInt::from(2 * m - 1),
                        };
                        BigFloat::from_ratio(&BigInt::one(), &base.pow(e), w)
                    }
                })
                .collect()
        });
    }

    // prev[m] = sum over 1 <= k_1 < ... < k_i <= m of the first i factors
    let mut prev: Vec<BigFloat> = vec![BigFloat::one(w); n_terms + 1];
    let mut max_mag = BigFloat::one(w);
    for (level, &e) in s.entries().iter().enumerate() {
        let table = &tables[&e];
        let mut cur = vec![BigFloat::zero(w); n_terms + 1];
        let mut acc = BigFloat::zero(w);
        for m in (level + 1)..=n_terms {
            acc = acc.add(&table[m].mul(&prev[m - 1]));
            cur[m] = acc.clone();
        }
        if acc > max_mag {
            max_mag = acc.clone();
        }
        prev = cur;
    }
    let value = prev[n_terms].clone();

    let tail = match kind {
        SeriesKind::Zeta => mzv_tail_bound(s, n_terms as u64),
        SeriesKind::OddT => mtv_tail_bound(s, n_terms as u64),
    };
    let ops = 3 * (s.depth() as u64) * (n_terms as u64) + 8;
    let bound = BigFloat::from_rational(&tail, w)
        .add(&value.ulp())
        .add(&ctx.rounding_bound(ops, &max_mag));
    Ok(EvalResult::new(value, bound))
}

/// Rational upper bound on ln n: 0.7 * bitlength(n), since ln 2 < 7/10.
fn log_upper(n: u64) -> Rational {
    ratio(7 * (64 - n.leading_zeros()) as i64, 10)
}

/// Exact-rational bound on the integral of (1 + ln x)^u / x^s over (N, inf),
/// which dominates the corresponding sum because the integrand decreases.
/// By parts: I_u = (1 + ln N)^u N^(1-s)/(s-1) + u/(s-1) I_{u-1}.
fn tail_integral(n: u64, s: u32, u: u32) -> Rational {
    let l = Rational::one() + log_upper(n);
    let s_minus_1 = ratio(i64::from(s) - 1, 1);
    let n_pow = Rational::new(BigInt::one(), BigInt::from(n).pow(s - 1));
    let mut acc = &n_pow / &s_minus_1; // I_0
    for j in 1..=u {
        let lead = l.pow(j as i32) * &n_pow / &s_minus_1;
        acc = lead + ratio(i64::from(j), 1) / &s_minus_1 * acc;
    }
    acc
}

/// Proven bound on the zeta-series terms omitted by truncating k_r at N:
/// each inner factor with s_i >= 2 is at most zeta(2) < 5/3, each unit
/// entry contributes a harmonic factor at most 1 + ln k_r, and the sum over
/// k_r > N is dominated by the tail integral.
fn mzv_tail_bound(s: &MultiIndex, n: u64) -> Rational {
    let r = s.depth();
    let last = s.last().expect("nonempty");
    let units = s.entries()[..r - 1].iter().filter(|&&e| e == 1).count() as u32;
    let non_units = (r - 1) as u32 - units;
    ratio(5, 3).pow(non_units as i32) * tail_integral(n, last, units)
}

/// As [`mzv_tail_bound`] for the odd-denominator series: inner factors with
/// s_i >= 2 are at most t(2) < 5/4, unit entries are again below 1 + ln k_r
/// (the odd harmonic sum is the smaller), and (2k-1)^-s <= k^-s ties the
/// tail to the same integral. With no unit entries the sharper odd-tail
/// integral (2N-1)^(1-s) / (2(s-1)) is used.
fn mtv_tail_bound(s: &MultiIndex, n: u64) -> Rational {
    let r = s.depth();
    let last = s.last().expect("nonempty");
    let units = s.entries()[..r - 1].iter().filter(|&&e| e == 1).count() as u32;
    let non_units = (r - 1) as u32 - units;
    let factor = ratio(5, 4).pow(non_units as i32);
    if units == 0 {
        let tail = Rational::new(
            BigInt::one(),
            BigInt::from(2 * n - 1).pow(last - 1) * BigInt::from(2 * (last - 1)),
        );
        factor * tail
    } else {
        factor * tail_integral(n, last, units)
    }
}

/// zeta({2}^d) = pi^(2d) / (2d+1)!.
pub fn pow2_zeta(d: u32, ctx: &PrecisionContext) -> BigFloat {
    pow2_zeta_bounded(d, ctx).0
}

pub(crate) fn pow2_zeta_bounded(d: u32, ctx: &PrecisionContext) -> (BigFloat, BigFloat) {
    let w = ctx.working_bits();
    if d == 0 {
        return (BigFloat::one(w), BigFloat::zero(w));
    }
    let value = crate::bigfloat::pi(ctx)
        .pow_u32(2 * d)
        .mul(&BigFloat::from_ratio(
            &BigInt::one(),
            &factorial(2 * u64::from(d) + 1),
            w,
        ));
    let ops = 2 * u64::from(32 - (2 * d).leading_zeros()) + 4;
    let bound = ctx.rounding_bound(ops, &value);
    (value, bound)
}

/// t({2}^n) = pi^(2n) / (4^n (2n)!).
pub fn pow2_t(n: u32, ctx: &PrecisionContext) -> BigFloat {
    pow2_t_bounded(n, ctx).0
}

pub(crate) fn pow2_t_bounded(n: u32, ctx: &PrecisionContext) -> (BigFloat, BigFloat) {
    let w = ctx.working_bits();
    if n == 0 {
        return (BigFloat::one(w), BigFloat::zero(w));
    }
    let value = crate::bigfloat::pi(ctx)
        .pow_u32(2 * n)
        .mul_pow2(-2 * i64::from(n))
        .mul(&BigFloat::from_ratio(
            &BigInt::one(),
            &factorial(2 * u64::from(n)),
            w,
        ));
    let ops = 2 * u64::from(32 - (2 * n).leading_zeros()) + 4;
    let bound = ctx.rounding_bound(ops, &value);
    (value, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::{zeta_even, zeta_odd};
    use crate::index::HoffmanIndex;
    use num_traits::Signed;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(128)
    }

    fn idx(entries: &[u32]) -> MultiIndex {
        MultiIndex::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn depth_one_zeta_two() {
        let c = ctx();
        let r = mzv_direct(&idx(&[2]), 100_000, &c).unwrap();
        let reference = zeta_even(1, &c);
        assert!(r.within_of(&reference, &r.error_bound));
        // the bound is at the promised ~1e-5 scale
        assert!(r.error_bound < BigFloat::parse_decimal("1e-4", 64).unwrap());
    }

    #[test]
    fn depth_one_zeta_three() {
        let c = ctx();
        let r = mzv_direct(&idx(&[3]), 10_000, &c).unwrap();
        let reference = zeta_odd(1, &c).value;
        assert!(r.within_of(&reference, &r.error_bound));
    }

    #[test]
    fn unit_inner_entry_tail_is_sound() {
        // zeta(1,2) = zeta(3): exercises the harmonic factor in the bound
        let c = ctx();
        let r = mzv_direct(&idx(&[1, 2]), 20_000, &c).unwrap();
        let reference = zeta_odd(1, &c).value;
        assert!(r.within_of(&reference, &r.error_bound));
    }

    #[test]
    fn empty_and_inadmissible() {
        let c = ctx();
        let e = mtv_direct(&MultiIndex::empty(), 10, &c).unwrap();
        assert_eq!(e.value, BigFloat::one(c.working_bits()));
        assert!(e.error_bound.is_zero());
        assert_eq!(
            mzv_direct(&MultiIndex::empty(), 10, &c).unwrap().value,
            BigFloat::one(c.working_bits())
        );
        assert!(matches!(
            mzv_direct(&idx(&[2, 1]), 100, &c),
            Err(Error::InadmissibleIndex)
        ));
        assert!(matches!(
            mtv_direct(&idx(&[3, 1]), 100, &c),
            Err(Error::InadmissibleIndex)
        ));
        assert!(mzv_direct(&idx(&[2, 2, 2]), 2, &c).is_err());
    }

    #[test]
    fn t_values_depth_one() {
        let c = ctx();
        let r = mtv_direct(&idx(&[2]), 100_000, &c).unwrap();
        // t(2) = pi^2 / 8 = 1.2337005501... within the ~2.5e-6 tail bound
        let reference = pow2_t(1, &c);
        assert!(r.within_of(&reference, &r.error_bound));

        let r = mtv_direct(&idx(&[3]), 100_000, &c).unwrap();
        // t(3) = (1 - 1/8) zeta(3)
        let reference = zeta_odd(1, &c)
            .value
            .mul(&BigFloat::from_rational(&ratio(7, 8), c.working_bits()));
        assert!(r.within_of(&reference, &r.error_bound));
        assert_eq!(r.value.to_decimal_string(7), "1.0517998");
    }

    #[test]
    fn depth_one_bridge_t_to_zeta() {
        // t(s) = (1 - 2^-s) zeta(s) for s = 2, 3, 4
        let c = ctx();
        for s in 2u32..=4 {
            let t = mtv_direct(&idx(&[s]), 50_000, &c).unwrap();
            let zeta = match s {
                2 => EvalResult::exact(zeta_even(1, &c)),
                3 => zeta_odd(1, &c),
                4 => EvalResult::exact(zeta_even(2, &c)),
                _ => unreachable!(),
            };
            let factor = Rational::one() - Rational::new(BigInt::one(), BigInt::one() << s);
            let reference = zeta
                .value
                .mul(&BigFloat::from_rational(&factor, c.working_bits()));
            let tol = t.error_bound.add(&zeta.error_bound);
            assert!(t.within_of(&reference, &tol), "bridge failed at s = {s}");
        }
    }

    #[test]
    fn truncation_bound_is_sound_under_refinement() {
        let c = ctx();
        for entries in [vec![2u32], vec![2, 3], vec![3, 2], vec![2, 2, 2]] {
            let s = idx(&entries);
            let coarse = mzv_direct(&s, 1_000, &c).unwrap();
            let fine = mzv_direct(&s, 10_000, &c).unwrap();
            let diff = (coarse.value.to_rational() - fine.value.to_rational()).abs();
            assert!(
                diff <= coarse.error_bound.to_rational(),
                "tail bound violated for {s}"
            );
            // partial sums are nondecreasing (all terms positive)
            assert!(fine.value >= coarse.value);
        }
    }

    #[test]
    fn hoffman_direct_matches_across_n() {
        let c = ctx();
        let h = HoffmanIndex::new(1, 1).expand();
        let coarse = mtv_direct(&h, 1_000, &c).unwrap();
        let fine = mtv_direct(&h, 10_000, &c).unwrap();
        let diff = (coarse.value.to_rational() - fine.value.to_rational()).abs();
        assert!(diff <= coarse.error_bound.to_rational());
    }

    #[test]
    fn pow2_closed_forms() {
        let c = ctx();
        assert_eq!(pow2_zeta(0, &c), BigFloat::one(c.working_bits()));
        assert_eq!(pow2_zeta(1, &c).to_decimal_string(10), "1.6449340668");
        assert_eq!(pow2_zeta(2, &c).to_decimal_string(10), "0.8117424253");
        assert_eq!(pow2_t(0, &c), BigFloat::one(c.working_bits()));
        assert_eq!(pow2_t(1, &c).to_decimal_string(10), "1.2337005501");
        assert_eq!(pow2_t(2, &c).to_decimal_string(7), "0.2536695");
    }

    #[test]
    fn pow2_forms_sit_inside_direct_bounds() {
        let c = ctx();
        for d in 0..=4u32 {
            let index = idx(&vec![2; d as usize]);
            let direct = mzv_direct(&index, 20_000, &c).unwrap();
            assert!(direct.within_of(&pow2_zeta(d, &c), &direct.error_bound));
            let direct = mtv_direct(&index, 20_000, &c).unwrap();
            assert!(direct.within_of(&pow2_t(d, &c), &direct.error_bound));
        }
    }
}
