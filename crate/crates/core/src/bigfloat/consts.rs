//! The circle constant at arbitrary precision, cached per working precision.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::{BigFloat, PrecisionContext};

static PI_CACHE: Mutex<Option<HashMap<u32, BigFloat>>> = Mutex::new(None);

/// pi, correct to the context's reporting precision (in fact to within one
/// ulp of the working precision).
///
/// Machin's identity pi = 16 atan(1/5) - 4 atan(1/239), evaluated in fixed
/// point with floor divisions. Every floored term loses less than one unit
/// and the alternating tails are below one unit, so with 24 spare bits the
/// accumulated error stays under 2^-(w+9) before the single final rounding.
pub fn pi(ctx: &PrecisionContext) -> BigFloat {
    let w = ctx.working_bits();
    {
        let cache = PI_CACHE.lock().unwrap();
        if let Some(map) = cache.as_ref() {
            if let Some(v) = map.get(&w) {
                return v.clone();
            }
        }
    }
    let scale = u64::from(w) + 24;
    let a5 = atan_recip_fixed(5, scale);
    let a239 = atan_recip_fixed(239, scale);
    let fixed = (a5 << 4u32) - (a239 << 2u32);
    let value = super::round_to(fixed, -(scale as i64), w);
    let mut cache = PI_CACHE.lock().unwrap();
    cache
        .get_or_insert_with(HashMap::new)
        .insert(w, value.clone());
    value
}

/// floor-accurate atan(1/q) * 2^scale for integer q >= 2.
fn atan_recip_fixed(q: u64, scale: u64) -> BigInt {
    let one_scaled = BigUint::from(1u32) << scale;
    let q = BigUint::from(q);
    let q2 = &q * &q;
    let mut q_pow = q.clone(); // q^(2j+1)
    let mut acc = BigInt::zero();
    let mut j = 0u64;
    loop {
        let term = &one_scaled / (&q_pow * BigUint::from(2 * j + 1));
        if term.is_zero() {
            break;
        }
        if j % 2 == 0 {
            acc += BigInt::from(term);
        } else {
            acc -= BigInt::from(term);
        }
        q_pow *= &q2;
        j += 1;
    }
    acc
}
