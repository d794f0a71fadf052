//! The cotangent-weighted integral representations of H(a,b) and T(a,b),
//! evaluated by adaptive Gauss-Legendre quadrature, and the polynomial
//! moment integrals they reduce to.
//!
//! The integrands are analytic on a neighborhood of [0, pi/2] once written
//! with the regularized factor x*cot(x) (the nearest cotangent pole sits at
//! x = pi), so node doubling converges spectrally. The reported error is
//! the last node-doubling delta - an empirical estimate, flagged
//! [`BoundKind::Heuristic`](crate::bigfloat::BoundKind), unlike every other
//! route's proven bound. cot is evaluated by the trigonometric route, not
//! the cotangent power series, so this route stays independent of the
//! series machinery it is checked against.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;

use crate::bigfloat::{pi, x_cot_x, BigFloat, EvalResult, PrecisionContext};
use crate::error::{Error, Result};
use crate::exact::{beta_pos_int, factorial};
use crate::index::HoffmanIndex;
use crate::quad::gauss_legendre;

/// Which integral family an integrand belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegrandKind {
    H,
    T,
}

/// The integrand on [0, pi/2]:
/// f_H = x^(2a+1) (1 - 2x/pi)^(2b+1) (x cot x),
/// f_T = x^(2a)   (1 - 2x/pi)^(2b+1) (x cot x).
///
/// Continuous on the closed interval: x cot x extends to 1 at x = 0 and the
/// (1 - 2x/pi) factor vanishes at x = pi/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegrandSpec {
    pub kind: IntegrandKind,
    pub a: u32,
    pub b: u32,
}

impl IntegrandSpec {
    pub fn new(kind: IntegrandKind, a: u32, b: u32) -> Self {
        IntegrandSpec { kind, a, b }
    }

    fn x_power(&self) -> u32 {
        match self.kind {
            IntegrandKind::H => 2 * self.a + 1,
            IntegrandKind::T => 2 * self.a,
        }
    }

    /// Evaluates the regularized form at x in [0, pi/2].
    pub fn eval_at(&self, x: &BigFloat, ctx: &PrecisionContext) -> BigFloat {
        let w = ctx.working_bits();
        let one = BigFloat::one(w);
        let u = one.sub(&x.mul_pow2(1).div(&pi(ctx)));
        x.pow_u32(self.x_power())
            .mul(&u.pow_u32(2 * self.b + 1))
            .mul(&x_cot_x(x, ctx))
    }

    /// Evaluates the unregularized form x^(p+1) (1-2x/pi)^(2b+1) cot(x);
    /// only defined on the open interval.
    pub fn eval_at_raw_cot(&self, x: &BigFloat, ctx: &PrecisionContext) -> BigFloat {
        assert!(x.is_positive(), "raw cot form needs 0 < x < pi/2");
        let w = ctx.working_bits();
        let one = BigFloat::one(w);
        let u = one.sub(&x.mul_pow2(1).div(&pi(ctx)));
        x.pow_u32(self.x_power() + 1)
            .mul(&u.pow_u32(2 * self.b + 1))
            .mul(&crate::bigfloat::cot(x, ctx))
    }

    /// Parameterized form on t in [0, 1] with x = (pi/2) t: the powers of
    /// (pi/2) are folded into the route prefactor, and (1 - 2x/pi) becomes
    /// (1 - t) exactly.
    fn eval_param(&self, t: &BigFloat, one_minus_t: &BigFloat, xcot: &BigFloat) -> BigFloat {
        t.pow_u32(self.x_power())
            .mul(&one_minus_t.pow_u32(2 * self.b + 1))
            .mul(xcot)
    }
}

/// Per-(m, precision) quadrature data specialized to this integrand family:
/// mapped nodes t_i in (0,1), their complements, weights, and x cot x at
/// x = (pi/2) t_i.
struct CotTable {
    t: Vec<BigFloat>,
    one_minus_t: Vec<BigFloat>,
    weights: Vec<BigFloat>,
    xcot: Vec<BigFloat>,
}

type CotTableCache = HashMap<(usize, u32), Arc<CotTable>>;

static COT_TABLE_CACHE: Mutex<Option<CotTableCache>> = Mutex::new(None);

fn cot_table(m: usize, ctx: &PrecisionContext) -> Arc<CotTable> {
    let w = ctx.working_bits();
    {
        let cache = COT_TABLE_CACHE.lock().unwrap();
        if let Some(map) = cache.as_ref() {
            if let Some(t) = map.get(&(m, w)) {
                return Arc::clone(t);
            }
        }
    }
    let rule = gauss_legendre(m, ctx);
    let one = BigFloat::one(w);
    let half_pi = pi(ctx).mul_pow2(-1);
    let mut t = Vec::with_capacity(m);
    let mut one_minus_t = Vec::with_capacity(m);
    let mut xcot = Vec::with_capacity(m);
    for x in &rule.nodes {
        // t = (1 + x)/2 in (0, 1)
        let ti = x.add(&one).mul_pow2(-1);
        let xi = half_pi.mul(&ti);
        xcot.push(x_cot_x(&xi, ctx));
        one_minus_t.push(one.sub(&ti));
        t.push(ti);
    }
    let table = Arc::new(CotTable {
        t,
        one_minus_t,
        weights: rule.weights.clone(),
        xcot,
    });
    let mut cache = COT_TABLE_CACHE.lock().unwrap();
    cache
        .get_or_insert_with(HashMap::new)
        .insert((m, w), Arc::clone(&table));
    table
}

/// Smallest node count tried.
const FIRST_LEVEL: usize = 16;
/// Hard cap on node doubling.
pub const MAX_QUAD_NODES: usize = 1 << 13;

/// H(a,b) via its integral representation. The value equals
/// prefactor * integral with
/// prefactor = pi^(2b) 2^(2a+3) / ((2a+2)! (2b+1)!) in the x variable;
/// everything is evaluated in the t = (2/pi) x parameterization.
pub fn llo_integral_h(h: HoffmanIndex, ctx: &PrecisionContext) -> Result<EvalResult> {
    let w = ctx.working_bits();
    // pi^(2a+2b+2) * 2 / ((2a+2)! (2b+1)!)
    let den = factorial(2 * u64::from(h.a) + 2) * factorial(2 * u64::from(h.b) + 1);
    let pref = pi(ctx)
        .pow_u32(2 * h.a + 2 * h.b + 2)
        .mul(&BigFloat::from_ratio(&BigInt::from(2), &den, w));
    quadrature(IntegrandSpec::new(IntegrandKind::H, h.a, h.b), &pref, ctx)
}

/// T(a,b) via its integral representation (prefactor
/// pi^(2b+1) / (2^(2b+1) (2a+1)! (2b+1)!) in the x variable).
pub fn llo_integral_t(h: HoffmanIndex, ctx: &PrecisionContext) -> Result<EvalResult> {
    let w = ctx.working_bits();
    // pi^(2a+2b+2) * 2^-(2a+2b+2) / ((2a+1)! (2b+1)!)
    let den = factorial(2 * u64::from(h.a) + 1) * factorial(2 * u64::from(h.b) + 1);
    let pref = pi(ctx)
        .pow_u32(2 * h.a + 2 * h.b + 2)
        .mul_pow2(-2 * (i64::from(h.a) + i64::from(h.b) + 1))
        .mul(&BigFloat::from_ratio(&BigInt::from(1), &den, w));
    quadrature(IntegrandSpec::new(IntegrandKind::T, h.a, h.b), &pref, ctx)
}

/// Node-doubling driver: accepts once two consecutive doublings move the
/// estimate by no more than the target; the reported bound is the last
/// delta (an empirical estimate, hence heuristic).
fn quadrature(
    spec: IntegrandSpec,
    prefactor: &BigFloat,
    ctx: &PrecisionContext,
) -> Result<EvalResult> {
    let w = ctx.working_bits();
    let target = BigFloat::pow2(-(i64::from(ctx.precision_bits()) - 16), w);
    let mut prev: Option<BigFloat> = None;
    let mut last_delta: Option<BigFloat> = None;
    let mut m = FIRST_LEVEL;
    while m <= MAX_QUAD_NODES {
        let table = cot_table(m, ctx);
        let mut acc = BigFloat::zero(w);
        for i in 0..m {
            let f = spec.eval_param(&table.t[i], &table.one_minus_t[i], &table.xcot[i]);
            acc = acc.add(&table.weights[i].mul(&f));
        }
        // sum over [-1,1] nodes carries the dt Jacobian 1/2
        let estimate = prefactor.mul(&acc).mul_pow2(-1);
        if let Some(p) = prev {
            let delta = estimate.sub(&p).abs();
            if delta <= target {
                if let Some(d) = last_delta {
                    if d <= target {
                        let floor = estimate.abs().mul_pow2(-(i64::from(w)) + 8);
                        let bound = if delta > floor { delta } else { floor };
                        return Ok(EvalResult::heuristic(estimate, bound));
                    }
                }
            }
            last_delta = Some(delta);
        }
        prev = Some(estimate);
        m *= 2;
    }
    Err(Error::QuadratureNoConvergence {
        max_nodes: MAX_QUAD_NODES,
        last_delta: last_delta
            .map(|d| d.to_sci_string(2, crate::bigfloat::SciRounding::Up))
            .unwrap_or_else(|| "n/a".into()),
    })
}

/// The closed form of the moment integral
/// int_0^(pi/2) x^(2n+2a+1) (1 - 2x/pi)^(2b+1) dx
///   = (pi/2)^(2n+2a+2) (2n+2a+1)! (2b+1)! / (2n+2a+2b+3)!,
/// through the substitution x = (pi/2) t and the Beta function at integer
/// arguments.
pub fn beta_moment_h(n: u32, a: u32, b: u32, ctx: &PrecisionContext) -> BigFloat {
    let p = 2 * n + 2 * a + 2;
    moment(p, 2 * b + 2, ctx)
}

/// int_0^(pi/2) x^(2n+2a) (1 - 2x/pi)^(2b+1) dx
///   = (pi/2)^(2n+2a+1) (2n+2a)! (2b+1)! / (2n+2a+2b+2)!.
pub fn beta_moment_t(n: u32, a: u32, b: u32, ctx: &PrecisionContext) -> BigFloat {
    let p = 2 * n + 2 * a + 1;
    moment(p, 2 * b + 2, ctx)
}

/// (pi/2)^p * B(p, q) for integer p, q >= 1.
fn moment(p: u32, q: u32, ctx: &PrecisionContext) -> BigFloat {
    let w = ctx.working_bits();
    let beta = beta_pos_int(u64::from(p), u64::from(q)).expect("positive arguments");
    pi(ctx)
        .pow_u32(p)
        .mul_pow2(-i64::from(p))
        .mul(&BigFloat::from_rational(&beta, w))
}
