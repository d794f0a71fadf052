//! Gauss-Legendre quadrature rules at working precision.
//!
//! Nodes are the Legendre roots, polished by Newton iteration from the
//! classical cosine initial guesses; evaluation of P_m and P_{m-1} runs the
//! three-term recurrence in BigFloat. Rules are cached per (node count,
//! working precision) and safe for concurrent readers.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::bigfloat::{BigFloat, PrecisionContext};
use crate::exact::Rational;

/// Nodes and weights on (-1, 1), nodes ascending.
#[derive(Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<BigFloat>,
    pub weights: Vec<BigFloat>,
}

type RuleCache = HashMap<(usize, u32), Arc<GaussLegendre>>;

static RULE_CACHE: Mutex<Option<RuleCache>> = Mutex::new(None);

/// The m-point rule under the given context, cached.
pub fn gauss_legendre(m: usize, ctx: &PrecisionContext) -> Arc<GaussLegendre> {
    assert!(m >= 2, "need at least two nodes");
    let w = ctx.working_bits();
    {
        let cache = RULE_CACHE.lock().unwrap();
        if let Some(map) = cache.as_ref() {
            if let Some(rule) = map.get(&(m, w)) {
                return Arc::clone(rule);
            }
        }
    }
    let rule = Arc::new(compute_rule(m, w));
    let mut cache = RULE_CACHE.lock().unwrap();
    cache
        .get_or_insert_with(HashMap::new)
        .insert((m, w), Arc::clone(&rule));
    rule
}

fn compute_rule(m: usize, w: u32) -> GaussLegendre {
    let mut positive: Vec<(BigFloat, BigFloat)> = Vec::with_capacity(m / 2 + 1);
    for i in 1..=(m / 2) {
        // classical guess, accurate to ~1e-3 and improving with m
        let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (m as f64 + 0.5)).cos();
        let x = newton_root(m, guess, w);
        let weight = node_weight(m, &x, w);
        positive.push((x, weight));
    }
    // positive roots were produced in descending order
    positive.reverse();

    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for (x, wt) in &positive {
        nodes.push(x.neg());
        weights.push(wt.clone());
    }
    nodes.reverse();
    weights.reverse();
    if m % 2 == 1 {
        let zero = BigFloat::zero(w);
        let wt = node_weight(m, &zero, w);
        nodes.push(zero);
        weights.push(wt);
    }
    for (x, wt) in positive {
        nodes.push(x);
        weights.push(wt);
    }
    GaussLegendre { nodes, weights }
}

/// (P_m(x), P_{m-1}(x)) by the three-term recurrence.
fn legendre_pair(m: usize, x: &BigFloat, w: u32) -> (BigFloat, BigFloat) {
    let mut p_prev = BigFloat::one(w); // P_0
    let mut p = x.clone(); // P_1
    for j in 1..m {
        let j64 = j as u64;
        // (j+1) P_{j+1} = (2j+1) x P_j - j P_{j-1}
        let next = x
            .mul(&p)
            .mul_u64(2 * j64 + 1)
            .sub(&p_prev.mul_u64(j64))
            .div_u64(j64 + 1);
        p_prev = std::mem::replace(&mut p, next);
    }
    (p, p_prev)
}

/// P'_m(x) = m (x P_m - P_{m-1}) / (x^2 - 1).
fn legendre_derivative(m: usize, x: &BigFloat, p_m: &BigFloat, p_m1: &BigFloat) -> BigFloat {
    let num = x.mul(p_m).sub(p_m1).mul_u64(m as u64);
    let den = x.mul(x).sub(&BigFloat::one(x.precision()));
    num.div(&den)
}

fn newton_root(m: usize, guess: f64, w: u32) -> BigFloat {
    let q = Rational::from_float(guess).expect("finite seed");
    let mut x = BigFloat::from_rational(&q, w);
    let stop = -(i64::from(w)) + 2;
    for _ in 0..200 {
        let (p, p1) = legendre_pair(m, &x, w);
        let dp = legendre_derivative(m, &x, &p, &p1);
        let dx = p.div(&dp);
        x = x.sub(&dx);
        let done =
            dx.is_zero() || dx.top_exponent().unwrap() <= x.top_exponent().unwrap_or(0) + stop;
        if done {
            return x;
        }
    }
    unreachable!("Newton iteration for Legendre roots failed to settle");
}

/// w_i = 2 / ((1 - x^2) P'_m(x)^2).
fn node_weight(m: usize, x: &BigFloat, w: u32) -> BigFloat {
    let (p, p1) = legendre_pair(m, x, w);
    let dp = legendre_derivative(m, x, &p, &p1);
    let one = BigFloat::one(w);
    let den = one.sub(&x.mul(x)).mul(&dp.mul(&dp));
    BigFloat::from_u64(2, w).div(&den)
}
