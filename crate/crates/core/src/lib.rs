//! Multi-route evaluation of the multiple zeta values H(a,b) =
//! zeta({2}^a, 3, {2}^b) and multiple t-values T(a,b) = t({2}^a, 3, {2}^b).
//!
//! Four independent routes compute the same numbers:
//!
//! * **direct** — the defining nested series, summed by dynamic programming
//!   with a proven truncation bound (low precision by design);
//! * **zagier** / **murakami** — finite closed forms in odd zeta values and
//!   the all-2s constants;
//! * **lupu** — a single rapidly convergent series over even zeta values
//!   (geometric ratio 1/4);
//! * **integral** — high-precision Gauss-Legendre quadrature of the
//!   cotangent-weighted integral representations.
//!
//! An exact-rational kernel replays the series-to-closed-form derivation
//! coefficient by coefficient with zero tolerance, and a report layer
//! cross-checks all routes on (a, b) grids.
//!
//! Everything numeric carries an explicit error bound: proven
//! (truncation + rounding model) everywhere except quadrature, whose
//! node-doubling estimate is flagged [`BoundKind::Heuristic`].

pub mod bigfloat;
pub mod closed_form;
pub mod direct;
pub mod error;
pub mod exact;
pub mod index;
pub mod integral;
pub mod kernel;
pub mod quad;
pub mod report;

pub use bigfloat::{
    justified_frac_digits, pi, zeta_even, zeta_odd, BigFloat, BoundKind, EvalResult,
    PrecisionContext, SciRounding,
};
pub use error::{Error, Result};
pub use exact::Rational;
pub use index::{HoffmanIndex, MultiIndex};
