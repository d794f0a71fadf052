//! Route orchestration and machine-readable reports: cross-check grids,
//! kernel certificate runs, and value tables.
//!
//! Values in reports are decimal strings, never binary floats, printed with
//! exactly the digits their error bounds justify. JSON output is UTF-8 with
//! sorted keys; CSV quotes per RFC 4180. Report bodies are deterministic
//! for a fixed configuration (the timestamp is supplied by the caller and
//! excluded from that guarantee).

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bigfloat::{
    justified_frac_digits, BigFloat, BoundKind, EvalResult, PrecisionContext, SciRounding,
};
use crate::closed_form::{
    lupu_h, lupu_t, murakami_k, murakami_normalization_exponent, murakami_t, zagier_h,
    MurakamiForm, Normalization,
};
use crate::direct::{mtv_direct, mzv_direct, DEFAULT_DIRECT_TERMS};
use crate::error::{Error, Result};
use crate::index::HoffmanIndex;
use crate::integral::{llo_integral_h, llo_integral_t};
use crate::kernel::{replay_certificate, Certificate, ReplayForm};

/// An evaluation route.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Route {
    Direct,
    Zagier,
    Murakami,
    Lupu,
    Integral,
}

impl Route {
    pub fn name(&self) -> &'static str {
        match self {
            Route::Direct => "direct",
            Route::Zagier => "zagier",
            Route::Murakami => "murakami",
            Route::Lupu => "lupu",
            Route::Integral => "integral",
        }
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Route::Direct),
            "zagier" => Ok(Route::Zagier),
            "murakami" => Ok(Route::Murakami),
            "lupu" => Ok(Route::Lupu),
            "integral" => Ok(Route::Integral),
            other => Err(Error::InvalidArgument(format!("unknown route {other:?}"))),
        }
    }
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A route selection, optionally pinning the Murakami normalization, parsed
/// from `name` or `name:normalization` (e.g. `murakami:as-printed`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RouteSel {
    pub route: Route,
    pub normalization: Option<Normalization>,
}

impl FromStr for RouteSel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (name, norm) = match s.split_once(':') {
            Some((name, tail)) => {
                let norm = match tail {
                    "as-printed" => Normalization::AsPrinted,
                    "corrected" => Normalization::Corrected,
                    other => {
                        return Err(Error::InvalidArgument(format!(
                            "unknown normalization {other:?} (use as-printed or corrected)"
                        )))
                    }
                };
                (name, Some(norm))
            }
            None => (s, None),
        };
        let route: Route = name.parse()?;
        if norm.is_some() && route != Route::Murakami {
            return Err(Error::InvalidArgument(format!(
                "only the murakami route takes a normalization suffix (got {s:?})"
            )));
        }
        Ok(RouteSel {
            route,
            normalization: norm,
        })
    }
}

/// Which value family a command targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetKind {
    H,
    T,
}

impl TargetKind {
    pub fn name(&self) -> &'static str {
        match self {
            TargetKind::H => "h",
            TargetKind::T => "t",
        }
    }
}

impl FromStr for TargetKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "h" => Ok(TargetKind::H),
            "t" => Ok(TargetKind::T),
            other => Err(Error::InvalidArgument(format!(
                "unknown kind {other:?} (use h or t)"
            ))),
        }
    }
}

/// Value families accepted by single evaluation, including the
/// 2^weight-scaled t-value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalKind {
    H,
    T,
    K,
}

impl FromStr for EvalKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "h" => Ok(EvalKind::H),
            "t" => Ok(EvalKind::T),
            "k" => Ok(EvalKind::K),
            other => Err(Error::InvalidArgument(format!(
                "unknown kind {other:?} (use h, t or k)"
            ))),
        }
    }
}

/// Evaluates one route for one (a, b) cell.
pub fn evaluate(
    route: Route,
    kind: EvalKind,
    h: HoffmanIndex,
    ctx: &PrecisionContext,
    direct_terms: usize,
    normalization: Normalization,
) -> Result<EvalResult> {
    let invalid = |msg: &str| Err(Error::InvalidArgument(msg.to_string()));
    match (route, kind) {
        (Route::Direct, EvalKind::H) => mzv_direct(&h.expand(), direct_terms, ctx),
        (Route::Direct, EvalKind::T) => mtv_direct(&h.expand(), direct_terms, ctx),
        (Route::Direct, EvalKind::K) => {
            let r = mtv_direct(&h.expand(), direct_terms, ctx)?;
            let shift = i64::from(h.weight() as u32);
            Ok(EvalResult {
                value: r.value.mul_pow2(shift),
                error_bound: r.error_bound.mul_pow2(shift),
                bound_kind: r.bound_kind,
            })
        }
        (Route::Zagier, EvalKind::H) => Ok(zagier_h(h, ctx)),
        (Route::Zagier, _) => invalid("route zagier computes H only (use --kind h)"),
        (Route::Murakami, EvalKind::T) => murakami_t(h, ctx, normalization),
        (Route::Murakami, EvalKind::K) => murakami_k(h, ctx, normalization),
        (Route::Murakami, EvalKind::H) => {
            invalid("route murakami computes T or K (use --kind t or k)")
        }
        (Route::Lupu, EvalKind::H) => lupu_h(h, ctx),
        (Route::Lupu, EvalKind::T) => lupu_t(h, ctx),
        (Route::Lupu, EvalKind::K) => invalid("route lupu computes H or T"),
        (Route::Integral, EvalKind::H) => llo_integral_h(h, ctx),
        (Route::Integral, EvalKind::T) => llo_integral_t(h, ctx),
        (Route::Integral, EvalKind::K) => invalid("route integral computes H or T"),
    }
}

/// Configuration of a cross-check run.
#[derive(Clone, Debug)]
pub struct CrossCheckConfig {
    pub a_max: u32,
    pub b_max: u32,
    pub kind: TargetKind,
    /// Reporting precision; evaluation and comparison run at twice this.
    pub precision_bits: u32,
    pub routes: Vec<RouteSel>,
    pub normalization: Normalization,
    pub direct_terms: usize,
    /// Absolute tolerance for any pair involving a heuristic bound.
    pub heuristic_tolerance: BigFloat,
    pub jobs: usize,
}

impl Default for CrossCheckConfig {
    fn default() -> Self {
        CrossCheckConfig {
            a_max: 4,
            b_max: 4,
            kind: TargetKind::H,
            precision_bits: 192,
            routes: vec![
                RouteSel {
                    route: Route::Zagier,
                    normalization: None,
                },
                RouteSel {
                    route: Route::Lupu,
                    normalization: None,
                },
            ],
            normalization: Normalization::Corrected,
            direct_terms: DEFAULT_DIRECT_TERMS,
            heuristic_tolerance: BigFloat::parse_decimal("1e-30", 96).expect("literal"),
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RouteValue {
    pub value: String,
    pub error_bound: String,
    pub bound_kind: BoundKind,
    pub precision_bits: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PairDeviation {
    pub routes: [String; 2],
    pub deviation: String,
    pub threshold: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CellReport {
    pub a: u32,
    pub b: u32,
    pub values: BTreeMap<String, RouteValue>,
    pub pairwise: Vec<PairDeviation>,
    pub max_deviation: String,
    pub verdict: String,
}

/// Grid cross-check of several routes; `verdict = pass` iff every pairwise
/// deviation is at most the sum of the two proven bounds (or the configured
/// absolute tolerance when either bound is heuristic).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub version: String,
    pub timestamp: String,
    pub kind: String,
    pub reporting_precision_bits: u32,
    pub comparison_precision_bits: u32,
    pub direct_terms: usize,
    pub routes: Vec<String>,
    pub normalization: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub murakami_exponent: Option<i32>,
    pub heuristic_tolerance: String,
    pub cells: Vec<CellReport>,
    pub all_pass: bool,
}

fn norm_name(n: Normalization) -> &'static str {
    match n {
        Normalization::AsPrinted => "as-printed",
        Normalization::Corrected => "corrected",
    }
}

fn route_label(sel: &RouteSel) -> String {
    match sel.normalization {
        Some(n) => format!("{}:{}", sel.route, norm_name(n)),
        None => sel.route.to_string(),
    }
}

/// Runs the cross-check grid. Cells are evaluated (possibly concurrently)
/// at twice the reporting precision and assembled in (a, b) order.
pub fn run_crosscheck(cfg: &CrossCheckConfig, timestamp: &str) -> Result<CrossCheckReport> {
    if cfg.routes.len() < 2 {
        return Err(Error::InvalidArgument(
            "crosscheck needs at least two routes".into(),
        ));
    }
    for sel in &cfg.routes {
        match (sel.route, cfg.kind) {
            (Route::Zagier, TargetKind::T) => {
                return Err(Error::InvalidArgument(
                    "route zagier computes H only; drop it for --kind t".into(),
                ))
            }
            (Route::Murakami, TargetKind::H) => {
                return Err(Error::InvalidArgument(
                    "route murakami computes T only; drop it for --kind h".into(),
                ))
            }
            _ => {}
        }
    }
    let ctx = PrecisionContext::new(2 * cfg.precision_bits);
    let cells: Vec<HoffmanIndex> = (0..=cfg.a_max)
        .flat_map(|a| (0..=cfg.b_max).map(move |b| HoffmanIndex::new(a, b)))
        .collect();

    let eval_cell = |h: HoffmanIndex| -> Result<Vec<(RouteSel, EvalResult)>> {
        cfg.routes
            .iter()
            .map(|sel| {
                let kind = match cfg.kind {
                    TargetKind::H => EvalKind::H,
                    TargetKind::T => EvalKind::T,
                };
                let norm = sel.normalization.unwrap_or(cfg.normalization);
                evaluate(sel.route, kind, h, &ctx, cfg.direct_terms, norm).map(|r| (*sel, r))
            })
            .collect()
    };

    let results = run_cells(&cells, cfg.jobs, eval_cell)?;

    let mut reports = Vec::with_capacity(results.len());
    let mut all_pass = true;
    for (h, routes) in cells.iter().zip(results) {
        let mut values = BTreeMap::new();
        for (sel, r) in &routes {
            let digits = justified_frac_digits(&r.error_bound, ctx.working_bits());
            values.insert(
                route_label(sel),
                RouteValue {
                    value: r.value.to_decimal_string(digits),
                    error_bound: r.error_bound.to_sci_string(2, SciRounding::Up),
                    bound_kind: r.bound_kind,
                    precision_bits: ctx.precision_bits(),
                },
            );
        }
        let mut pairwise = Vec::new();
        let mut max_dev = BigFloat::zero(ctx.working_bits());
        let mut verdict = true;
        for i in 0..routes.len() {
            for j in (i + 1)..routes.len() {
                let (sel_i, ri) = &routes[i];
                let (sel_j, rj) = &routes[j];
                let dev = ri.value.sub(&rj.value).abs();
                // a heuristic bound is replaced by the configured absolute
                // tolerance; proven bounds stand as they are
                let side = |r: &EvalResult| match r.bound_kind {
                    BoundKind::Proven => r.error_bound.clone(),
                    BoundKind::Heuristic => cfg.heuristic_tolerance.clone(),
                };
                let threshold = side(ri).add(&side(rj));
                let pass = dev.to_rational() <= threshold.to_rational();
                verdict &= pass;
                if dev > max_dev {
                    max_dev = dev.clone();
                }
                pairwise.push(PairDeviation {
                    routes: [route_label(sel_i), route_label(sel_j)],
                    deviation: dev.to_sci_string(2, SciRounding::Up),
                    threshold: threshold.to_sci_string(2, SciRounding::Up),
                    pass,
                });
            }
        }
        all_pass &= verdict;
        reports.push(CellReport {
            a: h.a,
            b: h.b,
            values,
            pairwise,
            max_deviation: max_dev.to_sci_string(2, SciRounding::Up),
            verdict: if verdict { "pass" } else { "fail" }.to_string(),
        });
    }

    let murakami_exponent = if cfg.routes.iter().any(|s| s.route == Route::Murakami) {
        let form = match cfg.kind {
            TargetKind::H => MurakamiForm::K, // unreachable: rejected above
            TargetKind::T => MurakamiForm::T,
        };
        Some(murakami_normalization_exponent(form)?)
    } else {
        None
    };

    Ok(CrossCheckReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: timestamp.to_string(),
        kind: cfg.kind.name().to_string(),
        reporting_precision_bits: cfg.precision_bits,
        comparison_precision_bits: ctx.precision_bits(),
        direct_terms: cfg.direct_terms,
        routes: cfg.routes.iter().map(route_label).collect(),
        normalization: norm_name(cfg.normalization).to_string(),
        murakami_exponent,
        heuristic_tolerance: cfg.heuristic_tolerance.to_sci_string(2, SciRounding::Up),
        cells: reports,
        all_pass,
    })
}

/// Evaluates `work` over `cells`, preserving order, with up to `jobs`
/// worker threads.
fn run_cells<T, F>(cells: &[HoffmanIndex], jobs: usize, work: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(HoffmanIndex) -> Result<T> + Sync,
{
    if jobs <= 1 || cells.len() <= 1 {
        return cells.iter().map(|&h| work(h)).collect();
    }
    let jobs = jobs.min(cells.len());
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots: Vec<std::sync::Mutex<Option<Result<T>>>> =
        cells.iter().map(|_| std::sync::Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= cells.len() {
                    break;
                }
                let out = work(cells[i]);
                *slots[i].lock().unwrap() = Some(out);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.into_inner().unwrap().expect("worker filled slot"))
        .collect()
}

/// JSON with sorted keys (round-trips losslessly through serde).
pub fn to_sorted_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_row(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| csv_field(f))
        .collect::<Vec<_>>()
        .join(",")
}

/// One row per (cell, route), with the cell verdict repeated.
pub fn crosscheck_to_csv(report: &CrossCheckReport) -> String {
    let mut out = String::new();
    out.push_str("a,b,route,value,error_bound,bound_kind,precision_bits,verdict\r\n");
    for cell in &report.cells {
        for (route, rv) in &cell.values {
            let kind = match rv.bound_kind {
                BoundKind::Proven => "proven",
                BoundKind::Heuristic => "heuristic",
            };
            out.push_str(&csv_row(&[
                cell.a.to_string(),
                cell.b.to_string(),
                route.clone(),
                rv.value.clone(),
                rv.error_bound.clone(),
                kind.to_string(),
                rv.precision_bits.to_string(),
                cell.verdict.clone(),
            ]));
            out.push_str("\r\n");
        }
    }
    out
}

/// Configuration of a value table run.
#[derive(Clone, Debug)]
pub struct TableConfig {
    pub a_max: u32,
    pub b_max: u32,
    pub digits: u32,
    pub precision_bits: u32,
    pub jobs: usize,
}

impl Default for TableConfig {
    fn default() -> Self {
        TableConfig {
            a_max: 4,
            b_max: 4,
            digits: 30,
            precision_bits: 256,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TableRow {
    pub a: u32,
    pub b: u32,
    pub h: String,
    pub t: String,
}

/// H and T on the grid by the single-series route, rounded to `digits`
/// fractional digits. Errors if the requested digits exceed what the bounds
/// justify at the configured precision.
pub fn run_table(cfg: &TableConfig) -> Result<Vec<TableRow>> {
    let ctx = PrecisionContext::new(cfg.precision_bits);
    let cells: Vec<HoffmanIndex> = (0..=cfg.a_max)
        .flat_map(|a| (0..=cfg.b_max).map(move |b| HoffmanIndex::new(a, b)))
        .collect();
    let rows = run_cells(&cells, cfg.jobs, |h| {
        let hv = lupu_h(h, &ctx)?;
        let tv = lupu_t(h, &ctx)?;
        for r in [&hv, &tv] {
            let justified = justified_frac_digits(&r.error_bound, ctx.working_bits());
            if cfg.digits > justified {
                return Err(Error::InvalidArgument(format!(
                    "{} digits requested at {h} but only {} are justified at {} bits",
                    cfg.digits, justified, cfg.precision_bits
                )));
            }
        }
        Ok(TableRow {
            a: h.a,
            b: h.b,
            h: hv.value.to_decimal_string(cfg.digits),
            t: tv.value.to_decimal_string(cfg.digits),
        })
    })?;
    Ok(rows)
}

pub fn table_to_csv(rows: &[TableRow]) -> String {
    let mut out = String::new();
    out.push_str("a,b,H,T\r\n");
    for row in rows {
        out.push_str(&csv_row(&[
            row.a.to_string(),
            row.b.to_string(),
            row.h.clone(),
            row.t.clone(),
        ]));
        out.push_str("\r\n");
    }
    out
}

/// Configuration of a kernel certificate run.
#[derive(Clone, Debug)]
pub struct KernelConfig {
    pub form: ReplayForm,
    pub a_max: u32,
    pub b_max: u32,
    pub n_max: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct KernelReport {
    pub version: String,
    pub timestamp: String,
    pub form: String,
    pub a_max: u32,
    pub b_max: u32,
    pub n_max: u64,
    pub certificates: Vec<Certificate>,
    pub all_pass: bool,
}

/// Replays the chosen identity family over the (a, b) grid.
pub fn run_kernel_grid(cfg: &KernelConfig, timestamp: &str) -> KernelReport {
    let mut certificates = Vec::new();
    let mut all_pass = true;
    for a in 0..=cfg.a_max {
        for b in 0..=cfg.b_max {
            let cert = replay_certificate(cfg.form, a, b, cfg.n_max);
            all_pass &= cert.pass;
            certificates.push(cert);
        }
    }
    KernelReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: timestamp.to_string(),
        form: cfg.form.to_string(),
        a_max: cfg.a_max,
        b_max: cfg.b_max,
        n_max: cfg.n_max,
        certificates,
        all_pass,
    }
}

/// Line-oriented certificate output: one JSON object per cell, then a
/// summary line.
pub fn kernel_report_lines(report: &KernelReport) -> String {
    let mut out = String::new();
    for cert in &report.certificates {
        let v = serde_json::to_value(cert).expect("serializable");
        out.push_str(&serde_json::to_string(&v).expect("serializable"));
        out.push('\n');
    }
    out.push_str(&format!(
        "{{\"all_pass\":{},\"cells\":{},\"form\":\"{}\",\"n_max\":{}}}\n",
        report.all_pass,
        report.certificates.len(),
        report.form,
        report.n_max
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn route_parsing() {
        assert_eq!(Route::from_str("lupu").unwrap(), Route::Lupu);
        assert!(Route::from_str("euler").is_err());
        let sel: RouteSel = "murakami:as-printed".parse().unwrap();
        assert_eq!(sel.route, Route::Murakami);
        assert_eq!(sel.normalization, Some(Normalization::AsPrinted));
        assert!("murakami:upside-down".parse::<RouteSel>().is_err());
    }

    #[test]
    fn crosscheck_zagier_lupu_small() {
        let cfg = CrossCheckConfig {
            a_max: 1,
            b_max: 1,
            precision_bits: 96,
            ..CrossCheckConfig::default()
        };
        let report = run_crosscheck(&cfg, "test").unwrap();
        assert!(report.all_pass);
        assert_eq!(report.cells.len(), 4);
        assert_eq!(report.comparison_precision_bits, 192);
        assert!(report.murakami_exponent.is_none());
        // serialization round-trips losslessly
        let json = to_sorted_json(&report);
        let back: CrossCheckReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn crosscheck_mixed_proven_and_heuristic_routes() {
        let cfg = CrossCheckConfig {
            a_max: 0,
            b_max: 0,
            precision_bits: 96,
            routes: vec![
                "direct".parse().unwrap(),
                "lupu".parse().unwrap(),
                "integral".parse().unwrap(),
            ],
            direct_terms: 20_000,
            ..CrossCheckConfig::default()
        };
        let report = run_crosscheck(&cfg, "test").unwrap();
        // direct vs integral must pass through direct's proven bound even
        // though the quadrature bound is replaced by the 1e-30 tolerance
        assert!(report.all_pass, "{report:?}");
        assert_eq!(report.cells[0].pairwise.len(), 3);
    }

    #[test]
    fn route_suffix_only_for_murakami() {
        assert!("lupu:corrected".parse::<RouteSel>().is_err());
        assert!("zagier:as-printed".parse::<RouteSel>().is_err());
    }

    #[test]
    fn crosscheck_rejects_kind_mismatch() {
        let cfg = CrossCheckConfig {
            kind: TargetKind::T,
            ..CrossCheckConfig::default()
        };
        assert!(run_crosscheck(&cfg, "test").is_err());
    }

    #[test]
    fn crosscheck_murakami_as_printed_fails() {
        let cfg = CrossCheckConfig {
            a_max: 0,
            b_max: 0,
            kind: TargetKind::T,
            precision_bits: 96,
            routes: vec![
                "murakami:as-printed".parse().unwrap(),
                "lupu".parse().unwrap(),
            ],
            ..CrossCheckConfig::default()
        };
        let report = run_crosscheck(&cfg, "test").unwrap();
        assert!(!report.all_pass);
        assert_eq!(report.cells[0].verdict, "fail");
        // the corrected exponent is still recorded: the as-printed value is
        // off by exactly that power of two
        assert_eq!(report.murakami_exponent, Some(-1));
    }

    #[test]
    fn report_body_is_deterministic() {
        let cfg = CrossCheckConfig {
            a_max: 1,
            b_max: 0,
            precision_bits: 96,
            jobs: 3,
            ..CrossCheckConfig::default()
        };
        let r1 = to_sorted_json(&run_crosscheck(&cfg, "fixed").unwrap());
        let r2 = to_sorted_json(&run_crosscheck(&cfg, "fixed").unwrap());
        assert_eq!(r1, r2);
    }

    #[test]
    fn table_rows_and_digit_validation() {
        let cfg = TableConfig {
            a_max: 2,
            b_max: 2,
            digits: 30,
            precision_bits: 256,
            jobs: 1,
        };
        let rows = run_table(&cfg).unwrap();
        assert_eq!(rows.len(), 9);
        let csv = table_to_csv(&rows);
        assert_eq!(csv.lines().count(), 10);
        // 30 fractional digits on every value
        for row in &rows {
            assert_eq!(row.h.split('.').nth(1).unwrap().len(), 30);
        }
        // too many digits for the precision
        let cfg = TableConfig { digits: 500, ..cfg };
        assert!(run_table(&cfg).is_err());
    }

    #[test]
    fn table_base_cell_values() {
        let cfg = TableConfig {
            a_max: 0,
            b_max: 0,
            digits: 10,
            precision_bits: 256,
            jobs: 1,
        };
        let rows = run_table(&cfg).unwrap();
        assert_eq!(rows[0].h, "1.2020569032");
        assert_eq!(rows[0].t, "1.0517997903");
    }

    #[test]
    fn kernel_grid_report() {
        let cfg = KernelConfig {
            form: ReplayForm::H,
            a_max: 2,
            b_max: 2,
            n_max: 20,
        };
        let report = run_kernel_grid(&cfg, "test");
        assert!(report.all_pass);
        assert_eq!(report.certificates.len(), 9);
        let lines = kernel_report_lines(&report);
        assert_eq!(lines.lines().count(), 10);

        let cfg = KernelConfig {
            form: ReplayForm::TExtendedProduct,
            a_max: 1,
            b_max: 1,
            n_max: 5,
        };
        let report = run_kernel_grid(&cfg, "test");
        assert!(!report.all_pass);
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
