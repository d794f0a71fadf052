//! mzv: evaluate H(a,b) = zeta({2}^a,3,{2}^b) and T(a,b) = t({2}^a,3,{2}^b)
//! by independent routes, cross-check them on grids, replay the exact
//! coefficient identities, and emit machine-readable reports.
//!
//! Exit codes: 0 all checks pass, 2 a check failed, 3 usage error,
//! 4 internal error. Configuration is by flags only; no environment
//! variables are read.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use mzv_core::bigfloat::{
    justified_frac_digits, BigFloat, BoundKind, PrecisionContext, SciRounding,
};
use mzv_core::closed_form::Normalization;
use mzv_core::kernel::ReplayForm;
use mzv_core::report::{
    crosscheck_to_csv, evaluate, kernel_report_lines, run_crosscheck, run_kernel_grid, run_table,
    table_to_csv, to_sorted_json, CrossCheckConfig, EvalKind, KernelConfig, RouteSel, TableConfig,
    TargetKind,
};
use mzv_core::{Error, HoffmanIndex};

const EXIT_CHECK_FAILED: u8 = 2;
const EXIT_USAGE: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "mzv",
    version,
    about = "Multi-route evaluation of zeta({2}^a,3,{2}^b) and t({2}^a,3,{2}^b) with certified error bounds"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one route at a single (a, b) cell.
    Eval {
        /// Route: direct | zagier | murakami | lupu | integral
        /// (murakami accepts a :as-printed / :corrected suffix).
        route: String,
        /// Index a.
        #[arg(value_name = "A")]
        a_pos: Option<u32>,
        /// Index b.
        #[arg(value_name = "B")]
        b_pos: Option<u32>,
        /// Index a (alternative to the positional).
        #[arg(long = "a", conflicts_with = "a_pos")]
        a_opt: Option<u32>,
        /// Index b (alternative to the positional).
        #[arg(long = "b", conflicts_with = "b_pos")]
        b_opt: Option<u32>,
        /// Value family: h | t | k (k = 2^weight t, Murakami/direct only).
        #[arg(long, default_value = "h")]
        kind: String,
        /// Reporting precision in bits (>= 64).
        #[arg(long, default_value_t = 192)]
        prec: u32,
        /// Truncation length for the direct route.
        #[arg(long = "N", default_value_t = 100_000)]
        n_terms: usize,
        /// Murakami prefactor handling: as-printed | corrected.
        #[arg(long, default_value = "corrected")]
        normalization: String,
    },
    /// Cross-check several routes on an (a, b) grid and write a report.
    Crosscheck {
        #[arg(long, default_value_t = 4)]
        a_max: u32,
        #[arg(long, default_value_t = 4)]
        b_max: u32,
        /// Value family: h | t.
        #[arg(long, default_value = "h")]
        kind: String,
        /// Comma-separated routes, each optionally route:normalization.
        #[arg(long, default_value = "zagier,lupu")]
        routes: String,
        #[arg(long, default_value_t = 192)]
        prec: u32,
        #[arg(long = "N", default_value_t = 100_000)]
        n_terms: usize,
        /// Absolute tolerance for pairs involving the heuristic quadrature
        /// bound (decimal, e.g. 1e-30).
        #[arg(long, default_value = "1e-30")]
        tolerance: String,
        #[arg(long, default_value = "corrected")]
        normalization: String,
        /// Output format: json | csv.
        #[arg(long, default_value = "json")]
        format: String,
        /// Output path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads for grid cells.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Replay the exact coefficient identities over an (a, b) grid.
    Kernel {
        /// Identity family: h | t.
        context: String,
        a_max: u32,
        b_max: u32,
        n_max: u64,
        /// Check the negative-control variant instead
        /// (extended-product; t only).
        #[arg(long)]
        variant: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate H and T (single-series route) on a grid.
    Table {
        a_max: u32,
        b_max: u32,
        /// Fractional decimal digits per value.
        digits: u32,
        /// Output format: json | csv.
        #[arg(default_value = "json")]
        format: String,
        #[arg(long, default_value_t = 256)]
        prec: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::InvalidArgument(_) | Error::InvalidIndex | Error::InadmissibleIndex => {
                    EXIT_USAGE
                }
                _ => EXIT_INTERNAL,
            };
            ExitCode::from(code)
        }
    }
}

fn check_precision(prec: u32) -> Result<(), Error> {
    if prec < 64 {
        return Err(Error::InvalidArgument(format!(
            "--prec must be at least 64 bits, got {prec}"
        )));
    }
    Ok(())
}

fn timestamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

fn write_out(out: Option<&PathBuf>, body: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| Error::InvalidArgument(format!("cannot write stdout: {e}"))),
    }
}

fn parse_normalization(s: &str) -> Result<Normalization, Error> {
    match s {
        "as-printed" => Ok(Normalization::AsPrinted),
        "corrected" => Ok(Normalization::Corrected),
        other => Err(Error::InvalidArgument(format!(
            "unknown normalization {other:?} (use as-printed or corrected)"
        ))),
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.cmd {
        Cmd::Eval {
            route,
            a_pos,
            b_pos,
            a_opt,
            b_opt,
            kind,
            prec,
            n_terms,
            normalization,
        } => {
            check_precision(prec)?;
            let a = a_opt.or(a_pos).ok_or_else(|| {
                Error::InvalidArgument("index a missing (positional or --a)".into())
            })?;
            let b = b_opt.or(b_pos).ok_or_else(|| {
                Error::InvalidArgument("index b missing (positional or --b)".into())
            })?;
            let sel = RouteSel::from_str(&route)?;
            let kind = EvalKind::from_str(&kind)?;
            let norm = sel
                .normalization
                .map(Ok)
                .unwrap_or_else(|| parse_normalization(&normalization))?;
            let ctx = PrecisionContext::new(prec);
            let h = HoffmanIndex::new(a, b);
            let result = evaluate(sel.route, kind, h, &ctx, n_terms, norm)?;
            let digits = justified_frac_digits(&result.error_bound, ctx.working_bits());
            println!("route = {}", sel.route);
            println!(
                "kind = {}",
                match kind {
                    EvalKind::H => "h",
                    EvalKind::T => "t",
                    EvalKind::K => "k",
                }
            );
            println!("a = {a}");
            println!("b = {b}");
            println!("precision_bits = {prec}");
            println!("value = {}", result.value.to_decimal_string(digits));
            println!(
                "error_bound = {}",
                result.error_bound.to_sci_string(2, SciRounding::Up)
            );
            println!(
                "bound_kind = {}",
                match result.bound_kind {
                    BoundKind::Proven => "proven",
                    BoundKind::Heuristic => "heuristic",
                }
            );
            Ok(0)
        }
        Cmd::Crosscheck {
            a_max,
            b_max,
            kind,
            routes,
            prec,
            n_terms,
            tolerance,
            normalization,
            format,
            out,
            jobs,
        } => {
            check_precision(prec)?;
            let routes: Vec<RouteSel> = routes
                .split(',')
                .map(|s| RouteSel::from_str(s.trim()))
                .collect::<Result<_, _>>()?;
            let cfg = CrossCheckConfig {
                a_max,
                b_max,
                kind: TargetKind::from_str(&kind)?,
                precision_bits: prec,
                routes,
                normalization: parse_normalization(&normalization)?,
                direct_terms: n_terms,
                heuristic_tolerance: BigFloat::parse_decimal(&tolerance, 96)?,
                jobs: jobs.max(1),
            };
            let report = run_crosscheck(&cfg, &timestamp())?;
            let body = match format.as_str() {
                "json" => to_sorted_json(&report),
                "csv" => crosscheck_to_csv(&report),
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown format {other:?} (use json or csv)"
                    )))
                }
            };
            write_out(out.as_ref(), &body)?;
            Ok(if report.all_pass {
                0
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Cmd::Kernel {
            context,
            a_max,
            b_max,
            n_max,
            variant,
            out,
        } => {
            let form = match (context.to_ascii_lowercase().as_str(), variant.as_deref()) {
                ("h", None) => ReplayForm::H,
                ("t", None) => ReplayForm::T,
                ("t", Some("extended-product")) => ReplayForm::TExtendedProduct,
                ("h", Some(_)) => {
                    return Err(Error::InvalidArgument(
                        "variants exist only for context t".into(),
                    ))
                }
                (_, Some(v)) => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown variant {v:?} (use extended-product)"
                    )))
                }
                (c, None) => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown context {c:?} (use h or t)"
                    )))
                }
            };
            let cfg = KernelConfig {
                form,
                a_max,
                b_max,
                n_max,
            };
            let report = run_kernel_grid(&cfg, &timestamp());
            write_out(out.as_ref(), &kernel_report_lines(&report))?;
            Ok(if report.all_pass {
                0
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Cmd::Table {
            a_max,
            b_max,
            digits,
            format,
            prec,
            out,
            jobs,
        } => {
            check_precision(prec)?;
            let cfg = TableConfig {
                a_max,
                b_max,
                digits,
                precision_bits: prec,
                jobs: jobs.max(1),
            };
            let rows = run_table(&cfg)?;
            let body = match format.as_str() {
                "json" => to_sorted_json(&rows),
                "csv" => table_to_csv(&rows),
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown format {other:?} (use json or csv)"
                    )))
                }
            };
            write_out(out.as_ref(), &body)?;
            Ok(0)
        }
    }
}
