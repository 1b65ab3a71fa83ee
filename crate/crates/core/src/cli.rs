//! Command-line front end. [`run`] is the whole program; the `grunsky`
//! binary only forwards `std::env::args` and the exit code.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error,
//! 3 the branch-and-bound box budget ran out.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::corpus::{self, CheckOptions, CheckRow, NamedFunction, DEFAULT_ORDER, IDENTITY_TOL};
use crate::error::Error;
use crate::functionals::{fekete_szego_constant, Functional};
use crate::grunsky::{
    cascade_bounds, compute_grunsky, four_term_bound_check, grunsky_quadratic_check,
    identity_residuals, odd_grunsky_of, odd_grunsky_with_order, FourTermBlock, GrunskyTable,
    TestVector, IDENTITY_LABELS,
};
use crate::optimizer::certify::DEFAULT_BOX_BUDGET;
use crate::optimizer::report::{reference_face_maxima, reference_location, FACE_TOL, LOCATION_TOL};
use crate::optimizer::{full_report, OptimizationReport, ReportOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "grunsky",
    version,
    about = "Grunsky-coefficient bounds for univalent functions"
)]
pub struct Cli {
    /// Truncation order of the power series.
    #[arg(long = "order", global = true, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    /// Branch-and-bound tolerance (default 1e-3 for gamma4, 1e-2 for a5a4).
    #[arg(long = "tol", global = true)]
    pub tol: Option<f64>,
    /// Seed for random test vectors and Newton starts.
    #[arg(long = "seed", global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "format", global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for the branch-and-bound.
    #[arg(long = "threads", global = true)]
    pub threads: Option<usize>,
    /// Box budget for the branch-and-bound.
    #[arg(long = "budget", global = true, default_value_t = DEFAULT_BOX_BUDGET)]
    pub budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Residuals of the identities linking a2..a5 to the odd Grunsky coefficients.
    Identities {
        /// Corpus name or path to a coefficient file.
        function: String,
    },
    /// Grunsky coefficient table.
    Grunsky {
        function: String,
        /// Largest index p, q.
        #[arg(default_value_t = 7)]
        max_index: usize,
        /// Table of sqrt(f(z^2)) instead of f.
        #[arg(long)]
        odd: bool,
    },
    /// Truncated Grunsky inequalities on random test vectors.
    Inequality {
        function: String,
        #[arg(long, default_value_t = 1000)]
        vectors: usize,
    },
    /// Maximize a majorant functional (gamma4 or a5a4).
    Maximize {
        objective: String,
        /// Only the six boundary faces.
        #[arg(long)]
        strata_only: bool,
    },
    /// Run every check on every built-in function.
    Corpus,
    /// Sharp bound of |a3| - |a2|.
    FeketeSzego,
    /// Corpus, Fekete-Szego and both maximizations.
    Report,
}

/// Validated run settings.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub order: usize,
    pub tolerance: Option<f64>,
    pub seed: u64,
    pub format: Format,
    pub threads: Option<usize>,
    pub budget: u64,
}

impl RunConfig {
    fn from_cli(cli: &Cli) -> Result<Self, String> {
        if cli.order < 8 {
            return Err(format!("--order must be at least 8, got {}", cli.order));
        }
        if let Some(t) = cli.tol {
            if t.is_nan() || t <= 0.0 {
                return Err(format!("--tol must be positive, got {t}"));
            }
        }
        if cli.threads == Some(0) {
            return Err("--threads must be at least 1".into());
        }
        Ok(Self {
            order: cli.order,
            tolerance: cli.tol,
            seed: cli.seed,
            format: cli.format,
            threads: cli.threads,
            budget: cli.budget,
        })
    }

    fn tolerance_for(&self, f: Functional) -> f64 {
        self.tolerance.unwrap_or_else(|| f.default_tolerance())
    }
}

struct Output {
    json: Value,
    rows: Vec<CheckRow>,
    /// Extra text shown before the rows in text mode.
    preamble: String,
    /// Replaces the row CSV (used for tables).
    csv: Option<String>,
    status: i32,
}

impl Output {
    fn from_rows(json: Value, rows: Vec<CheckRow>) -> Self {
        let status = if rows.iter().all(|r| r.pass) {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        };
        Self {
            json,
            rows,
            preamble: String::new(),
            csv: None,
            status,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> (i32, String) {
    (EXIT_USAGE, e.to_string())
}

fn from_error(e: Error) -> (i32, String) {
    match e {
        Error::Usage(_) | Error::Input(_) | Error::Domain(_) | Error::Io(_) => usage(e),
        _ => (EXIT_CHECK_FAILED, e.to_string()),
    }
}

fn resolve_function(arg: &str) -> Result<NamedFunction, (i32, String)> {
    if let Some(f) = corpus::find(arg) {
        return Ok(f);
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| from_error(e.into()))?;
        let series = corpus::parse_coefficients(&text).map_err(from_error)?;
        return NamedFunction::from_series(arg, series).map_err(from_error);
    }
    let names: Vec<String> = corpus::builtin_corpus()
        .into_iter()
        .map(|f| f.name)
        .collect();
    Err(usage(format!(
        "unknown function {arg:?}: not a coefficient file and not one of {}",
        names.join(", ")
    )))
}

fn table_json(t: &GrunskyTable) -> Value {
    serde_json::to_value(t.to_document()).expect("table serializes")
}

fn cmd_identities(cfg: &RunConfig, name: &str) -> Result<Output, (i32, String)> {
    let f = resolve_function(name)?;
    let s = f.series(cfg.order).map_err(from_error)?;
    let t = odd_grunsky_of(&s, &f.name).map_err(from_error)?;
    let residuals = identity_residuals(&s, &t).map_err(from_error)?;
    let rows = IDENTITY_LABELS
        .iter()
        .zip(residuals)
        .map(|(l, r)| CheckRow::at_most(format!("identity:{l}"), &f.name, r, IDENTITY_TOL))
        .collect();
    let json = json!({
        "function": f.name,
        "assumed_univalent": f.assumed_univalent,
        "residuals": IDENTITY_LABELS.iter().zip(residuals)
            .map(|(l, r)| json!({"identity": l, "residual": r}))
            .collect::<Vec<_>>(),
    });
    Ok(Output::from_rows(json, rows))
}

fn cmd_grunsky(
    cfg: &RunConfig,
    name: &str,
    max_index: usize,
    odd: bool,
) -> Result<Output, (i32, String)> {
    let f = resolve_function(name)?;
    let s = f.series(cfg.order).map_err(from_error)?;
    let t = if odd {
        odd_grunsky_with_order(&s, max_index, &f.name)
    } else {
        compute_grunsky(&s, max_index, &f.name)
    }
    .map_err(from_error)?;
    let mut rows = vec![CheckRow::at_most(
        "table:symmetry",
        &f.name,
        t.asymmetry(),
        crate::grunsky::TABLE_TOL,
    )];
    if odd {
        rows.push(CheckRow::at_most(
            "table:parity",
            &f.name,
            t.parity_violation(),
            crate::grunsky::TABLE_TOL,
        ));
    }
    let mut text = String::new();
    let mut csv = String::from("p,q,re,im\n");
    for p in 1..=t.order() {
        for q in 1..=t.order() {
            if let Some(w) = t.get(p, q) {
                let _ = writeln!(text, "omega({p},{q}) = {:+.15e} {:+.15e}i", w.re, w.im);
                let _ = writeln!(csv, "{p},{q},{:e},{:e}", w.re, w.im);
            }
        }
    }
    let mut out = Output::from_rows(table_json(&t), rows);
    out.preamble = text;
    out.csv = Some(csv);
    Ok(out)
}

fn inequality_rows(
    f: &NamedFunction,
    cfg: &RunConfig,
    vectors: usize,
) -> Result<Vec<CheckRow>, (i32, String)> {
    use rand::SeedableRng;
    let s = f.series(cfg.order).map_err(from_error)?;
    let odd = odd_grunsky_of(&s, &f.name).map_err(from_error)?;
    let block = FourTermBlock::from_table(&odd).map_err(from_error)?;
    let rows_used = (odd.total_order() / 2).div_ceil(2);
    let len = odd.total_order() - (2 * rows_used - 1);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut worst, mut worst4) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for _ in 0..vectors {
        let x = TestVector::random(&mut rng, len);
        let c = grunsky_quadratic_check(&odd, &x, rows_used).map_err(from_error)?;
        worst = worst.max(c.lhs - c.rhs);
        let c = four_term_bound_check(&block, x.get(1), x.get(3));
        worst4 = worst4.max(c.lhs - c.rhs);
    }
    let one = TestVector::new(vec![num_complex::Complex64::new(1.0, 0.0)]).expect("nonzero");
    let first_row = grunsky_quadratic_check(&odd, &one, rows_used).map_err(from_error)?;
    let cascade = cascade_bounds(&odd).map_err(from_error)?;
    let mut rows = vec![
        CheckRow::at_most(
            "inequality:grunsky-odd",
            &f.name,
            worst,
            corpus::INEQUALITY_SLACK,
        ),
        CheckRow::at_most(
            "inequality:grunsky-four-term",
            &f.name,
            worst4,
            corpus::INEQUALITY_SLACK,
        ),
        CheckRow::at_most(
            "inequality:x1-only",
            &f.name,
            first_row.lhs - first_row.rhs,
            corpus::INEQUALITY_SLACK,
        ),
    ];
    for (k, label) in ["omega13", "omega15", "omega17"].iter().enumerate() {
        rows.push(CheckRow::at_most(
            format!("cascade:{label}"),
            &f.name,
            cascade.moduli[k],
            cascade.limits[k] + corpus::CHAIN_SLACK,
        ));
    }
    Ok(rows)
}

fn cmd_inequality(cfg: &RunConfig, name: &str, vectors: usize) -> Result<Output, (i32, String)> {
    let f = resolve_function(name)?;
    let rows = inequality_rows(&f, cfg, vectors)?;
    let json = json!({ "function": f.name, "vectors": vectors, "checks": rows });
    Ok(Output::from_rows(json, rows))
}

/// Rows comparing a report with the reference values; the flag marks rows
/// that decide the exit status.
pub fn maximize_rows(f: Functional, report: &OptimizationReport) -> Vec<(CheckRow, bool)> {
    let id = f.id();
    let mut rows = Vec::new();
    for (s, value) in reference_face_maxima(f) {
        if let Some(cp) = report.stratum(s) {
            rows.push((
                CheckRow::near(
                    format!("stratum:{}", s.label()),
                    id,
                    cp.value,
                    value,
                    FACE_TOL,
                ),
                false,
            ));
        }
    }
    if let Some(cert) = &report.certificate {
        let (reference, tol) = f.reference_bound();
        rows.push((
            CheckRow::near("global:value", id, report.global.value, reference, tol),
            true,
        ));
        for (axis, (got, want)) in ["x", "y", "z"].iter().zip(
            report
                .global
                .location()
                .into_iter()
                .zip(reference_location(f)),
        ) {
            rows.push((
                CheckRow::near(format!("global:{axis}"), id, got, want, LOCATION_TOL),
                true,
            ));
        }
        rows.push((
            CheckRow::at_most("certificate:width", id, cert.width(), cert.tolerance),
            true,
        ));
        let miss = (cert.lower - reference)
            .max(reference - cert.upper)
            .max(0.0);
        rows.push((
            CheckRow::at_most("certificate:reference-distance", id, miss, tol),
            true,
        ));
    }
    rows
}

fn maximize(
    cfg: &RunConfig,
    f: Functional,
    strata_only: bool,
) -> Result<(OptimizationReport, Vec<CheckRow>, i32), (i32, String)> {
    let mut opts = ReportOptions::new(cfg.tolerance_for(f));
    opts.seed = cfg.seed;
    opts.threads = cfg.threads;
    opts.budget = cfg.budget;
    opts.strata_only = strata_only;
    let report = full_report(&f, &opts).map_err(from_error)?;
    let tagged = maximize_rows(f, &report);
    let status = if report.certificate.as_ref().is_some_and(|c| !c.success) {
        EXIT_BUDGET
    } else if tagged
        .iter()
        .any(|(r, gating)| (*gating || strata_only) && !r.pass)
    {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    };
    Ok((report, tagged.into_iter().map(|(r, _)| r).collect(), status))
}

fn parse_objective(name: &str) -> Result<Functional, (i32, String)> {
    Functional::from_id(name)
        .ok_or_else(|| usage(format!("unknown objective {name:?}: use gamma4 or a5a4")))
}

fn cmd_maximize(cfg: &RunConfig, name: &str, strata_only: bool) -> Result<Output, (i32, String)> {
    let f = parse_objective(name)?;
    let (report, rows, status) = maximize(cfg, f, strata_only)?;
    let json = serde_json::to_value(&report).expect("report serializes");
    let mut out = Output::from_rows(json, rows);
    out.status = status;
    Ok(out)
}

fn corpus_reports(cfg: &RunConfig) -> Result<Vec<corpus::CheckReport>, (i32, String)> {
    let opts = CheckOptions {
        order: cfg.order,
        seed: cfg.seed,
        vectors: 1000,
    };
    corpus::builtin_corpus()
        .iter()
        .map(|f| corpus::check_function(f, &opts).map_err(from_error))
        .collect()
}

fn cmd_corpus(cfg: &RunConfig) -> Result<Output, (i32, String)> {
    let reports = corpus_reports(cfg)?;
    let mut summary = String::new();
    for r in &reports {
        let _ = writeln!(
            summary,
            "{:<6} {}",
            if r.passed() { "PASS" } else { "FAIL" },
            r.subject
        );
    }
    let rows = reports.iter().flat_map(|r| r.rows.clone()).collect();
    let mut out = Output::from_rows(serde_json::to_value(&reports).expect("serializes"), rows);
    out.preamble = summary;
    Ok(out)
}

fn fekete_rows() -> (Value, Vec<CheckRow>) {
    let fs = fekete_szego_constant();
    let residual = (4.0 * fs.lambda0 - fs.lambda0.exp()).abs();
    let rows = vec![
        CheckRow::near("fekete-szego:bound", "a3-a2", fs.bound, 1.029, 1e-3),
        CheckRow::at_most("fekete-szego:residual", "a3-a2", residual, 1e-10),
    ];
    (
        json!({ "lambda0": fs.lambda0, "bound": fs.bound, "residual": residual }),
        rows,
    )
}

fn cmd_fekete_szego() -> Output {
    let (json, rows) = fekete_rows();
    Output::from_rows(json, rows)
}

fn cmd_report(cfg: &RunConfig) -> Result<Output, (i32, String)> {
    let corpus = corpus_reports(cfg)?;
    let (fs_json, fs_rows) = fekete_rows();
    let mut rows: Vec<CheckRow> = corpus.iter().flat_map(|r| r.rows.clone()).collect();
    rows.extend(fs_rows);
    let mut status = if rows.iter().all(|r| r.pass) {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    let mut maxima = serde_json::Map::new();
    for f in Functional::ALL {
        let (report, mrows, s) = maximize(cfg, f, false)?;
        status = status.max(s);
        rows.extend(mrows);
        maxima.insert(
            f.id().into(),
            serde_json::to_value(&report).expect("serializes"),
        );
    }
    let json = json!({ "corpus": corpus, "fekete_szego": fs_json, "maximize": maxima });
    let mut out = Output::from_rows(json, rows);
    out.status = status;
    Ok(out)
}

fn render(out: &Output, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&out.json).expect("serializes") + "\n",
        Format::Csv => out.csv.clone().unwrap_or_else(|| rows_csv(&out.rows)),
        Format::Text => {
            let mut s = out.preamble.clone();
            for r in &out.rows {
                let _ = writeln!(
                    s,
                    "{:<5} {:<34} {:<22} value={:<22.15} bound={:<22.15} margin={:.3e}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.check,
                    r.subject,
                    r.value,
                    r.bound,
                    r.margin
                );
            }
            s
        }
    }
}

/// CSV with columns `check,subject,value,bound,margin,pass`.
pub fn rows_csv(rows: &[CheckRow]) -> String {
    let mut s = String::from("check,subject,value,bound,margin,pass\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{:e},{:e},{:e},{}",
            r.check, r.subject, r.value, r.bound, r.margin, r.pass
        );
    }
    s
}

/// Parses `args` (including the program name), runs the command and
/// writes the result to `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let cfg = match RunConfig::from_cli(&cli) {
        Ok(cfg) => cfg,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let result = match &cli.command {
        Command::Identities { function } => cmd_identities(&cfg, function),
        Command::Grunsky {
            function,
            max_index,
            odd,
        } => cmd_grunsky(&cfg, function, *max_index, *odd),
        Command::Inequality { function, vectors } => cmd_inequality(&cfg, function, *vectors),
        Command::Maximize {
            objective,
            strata_only,
        } => cmd_maximize(&cfg, objective, *strata_only),
        Command::Corpus => cmd_corpus(&cfg),
        Command::FeketeSzego => Ok(cmd_fekete_szego()),
        Command::Report => cmd_report(&cfg),
    };
    match result {
        Ok(output) => {
            let _ = out.write_all(render(&output, cfg.format).as_bytes());
            output.status
        }
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
