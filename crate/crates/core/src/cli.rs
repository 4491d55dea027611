//! Command-line front end. `run` takes the argument list and two output
//! streams and returns the process exit code, so it is testable in-process.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::algebraic::RealAlgebraic;
use crate::asymp::{convergence_report, AsympError};
use crate::designcheck::{is_harmonic_index_design, moment, DesignError, PointSet};
use crate::dioph::{run_case, DiophError, CASES};
use crate::exact::{decimal, parse_rational, BigRational};
use crate::fisher::{
    certificate_to_json, fisher_bound_single, rational_to_json, value_to_json_width,
    verify_certificate, BoundCertificate, FisherError, HarmonicIndexSet,
};
use crate::realroots::default_width;
use crate::screen::{
    integrality_scan, screen_range, screen_tight, working_certificate, ScreenError,
};

/// Largest n range accepted by `scan` and `screen`.
const MAX_SPAN: i64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "harmdesign",
    version,
    about = "Fisher-type bounds and non-existence screening for spherical designs of harmonic index T"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Decimal digits shown next to exact values.
    #[arg(long, global = true, default_value_t = 12,
          value_parser = clap::value_parser!(u32).range(1..=1000))]
    precision: u32,
    /// Worker threads for range work. Output does not depend on it.
    #[arg(long, global = true)]
    parallel: Option<usize>,
    /// Width of isolating intervals in output, e.g. 1e-40 or 1/1000.
    #[arg(long, global = true)]
    width: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lower bound b_{n,T} with its certificate.
    Bound {
        #[arg(short = 'n')]
        n: i64,
        /// A single even index.
        #[arg(short = 't', conflicts_with = "index_set")]
        t: Option<u32>,
        /// Comma list of even indices, decreasing.
        #[arg(long = "T", id = "index_set")]
        index_set: Option<String>,
    },
    /// Every n in a range where b_{n,T} is an integer.
    Scan {
        #[arg(long = "T")]
        index_set: String,
        #[arg(long, default_value_t = 2)]
        n_min: i64,
        #[arg(long)]
        n_max: i64,
    },
    /// Full non-existence screen at one n or over a range.
    Screen {
        #[arg(long = "T")]
        index_set: String,
        #[arg(short = 'n', conflicts_with_all = ["n_min", "n_max"])]
        n: Option<i64>,
        #[arg(long)]
        n_min: Option<i64>,
        #[arg(long)]
        n_max: Option<i64>,
    },
    /// A named bounded Diophantine search.
    Dioph {
        #[arg(long = "case")]
        case: String,
        /// Lower end of the search range (n or x).
        #[arg(long, allow_hyphen_values = true)]
        n_min: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        n_max: Option<i64>,
    },
    /// Asymptotic constants for t = 2e and a convergence table.
    Asymp {
        #[arg(short = 't')]
        t: u32,
        /// Comma list of dimensions for the table.
        #[arg(long, default_value = "10,100,1000,10000")]
        n_list: String,
    },
    /// Checks whether a point set is a design of harmonic index k for k in T.
    Check {
        file: PathBuf,
        #[arg(long = "T")]
        index_set: String,
        /// Largest moment accepted as zero (exact rational, default 0).
        #[arg(long)]
        tolerance: Option<String>,
    },
}

#[derive(Debug)]
enum CliError {
    Domain(String),
    Internal(String),
}

impl From<FisherError> for CliError {
    fn from(e: FisherError) -> Self {
        match e {
            FisherError::Root(_) => CliError::Internal(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<ScreenError> for CliError {
    fn from(e: ScreenError) -> Self {
        match e {
            ScreenError::Fisher(f) => f.into(),
            ScreenError::Domain(_) => CliError::Domain(e.to_string()),
        }
    }
}

impl From<DiophError> for CliError {
    fn from(e: DiophError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<DesignError> for CliError {
    fn from(e: DesignError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<AsympError> for CliError {
    fn from(e: AsympError) -> Self {
        match e {
            AsympError::Domain(_) => CliError::Domain(e.to_string()),
            AsympError::Fisher(f) => f.into(),
            AsympError::Root(_) => CliError::Internal(e.to_string()),
        }
    }
}

fn domain<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Domain(msg.into()))
}

/// Parses an isolation width: a positive rational at most 1.
pub fn parse_width(s: &str) -> Result<BigRational, String> {
    let w = parse_rational(s).map_err(|e| format!("invalid width {s:?}: {e}"))?;
    let tiny = BigRational::new(1.into(), num_bigint::BigInt::from(10).pow(1000));
    if w <= BigRational::from_integer(0.into()) || w > BigRational::from_integer(1.into()) {
        return Err(format!("width must lie in (0, 1], got {s}"));
    }
    if w < tiny {
        return Err("width below 1e-1000 is not supported".into());
    }
    Ok(w)
}

fn parse_set(s: &str) -> Result<HarmonicIndexSet, CliError> {
    HarmonicIndexSet::parse(s).or_else(|e| domain(format!("invalid index set {s:?}: {e}")))
}

fn check_span(lo: i64, hi: i64) -> Result<(), CliError> {
    if lo < 2 || hi < lo {
        return domain(format!("need 2 <= n-min <= n-max, got {lo}..{hi}"));
    }
    if hi - lo >= MAX_SPAN {
        return domain(format!("ranges are limited to {MAX_SPAN} values"));
    }
    Ok(())
}

struct Ctx {
    format: Format,
    digits: usize,
    width: BigRational,
    parallel: bool,
}

impl Ctx {
    fn exact(&self, v: &RealAlgebraic) -> String {
        match v {
            _ if v.is_rational() => v.as_rational().expect("rational").to_string(),
            RealAlgebraic::Quad(q) => q.to_string(),
            RealAlgebraic::Root(_) => {
                let r = v.as_isolated().refined(&self.width);
                format!("root of {} in {}", r.poly(), r.interval())
            }
        }
    }

    fn value_json(&self, v: &RealAlgebraic) -> Value {
        value_to_json_width(v, &self.width)
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn json_out(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn bound_certificate(
    n: i64,
    t: Option<u32>,
    set: Option<&str>,
) -> Result<BoundCertificate, CliError> {
    match (t, set) {
        (Some(t), None) => Ok(fisher_bound_single(n, t)?),
        (None, Some(s)) => {
            let ts = parse_set(s)?;
            if n < 2 {
                return domain(format!("dimension n must be at least 2, got {n}"));
            }
            Ok(working_certificate(n, &ts)?)
        }
        _ => domain("give either -t <index> or --T <list>"),
    }
}

fn cmd_bound(ctx: &Ctx, n: i64, t: Option<u32>, set: Option<&str>) -> Result<String, CliError> {
    let cert = bound_certificate(n, t, set)?;
    let verdict = verify_certificate(&cert);
    if !verdict.ok {
        return Err(CliError::Internal(format!(
            "certificate failed verification: {:?}",
            verdict.tag
        )));
    }
    let d = ctx.digits;
    let alpha_sq = cert.minimizers.iter().rev().find(|u| u.signum() > 0);
    Ok(match ctx.format {
        Format::Json => {
            let mut coeffs = Map::new();
            for (t, f) in &cert.coeffs {
                coeffs.insert(t.to_string(), ctx.value_json(f));
            }
            json_out(&json!({
                "n": cert.n,
                "T": cert.index_set.indices(),
                "b": ctx.value_json(&cert.b),
                "b_decimal": cert.b.decimal(d),
                "c": ctx.value_json(&cert.c),
                "c_decimal": cert.c.decimal(d),
                "alpha_sq": alpha_sq.map_or(Value::Null, |a| ctx.value_json(a)),
                "alpha_sq_decimal": alpha_sq.map(|a| a.decimal(d)),
                "minimizers": cert.minimizers.iter().map(|m| ctx.value_json(m)).collect::<Vec<_>>(),
                "minimizers_decimal": cert.minimizers.iter().map(|m| m.decimal(d)).collect::<Vec<_>>(),
                "coeffs": Value::Object(coeffs),
                "conforming": cert.conforming,
                "verified": true,
                "certificate": certificate_to_json(&cert),
            }))
        }
        Format::Csv => format!(
            "n,T,b,b_decimal,c,c_decimal,alpha_sq,alpha_sq_decimal\n{},{},{},{},{},{},{},{}\n",
            cert.n,
            csv_field(&cert.index_set.to_string()),
            csv_field(&ctx.exact(&cert.b)),
            cert.b.decimal(d),
            csv_field(&ctx.exact(&cert.c)),
            cert.c.decimal(d),
            csv_field(&alpha_sq.map_or(String::new(), |a| ctx.exact(a))),
            alpha_sq.map_or(String::new(), |a| a.decimal(d)),
        ),
        Format::Text => {
            let mut s = format!("n = {}  T = {}\n", cert.n, cert.index_set);
            s += &format!("b = {}  ({})\n", ctx.exact(&cert.b), cert.b.decimal(d));
            s += &format!("c = {}  ({})\n", ctx.exact(&cert.c), cert.c.decimal(d));
            for m in &cert.minimizers {
                s += &format!("minimizer x^2 = {}  ({})\n", ctx.exact(m), m.decimal(d));
            }
            for (t, f) in &cert.coeffs {
                s += &format!("f_{t} = {}  ({})\n", ctx.exact(f), f.decimal(d));
            }
            if !cert.conforming {
                s += "note: minimizers do not all lie in (0, 1); the bound is LP-valid only\n";
            }
            s += "certificate verified\n";
            s
        }
    })
}

fn cmd_scan(
    ctx: &Ctx,
    err: &mut (dyn Write + Send),
    set: &str,
    lo: i64,
    hi: i64,
) -> Result<String, CliError> {
    let ts = parse_set(set)?;
    check_span(lo, hi)?;
    let _ = writeln!(err, "scanning n in [{lo}, {hi}] for T = {ts}");
    let hits = integrality_scan(&ts, lo, hi)?;
    let _ = writeln!(err, "{} integral value(s)", hits.len());
    Ok(match ctx.format {
        Format::Json => json_out(&json!({
            "T": ts.indices(),
            "range": [lo, hi],
            "hits": hits.iter().map(|(n, b)| json!({"n": n, "b": rational_to_json(&BigRational::from_integer(b.clone()))})).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("n,b\n");
            for (n, b) in &hits {
                s += &format!("{n},{b}\n");
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "T = {ts}, n in [{lo}, {hi}]: {} integral value(s)\n",
                hits.len()
            );
            for (n, b) in &hits {
                s += &format!("  n = {n:<8} b = {b}\n");
            }
            s
        }
    })
}

fn cmd_screen(
    ctx: &Ctx,
    err: &mut (dyn Write + Send),
    set: &str,
    n: Option<i64>,
    lo: Option<i64>,
    hi: Option<i64>,
) -> Result<String, CliError> {
    let ts = parse_set(set)?;
    let (reports, single) = match (n, lo, hi) {
        (Some(n), None, None) => (vec![screen_tight(n, &ts)?], true),
        (None, lo, Some(hi)) => {
            let lo = lo.unwrap_or(2);
            check_span(lo, hi)?;
            let _ = writeln!(err, "screening n in [{lo}, {hi}] for T = {ts}");
            (screen_range(&ts, lo, hi, ctx.parallel)?, false)
        }
        _ => return domain("give -n <int> or --n-max <int> (with optional --n-min)"),
    };
    let d = ctx.digits;
    Ok(match ctx.format {
        Format::Json => {
            let docs: Vec<Value> = reports.iter().map(|r| r.to_json_with(d)).collect();
            if single {
                json_out(&docs[0])
            } else {
                json_out(&Value::Array(docs))
            }
        }
        Format::Csv => {
            let mut s = String::from("n,T,verdict,eliminated_by,size_decimal\n");
            for r in &reports {
                let size = r
                    .candidate
                    .as_ref()
                    .map_or(String::new(), |c| c.size.decimal(d));
                s += &format!(
                    "{},{},{},{},{}\n",
                    r.n,
                    csv_field(&r.index_set.to_string()),
                    r.verdict,
                    csv_field(&r.eliminated_by().join(";")),
                    size
                );
            }
            s
        }
        Format::Text => reports.iter().map(|r| r.to_text()).collect(),
    })
}

fn cmd_dioph(
    ctx: &Ctx,
    err: &mut (dyn Write + Send),
    case: &str,
    lo: Option<i64>,
    hi: Option<i64>,
) -> Result<String, CliError> {
    if !CASES.contains(&case) {
        return domain(format!(
            "unknown case {case:?}; known cases: {}",
            CASES.join(", ")
        ));
    }
    let range = match (lo, hi) {
        (None, None) => None,
        (Some(lo), Some(hi)) => Some((lo, hi)),
        _ => return domain("give both --n-min and --n-max, or neither"),
    };
    let _ = writeln!(err, "searching {case}");
    let r = run_case(case, range)?;
    Ok(match ctx.format {
        Format::Json => json_out(&r.to_json()),
        Format::Csv => r.to_csv(),
        Format::Text => r.to_text(),
    })
}

fn parse_n_list(s: &str) -> Result<Vec<i64>, CliError> {
    let v: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .or_else(|_| domain(format!("invalid n list {s:?}")))?;
    if v.is_empty() || v.len() > 64 {
        return domain("the n list must have 1 to 64 entries");
    }
    if v.iter().any(|&n| !(3..=10_000_000).contains(&n)) {
        return domain("each n must be in 3..=10000000");
    }
    Ok(v)
}

fn cmd_asymp(
    ctx: &Ctx,
    err: &mut (dyn Write + Send),
    t: u32,
    n_list: &str,
) -> Result<String, CliError> {
    if t < 4 || t % 2 != 0 {
        return domain(format!("t must be even and at least 4, got {t}"));
    }
    let ns = parse_n_list(n_list)?;
    let _ = writeln!(err, "computing b_{{n,{t}}} for {} dimension(s)", ns.len());
    let d = ctx.digits;
    let r = convergence_report(t / 2, &ns, d)?;
    let k = &r.constants;
    let x1 = k.x1.refined(&ctx.width);
    Ok(match ctx.format {
        Format::Csv => r.to_csv(d),
        Format::Json => {
            let rows: Vec<Value> = r
                .rows
                .iter()
                .map(|row| {
                    json!({
                        "n": row.n,
                        "c_ratio": decimal(&row.c_ratio.mid(), d),
                        "b_ratio": decimal(&row.b_ratio.mid(), d),
                        "deviation": decimal(&row.deviation.mid(), d),
                    })
                })
                .collect();
            json_out(&json!({
                "e": k.e,
                "x1": {"lo": rational_to_json(&x1.interval().lo), "hi": rational_to_json(&x1.interval().hi)},
                "x1_sq": ctx.value_json(&k.x1_sq),
                "A": ctx.value_json(&k.a),
                "A_decimal": k.a.decimal(d),
                "B": ctx.value_json(&k.b),
                "B_decimal": k.b.decimal(d),
                "AB_factorial": rational_to_json(&k.product_identity()),
                "rows": rows,
            }))
        }
        Format::Text => {
            let mut s = format!("e = {}  (t = {t})\n", k.e);
            s += &format!("x1 in {}\n", x1.interval());
            s += &format!("x1^2 = {}\n", ctx.exact(&k.x1_sq));
            s += &format!("A = {}  ({})\n", ctx.exact(&k.a), k.a.decimal(d));
            s += &format!("B = {}  ({})\n", ctx.exact(&k.b), k.b.decimal(d));
            s += &format!("A*B*({t})! = {}\n", k.product_identity());
            s += "n, c/n^e, b/n^e, |b/n^e - B|\n";
            for row in &r.rows {
                s += &format!(
                    "  {}  {}  {}  {}\n",
                    row.n,
                    decimal(&row.c_ratio.mid(), d),
                    decimal(&row.b_ratio.mid(), d),
                    decimal(&row.deviation.mid(), d)
                );
            }
            s
        }
    })
}

fn cmd_check(
    ctx: &Ctx,
    file: &PathBuf,
    set: &str,
    tolerance: Option<&str>,
) -> Result<String, CliError> {
    let ts = parse_set(set)?;
    let tol = match tolerance {
        Some(s) => parse_rational(s).or_else(|e| domain(format!("invalid tolerance: {e}")))?,
        None => BigRational::from_integer(0.into()),
    };
    let text = std::fs::read_to_string(file)
        .or_else(|e| domain(format!("cannot read {}: {e}", file.display())))?;
    let y = PointSet::from_json(&text)?;
    let verdicts = is_harmonic_index_design(&y, ts.indices(), &tol)?;
    let d = ctx.digits;
    let mut rows = Vec::new();
    for (k, ok) in verdicts {
        let m = moment(&y, k)?;
        rows.push((k, m, ok));
    }
    Ok(match ctx.format {
        Format::Json => json_out(&json!({
            "n": y.dimension(),
            "size": y.len(),
            "exact": y.is_exact(),
            "tolerance": rational_to_json(&tol),
            "results": rows.iter().map(|(k, m, ok)| {
                let e = m.enclosure();
                json!({
                    "k": k,
                    "moment": m.to_string(),
                    "moment_lo": decimal(&e.lo, d),
                    "moment_hi": decimal(&e.hi, d),
                    "design": ok,
                })
            }).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("k,moment,design\n");
            for (k, m, ok) in &rows {
                s += &format!("{k},{},{ok}\n", decimal(&m.enclosure().mid(), d));
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "{} point(s) in dimension {}{}\n",
                y.len(),
                y.dimension(),
                if y.is_exact() {
                    ""
                } else {
                    " (interval coordinates)"
                }
            );
            for (k, m, ok) in &rows {
                s += &format!(
                    "  k = {k:<3} M_k = {}  ({})  {}\n",
                    m,
                    decimal(&m.enclosure().mid(), d),
                    if *ok { "design" } else { "not a design" }
                );
            }
            s
        }
    })
}

fn dispatch(cli: &Cli, err: &mut (dyn Write + Send)) -> Result<String, CliError> {
    let width = match &cli.width {
        Some(w) => parse_width(w).map_err(CliError::Domain)?,
        None => default_width(),
    };
    let ctx = Ctx {
        format: cli.format,
        digits: cli.precision as usize,
        width,
        parallel: cli.parallel.is_some(),
    };
    match &cli.command {
        Command::Bound { n, t, index_set } => cmd_bound(&ctx, *n, *t, index_set.as_deref()),
        Command::Scan {
            index_set,
            n_min,
            n_max,
        } => cmd_scan(&ctx, err, index_set, *n_min, *n_max),
        Command::Screen {
            index_set,
            n,
            n_min,
            n_max,
        } => cmd_screen(&ctx, err, index_set, *n, *n_min, *n_max),
        Command::Dioph { case, n_min, n_max } => cmd_dioph(&ctx, err, case, *n_min, *n_max),
        Command::Asymp { t, n_list } => cmd_asymp(&ctx, err, *t, n_list),
        Command::Check {
            file,
            index_set,
            tolerance,
        } => cmd_check(&ctx, file, index_set, tolerance.as_deref()),
    }
}

/// Runs the CLI; returns 0 on success, 2 on domain or usage errors and 1 on
/// internal errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    let result = match cli.parallel {
        Some(0) => Err(CliError::Domain(
            "--parallel needs at least one worker".into(),
        )),
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, err)),
            Err(e) => Err(CliError::Internal(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli, err),
    };
    match result {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            0
        }
        Err(CliError::Domain(m)) => {
            let _ = writeln!(err, "harmdesign: {m}");
            2
        }
        Err(CliError::Internal(m)) => {
            let _ = writeln!(err, "harmdesign: internal error: {m}");
            1
        }
    }
}
