//! The `primeparts` command line: `tabulate`, `check` and `constants`.
//!
//! Exit codes: 0 success, 1 check failed, 2 usage error, 3 resource error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{check, sample_rows, Component, IdentityId, SampleRow, Tables, COLUMNS};
use crate::approx::{li_pv_estimate, ApproxConfig, CertifiedValue, EULER_GAMMA};
use crate::error::Error;
use crate::Execution;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "primeparts",
    version,
    about = "Prime-counting functions, their regular parts and identity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate exact functions, approximations and decompositions on a grid.
    Tabulate(TabulateArgs),
    /// Evaluate an identity at one or more points.
    Check(CheckArgs),
    /// Print γ, lim R(x) with its certified radius, and li(2).
    Constants(ConstantsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Spacing {
    Lin,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct TabulateArgs {
    #[arg(long, default_value_t = 2.0)]
    pub xmin: f64,
    #[arg(long)]
    pub xmax: f64,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = Spacing::Log)]
    pub spacing: Spacing,
    /// Function groups to evaluate; unselected columns are NaN.
    #[arg(long, value_delimiter = ',', default_value = "pi,R,theta,psi", value_parser = parse_component)]
    pub functions: Vec<Component>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file (standard output when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Sieve limit (default: ceil(xmax)).
    #[arg(long)]
    pub sieve_limit: Option<u64>,
    #[arg(long, default_value_t = 1e-10)]
    pub quad_tol: f64,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// eq11, eq12, eq21, eq28 or eq8a (von Koch ratio, residual = ratio).
    #[arg(value_parser = parse_identity)]
    pub identity: IdentityId,
    /// Points to evaluate at.
    #[arg(required = true, num_args = 1..)]
    pub x: Vec<f64>,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Sieve limit (default: ceil(max x)).
    #[arg(long)]
    pub sieve_limit: Option<u64>,
    #[arg(long, default_value_t = 1e-10)]
    pub quad_tol: f64,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    /// Significant digits to print (1-15).
    #[arg(long, default_value_t = 6)]
    pub digits: u32,
    /// Sieve limit, which is also the prime-sum cutoff of the direct bracket.
    #[arg(long, default_value_t = 100_000_000)]
    pub sieve_limit: u64,
    /// Report lim R(x) from the ζ'/ζ series instead of the direct prime sum.
    #[arg(long)]
    pub accelerated: bool,
}

fn parse_component(s: &str) -> Result<Component, String> {
    s.trim().parse().map_err(|e: Error| e.to_string())
}

fn parse_identity(s: &str) -> Result<IdentityId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A tabulation grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.x_min >= 2.0 && self.x_min < self.x_max && self.x_max.is_finite()) {
            return Err(format!(
                "grid needs 2 <= xmin < xmax, got [{}, {}]",
                self.x_min, self.x_max
            ));
        }
        if self.points < 2 {
            return Err(format!("grid needs at least 2 points, got {}", self.points));
        }
        Ok(())
    }

    /// Grid points; both endpoints are reproduced exactly.
    pub fn points(&self) -> Vec<f64> {
        let n = self.points;
        let last = n - 1;
        (0..n)
            .map(|i| {
                if i == 0 {
                    return self.x_min;
                }
                if i == last {
                    return self.x_max;
                }
                let t = i as f64 / last as f64;
                match self.spacing {
                    Spacing::Lin => self.x_min + (self.x_max - self.x_min) * t,
                    Spacing::Log => {
                        let (a, b) = (self.x_min.ln(), self.x_max.ln());
                        (a + (b - a) * t).exp()
                    }
                }
            })
            .collect()
    }
}

/// Everything a tabulation run needs.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub grid: GridSpec,
    pub approx: ApproxConfig,
    pub sieve_limit: u64,
    pub functions: Vec<Component>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

/// Configuration shared by all commands for a run up to `x_max`.
fn approx_config(x_max: f64, sieve_limit: u64, quad_tol: f64) -> ApproxConfig {
    let defaults = ApproxConfig::default();
    ApproxConfig {
        quad_tol,
        mobius_cutoff: (x_max.log2().floor() as u64 + 1).max(2),
        prime_sum_cutoff: defaults.prime_sum_cutoff.min(sieve_limit),
        ..defaults
    }
}

impl RunConfig {
    pub fn from_args(args: &TabulateArgs) -> Result<Self, String> {
        let grid = GridSpec {
            x_min: args.xmin,
            x_max: args.xmax,
            points: args.points,
            spacing: args.spacing,
        };
        grid.validate()?;
        let sieve_limit = args.sieve_limit.unwrap_or(grid.x_max.ceil() as u64);
        if (sieve_limit as f64) < grid.x_max {
            return Err(format!(
                "sieve limit {sieve_limit} is below xmax {}",
                grid.x_max
            ));
        }
        let approx = approx_config(grid.x_max, sieve_limit, args.quad_tol);
        approx.validate().map_err(|e| e.to_string())?;
        let mut functions = args.functions.clone();
        functions.sort_unstable();
        functions.dedup();
        if functions.is_empty() {
            return Err("no functions selected".into());
        }
        Ok(RunConfig {
            grid,
            approx,
            sieve_limit,
            functions,
            format: args.format,
            out: args.out.clone(),
        })
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource(_) => EXIT_RESOURCE,
        Error::Domain(_) | Error::Config(_) | Error::TableExhausted { .. } => EXIT_USAGE,
        Error::Precision { .. } | Error::Quadrature(_) => EXIT_CHECK_FAILED,
    }
}

fn fail(err: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(err, "error: {e}");
    exit_code(e)
}

fn fmt_f64(v: Option<f64>) -> String {
    match v {
        Some(v) => format!("{v:.16e}"),
        None => "NaN".to_string(),
    }
}

/// Writes rows as CSV with the frozen header.
pub fn write_csv(rows: &[SampleRow], w: &mut dyn Write) -> io::Result<()> {
    writeln!(w, "{}", COLUMNS.join(","))?;
    for row in rows {
        let pi = row.pi.map_or_else(|| "NaN".to_string(), |p| p.to_string());
        write!(w, "{},{}", fmt_f64(Some(row.x)), pi)?;
        for v in row.values() {
            write!(w, ",{}", fmt_f64(v))?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Writes rows as a JSON array of objects keyed by column name.
pub fn write_json(rows: &[SampleRow], w: &mut dyn Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, rows)?;
    writeln!(w)
}

pub fn cmd_tabulate(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let tables = match Tables::new(config.sieve_limit, config.approx) {
        Ok(t) => t,
        Err(e) => return fail(err, &e),
    };
    let xs = config.grid.points();
    let rows = match sample_rows(&xs, &tables, &config.functions, Execution::Parallel) {
        Ok(rows) => rows,
        Err(e) => return fail(err, &e),
    };
    let result = match &config.out {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            emit(&rows, config.format, &mut w)?;
            w.flush()
        }),
        None => emit(&rows, config.format, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write output: {e}");
            EXIT_RESOURCE
        }
    }
}

fn emit(rows: &[SampleRow], format: Format, w: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Csv => write_csv(rows, w),
        Format::Json => write_json(rows, w),
    }
}

pub fn cmd_check(args: &CheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if !(args.tol >= 0.0) {
        let _ = writeln!(err, "error: tolerance must be >= 0, got {}", args.tol);
        return EXIT_USAGE;
    }
    let x_max = args.x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(x_max.is_finite() && x_max >= 2.0) {
        let _ = writeln!(err, "error: points must be finite and >= 2");
        return EXIT_USAGE;
    }
    let limit = args.sieve_limit.unwrap_or(x_max.ceil() as u64).max(2);
    let cfg = approx_config(x_max, limit, args.quad_tol);
    let tables = match Tables::new(limit, cfg) {
        Ok(t) => t,
        Err(e) => return fail(err, &e),
    };
    let mut all_pass = true;
    for &x in &args.x {
        let report = match check(args.identity, x, &tables) {
            Ok(r) => r,
            Err(e) => return fail(err, &e),
        };
        let pass = report.passes(args.tol);
        all_pass &= pass;
        let _ = writeln!(
            out,
            "{} x={:.16e} lhs={:.16e} rhs={:.16e} residual={:.3e} tol={:.3e} tolerance_used={:.3e} {}",
            report.id,
            report.x,
            report.lhs,
            report.rhs,
            report.residual,
            args.tol,
            report.tolerance_used,
            if pass { "PASS" } else { "FAIL" }
        );
    }
    if all_pass {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

/// The first `digits` significant digits of `v`, truncated, in plain decimal.
pub fn truncate_digits(v: f64, digits: u32) -> String {
    let s = format!("{:.19e}", v.abs());
    let (mantissa, exp) = s.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let all: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let kept = &all[..digits.clamp(1, 20) as usize];
    let sign = if v.is_sign_negative() { "-" } else { "" };
    let body = if exp >= 0 {
        let int_len = exp as usize + 1;
        if kept.len() <= int_len {
            format!("{kept:0<int_len$}")
        } else {
            format!("{}.{}", &kept[..int_len], &kept[int_len..])
        }
    } else {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), kept)
    };
    format!("{sign}{body}")
}

/// Largest digit count (up to 17) on which both ends of `[lo, hi]` agree.
pub fn certified_digits(lo: f64, hi: f64) -> u32 {
    (1..=17)
        .take_while(|&d| truncate_digits(lo, d) == truncate_digits(hi, d))
        .last()
        .unwrap_or(0)
}

pub fn cmd_constants(args: &ConstantsArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if !(1..=15).contains(&args.digits) {
        let _ = writeln!(
            err,
            "error: --digits must be in 1..=15, got {}",
            args.digits
        );
        return EXIT_USAGE;
    }
    let limit = args.sieve_limit.max(2);
    let cfg = ApproxConfig {
        prime_sum_cutoff: limit,
        ..ApproxConfig::default()
    };
    let tables = match Tables::new(limit, cfg) {
        Ok(t) => t,
        Err(e) => return fail(err, &e),
    };
    let consts = tables.constants();
    let r: CertifiedValue = if args.accelerated {
        crate::approx::limit_constant_accelerated()
    } else {
        consts.r_limit_bracket
    };
    let li = match li_pv_estimate(2.0, &cfg) {
        Ok(l) => l,
        Err(e) => return fail(err, &e),
    };
    let d = args.digits;
    let r_digits = certified_digits(r.lower, r.upper);
    let li_digits = certified_digits(li.value - li.error, li.value + li.error);
    let path = if args.accelerated {
        "zeta series".to_string()
    } else {
        format!("prime sum to {limit}")
    };
    let _ = writeln!(out, "gamma      {}", truncate_digits(EULER_GAMMA, d));
    let _ = writeln!(
        out,
        "r_limit    {}  radius {:.3e}  [{:.17e}, {:.17e}]  ({path})",
        truncate_digits(r.value, d.min(r_digits.max(1))),
        r.radius,
        r.lower,
        r.upper
    );
    let _ = writeln!(
        out,
        "li_offset  {}",
        truncate_digits(li.value, d.min(li_digits.max(1)))
    );
    let mut code = EXIT_OK;
    for (name, have) in [("r_limit", r_digits), ("li_offset", li_digits)] {
        if have < d {
            let _ = writeln!(
                err,
                "error: {name}: {d} digits requested, only {have} certified"
            );
            code = EXIT_CHECK_FAILED;
        }
    }
    code
}

/// Parses `args` and runs the selected command, returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    match &cli.command {
        Command::Tabulate(args) => match RunConfig::from_args(args) {
            Ok(config) => cmd_tabulate(&config, out, err),
            Err(msg) => {
                let _ = writeln!(err, "error: {msg}");
                EXIT_USAGE
            }
        },
        Command::Check(args) => cmd_check(args, out, err),
        Command::Constants(args) => cmd_constants(args, out, err),
    }
}
