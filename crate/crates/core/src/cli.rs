//! Command-line front end: `eval`, `zeros`, `count`, `verify`, `coeffs`.
//!
//! Complex literals are written `a+bi`, `bi`, `i*5` or plain reals; point
//! lists are `;`-separated literals or a grid `re0:re1:n,im0:im1:m`.
//! Zeros are exchanged as CSV (`# schema=xizeros/1` comment line, then
//! `re,im,multiplicity,on_line,method,residual`); reports as JSON.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage, 3 numeric,
//! 4 infrastructure (I/O).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::defaults::{self, Defaults};
use crate::dirichlet::{dirichlet_zeros_in_rect, PsiShifted};
use crate::error::{Error, Result};
use crate::numerics::PrecisionBudget;
use crate::profiles::{delta_coefficients, CoefficientSequence};
use crate::theorems::{run_suite, Suite, SuiteParams};
use crate::xi::{self, EvalContext};
use crate::zerocount::{count_report, CountOptions, CountReport, Method, Rectangle, ZeroRecord};

pub const SCHEMA: &str = "xizeros/1";
pub const VERIFY_SCHEMA: &str = "xizeros-verify/1";
pub const CSV_HEADER: &str = "re,im,multiplicity,on_line,method,residual";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_INFRA: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "xizeros", version, about = "Zeros of approximations to the Ramanujan Xi-function")]
struct Cli {
    /// Print every default (budget, beta, step sizes, tolerances) as JSON and exit.
    #[arg(long)]
    print_defaults: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a function at points.
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "C_F")]
        function: Function,
        /// `;`-separated complex literals or `re0:re1:n,im0:im1:m`.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
    /// List zeros as CSV.
    Zeros {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "C_F")]
        target: Target,
        /// Height for C_F: zeros with |Im s| < T and |Re s| < beta.
        #[arg(long = "T")]
        t: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        /// Rectangle `sigma0,sigma1,t1,t2` for psi_F_k.
        #[arg(long, allow_hyphen_values = true)]
        rect: Option<String>,
    },
    /// Counting report over (-beta, beta) x (-T, T) as JSON.
    Count {
        #[command(flatten)]
        common: Common,
        #[arg(long = "T")]
        t: f64,
        #[arg(long)]
        beta: Option<f64>,
    },
    /// Run verification checks; exit 0 iff every applicable check passes.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long = "T")]
        t: Option<f64>,
        /// Strip half-width for counting; default max(3, beta0 estimate).
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        dstar: Option<f64>,
        #[arg(long)]
        dstarstar: Option<f64>,
        #[arg(long)]
        sigma0: Option<f64>,
        /// `;`-separated heights for the asymptotic zero count.
        #[arg(long)]
        t_list: Option<String>,
        /// `;`-separated abscissae for the growth checks.
        #[arg(long)]
        sigma_grid: Option<String>,
        /// `lo,hi` for the growth checks.
        #[arg(long)]
        tau_range: Option<String>,
        /// Number of density windows.
        #[arg(long)]
        windows: Option<usize>,
        /// Reuse zeros from a CSV written by `zeros` instead of locating them.
        #[arg(long)]
        zeros_file: Option<PathBuf>,
    },
    /// Print the coefficients of prod (1 - q^k)^12 up to q^N as a JSON array.
    Coeffs {
        #[arg(long = "N", allow_hyphen_values = true)]
        n: i64,
    },
}

/// How F is given; exactly one source may be set across the command line
/// and the config file.
#[derive(Debug, Clone, Default, Args)]
struct Common {
    /// Coefficients as a JSON array of numbers or complex literals, e.g. "[1,-1]".
    #[arg(long = "F", allow_hyphen_values = true)]
    f: Option<String>,
    /// Use the truncation F^(N) of the product expansion.
    #[arg(long = "F-delta")]
    f_delta: Option<usize>,
    /// File holding the coefficient array.
    #[arg(long = "F-file")]
    f_file: Option<PathBuf>,
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    rel_tol: Option<f64>,
    #[arg(long)]
    abs_tol: Option<f64>,
    #[arg(long)]
    max_evals: Option<usize>,
    #[arg(long)]
    t_cutoff: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Function {
    #[value(name = "xi_F")]
    XiF,
    #[value(name = "C_F")]
    CF,
    #[value(name = "W_F")]
    WF,
    #[value(name = "h")]
    H,
    #[value(name = "psi_F")]
    PsiF,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    #[value(name = "C_F")]
    CF,
    #[value(name = "psi_F_k")]
    PsiFK,
}

/// Where F comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FSource {
    Inline(Vec<Value>),
    DeltaTruncation(usize),
    File(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    Csv,
    Json,
}

/// Contents of a `--config` file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(rename = "F_source", default)]
    pub f_source: Option<FSource>,
    #[serde(default)]
    pub budget: Option<PrecisionBudget>,
    #[serde(default)]
    pub output: Option<Output>,
    /// Always true: nothing in the pipeline is random.
    #[serde(default = "yes")]
    pub seed_free: bool,
}

fn yes() -> bool {
    true
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) => EXIT_INFRA,
            ref e if e.is_numeric() => EXIT_NUMERIC,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Error::from(e).into()
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: msg.into(),
    }
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if code == EXIT_PASS { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    if cli.print_defaults {
        emit(out, &serde_json::to_string_pretty(&Defaults::current()).map_err(Error::from)?)?;
        return Ok(EXIT_PASS);
    }
    let Some(command) = cli.command else {
        return Err(usage("no subcommand given (try --help)"));
    };
    match command {
        Command::Eval { common, function, points } => cmd_eval(&common, function, &points, out),
        Command::Zeros { common, target, t, beta, rect } => cmd_zeros(&common, target, t, beta, rect.as_deref(), out),
        Command::Count { common, t, beta } => cmd_count(&common, t, beta, out),
        Command::Verify {
            common,
            suite,
            t,
            beta,
            delta,
            dstar,
            dstarstar,
            sigma0,
            t_list,
            sigma_grid,
            tau_range,
            windows,
            zeros_file,
        } => {
            let suite = Suite::parse(&suite).ok_or_else(|| usage(format!("unknown suite {suite:?}")))?;
            let mut params = SuiteParams {
                beta,
                ..Default::default()
            };
            set(&mut params.t, t);
            set(&mut params.delta, delta);
            set(&mut params.dstar, dstar);
            set(&mut params.dstarstar, dstarstar);
            set(&mut params.sigma0, sigma0);
            set(&mut params.density_windows, windows);
            if let Some(s) = t_list {
                params.t_list = parse_list(&s)?;
            }
            if let Some(s) = sigma_grid {
                params.sigma_grid = parse_list(&s)?;
            }
            if let Some(s) = tau_range {
                let v: Vec<f64> = s.split(',').map(parse_real).collect::<Result<_>>()?;
                if v.len() != 2 {
                    return Err(usage("--tau-range takes lo,hi"));
                }
                params.tau_range = (v[0], v[1]);
            }
            if let Some(path) = zeros_file {
                let (zeros, meta) = read_zeros_csv(&path)?;
                if let Some(t) = meta.t {
                    params.t = t;
                }
                if params.beta.is_none() {
                    params.beta = meta.beta;
                }
                params.zeros = Some(zeros);
            }
            cmd_verify(&common, suite, &params, out)
        }
        Command::Coeffs { n } => {
            let n = usize::try_from(n).map_err(|_| usage(format!("--N must be non-negative, got {n}")))?;
            let c = delta_coefficients(n)?;
            emit(out, &serde_json::to_string(&c).map_err(Error::from)?)?;
            Ok(EXIT_PASS)
        }
    }
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    writeln!(out, "{text}").map_err(|e| Error::Io(e.to_string()))
}

/// Parses `a+bi`, `a-bi`, `bi`, `i`, `i*b`, `-i*b`, `a+i*b` or a real.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("invalid complex literal {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let imag = |part: &str| -> Result<f64> {
        let (sign, body) = match part.strip_prefix('-') {
            Some(b) => (-1.0, b),
            None => (1.0, part.strip_prefix('+').unwrap_or(part)),
        };
        let value = if let Some(b) = body.strip_prefix("i*") {
            b.parse::<f64>().map_err(|_| bad())?
        } else if let Some(b) = body.strip_suffix('i') {
            if b.is_empty() {
                1.0
            } else {
                b.strip_suffix('*').unwrap_or(b).parse::<f64>().map_err(|_| bad())?
            }
        } else {
            return Err(bad());
        };
        Ok(sign * value)
    };
    if !s.contains('i') {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    }
    // Split before the last sign that is not an exponent sign or leading.
    let bytes = s.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E' | b'*'));
    match split {
        Some(j) => {
            let re = s[..j].parse::<f64>().map_err(|_| bad())?;
            Ok(Complex64::new(re, imag(&s[j..])?))
        }
        None => Ok(Complex64::new(0.0, imag(&s)?)),
    }
}

fn parse_real(text: &str) -> Result<f64> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("invalid number {text:?}")))
}

fn parse_list(text: &str) -> Result<Vec<f64>> {
    text.split(';').filter(|s| !s.trim().is_empty()).map(parse_real).collect()
}

/// Parses a point list (`;`-separated literals) or a grid
/// `re0:re1:n,im0:im1:m`, emitted row by row.
pub fn parse_points(text: &str) -> Result<Vec<Complex64>> {
    if text.contains(':') {
        let axes: Vec<&str> = text.split(',').collect();
        let axis = |a: &str| -> Result<(f64, f64, usize)> {
            let p: Vec<&str> = a.split(':').collect();
            if p.len() != 3 {
                return Err(Error::Parse(format!("grid axis {a:?} is not lo:hi:n")));
            }
            let n = p[2]
                .trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::Parse(format!("grid size {:?} must be a positive integer", p[2])))?;
            Ok((parse_real(p[0])?, parse_real(p[1])?, n))
        };
        if axes.len() != 2 {
            return Err(Error::Parse(format!("grid {text:?} is not re0:re1:n,im0:im1:m")));
        }
        let (r0, r1, n) = axis(axes[0])?;
        let (i0, i1, m) = axis(axes[1])?;
        return Ok(crate::theorems::rect_grid((r0, r1), (i0, i1), n, m));
    }
    let pts: Vec<Complex64> = text
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(parse_complex)
        .collect::<Result<_>>()?;
    if pts.is_empty() {
        return Err(Error::Parse("empty point list".into()));
    }
    Ok(pts)
}

/// Parses a coefficient array: JSON numbers or complex-literal strings.
pub fn parse_coefficients(text: &str) -> Result<CoefficientSequence> {
    let values: Vec<Value> =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("coefficients must be a JSON array: {e}")))?;
    coefficients_from_values(&values)
}

fn coefficients_from_values(values: &[Value]) -> Result<CoefficientSequence> {
    if values.is_empty() {
        return Err(Error::Parse("empty coefficient array".into()));
    }
    let coeffs = values
        .iter()
        .map(|v| match v {
            Value::Number(n) => n
                .as_f64()
                .map(|x| Complex64::new(x, 0.0))
                .ok_or_else(|| Error::Parse(format!("bad number {n}"))),
            Value::String(s) => parse_complex(s),
            Value::Array(p) if p.len() == 2 => match (p[0].as_f64(), p[1].as_f64()) {
                (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                _ => Err(Error::Parse(format!("bad pair {v}"))),
            },
            other => Err(Error::Parse(format!("bad coefficient {other}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    CoefficientSequence::new(coeffs)
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_config(common: &Common) -> Result<Option<RunConfig>> {
    match &common.config {
        Some(path) => serde_json::from_str(&read_file(path)?)
            .map(Some)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
        None => Ok(None),
    }
}

fn context(common: &Common) -> std::result::Result<EvalContext, Failure> {
    let config = load_config(common)?;
    let mut sources = Vec::new();
    if let Some(s) = &common.f {
        let values: Vec<Value> =
            serde_json::from_str(s).map_err(|e| usage(format!("--F must be a JSON array: {e}")))?;
        sources.push(FSource::Inline(values));
    }
    if let Some(n) = common.f_delta {
        sources.push(FSource::DeltaTruncation(n));
    }
    if let Some(p) = &common.f_file {
        sources.push(FSource::File(p.clone()));
    }
    let source = match (sources.len(), config.as_ref().and_then(|c| c.f_source.clone())) {
        (0, Some(s)) => s,
        (1, None) => sources.pop().expect("one source"),
        (0, None) => return Err(usage("no coefficient source: give one of --F, --F-delta, --F-file")),
        _ => return Err(usage("give exactly one of --F, --F-delta, --F-file (or F_source in --config)")),
    };
    let f = match source {
        FSource::Inline(values) => coefficients_from_values(&values).map_err(|e| usage(e.to_string()))?,
        FSource::DeltaTruncation(n) => CoefficientSequence::delta_truncation(n)?,
        FSource::File(path) => parse_coefficients(&read_file(&path)?)?,
    };
    let mut budget = config.and_then(|c| c.budget).unwrap_or_default();
    set(&mut budget.rel_tol, common.rel_tol);
    set(&mut budget.abs_tol, common.abs_tol);
    set(&mut budget.max_evals, common.max_evals);
    set(&mut budget.t_cutoff, common.t_cutoff);
    Ok(EvalContext::new(f, budget)?)
}

fn cmd_eval(common: &Common, function: Function, points: &str, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let ctx = context(common)?;
    let points = parse_points(points)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["re_s", "im_s", "re_f", "im_f", "err_estimate"]).map_err(csv_err)?;
    for s in points {
        let (value, err) = match function {
            Function::XiF => split(xi::xi_f(&ctx, s)?),
            Function::CF => split(xi::c_f(&ctx, s)?),
            Function::WF => split(xi::w_f(&ctx, s)?),
            Function::H => split(xi::h(&ctx, s)?),
            Function::PsiF => {
                use crate::zerocount::ComplexFunction;
                let sample = PsiShifted::with_shift(&ctx.f, 0.0).eval(s)?;
                (sample.value, sample.err)
            }
        };
        w.write_record([fmt(s.re), fmt(s.im), fmt(value.re), fmt(value.im), fmt(err)])
            .map_err(csv_err)?;
    }
    write_csv(w, out)?;
    Ok(EXIT_PASS)
}

fn split(r: crate::numerics::QuadratureResult) -> (Complex64, f64) {
    (r.value, r.err_estimate)
}

/// Shortest representation that parses back to the same f64.
fn fmt(x: f64) -> String {
    format!("{x:?}")
}

fn csv_err(e: csv::Error) -> Error {
    Error::from(e)
}

fn write_csv(w: csv::Writer<Vec<u8>>, out: &mut dyn Write) -> Result<()> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    out.write_all(&bytes).map_err(|e| Error::Io(e.to_string()))
}

/// Metadata carried on the schema comment line of a zeros CSV.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ZerosMeta {
    pub target: Option<String>,
    pub t: Option<f64>,
    pub beta: Option<f64>,
}

/// Writes zero records as CSV with the schema comment line first.
pub fn write_zeros_csv(records: &[ZeroRecord], meta: &ZerosMeta, out: &mut dyn Write) -> Result<()> {
    let mut line = format!("# schema={SCHEMA}");
    if let Some(t) = &meta.target {
        line += &format!(" target={t}");
    }
    if let Some(t) = meta.t {
        line += &format!(" T={}", fmt(t));
    }
    if let Some(b) = meta.beta {
        line += &format!(" beta={}", fmt(b));
    }
    emit(out, &line)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER.split(',')).map_err(csv_err)?;
    for z in records {
        w.write_record([
            fmt(z.position.re),
            fmt(z.position.im),
            z.multiplicity.to_string(),
            z.on_line.to_string(),
            z.method.as_str().to_string(),
            fmt(z.residual),
        ])
        .map_err(csv_err)?;
    }
    write_csv(w, out)
}

/// Reads a CSV written by [`write_zeros_csv`].
pub fn parse_zeros_csv(text: &str) -> Result<(Vec<ZeroRecord>, ZerosMeta)> {
    let mut meta = ZerosMeta::default();
    let mut body = String::new();
    let mut schema_seen = false;
    for line in text.lines() {
        if let Some(comment) = line.strip_prefix('#') {
            for token in comment.split_whitespace() {
                match token.split_once('=') {
                    Some(("schema", v)) => {
                        if v != SCHEMA {
                            return Err(Error::Parse(format!("unsupported schema {v:?}")));
                        }
                        schema_seen = true;
                    }
                    Some(("target", v)) => meta.target = Some(v.to_string()),
                    Some(("T", v)) => meta.t = Some(parse_real(v)?),
                    Some(("beta", v)) => meta.beta = Some(parse_real(v)?),
                    _ => {}
                }
            }
        } else {
            body.push_str(line);
            body.push('\n');
        }
    }
    if !schema_seen {
        return Err(Error::Parse(format!("missing '# schema={SCHEMA}' line")));
    }
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if header.join(",") != CSV_HEADER {
        return Err(Error::Parse(format!("unexpected header {:?}", header.join(","))));
    }
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| Error::Parse(e.to_string()))?;
        let field = |j: usize| row.get(j).unwrap_or("");
        let multiplicity = field(2)
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad multiplicity {:?}", field(2))))?;
        let on_line = field(3)
            .parse::<bool>()
            .map_err(|_| Error::Parse(format!("bad on_line {:?}", field(3))))?;
        let method = Method::parse(field(4)).ok_or_else(|| Error::Parse(format!("bad method {:?}", field(4))))?;
        records.push(ZeroRecord {
            position: Complex64::new(parse_real(field(0))?, parse_real(field(1))?),
            multiplicity,
            on_line,
            method,
            residual: parse_real(field(5))?,
            trusted: true,
        });
    }
    Ok((records, meta))
}

pub fn read_zeros_csv(path: &Path) -> Result<(Vec<ZeroRecord>, ZerosMeta)> {
    parse_zeros_csv(&read_file(path)?)
}

fn parse_rect(text: &str) -> Result<Rectangle> {
    let v: Vec<f64> = text.split(',').map(parse_real).collect::<Result<_>>()?;
    if v.len() != 4 {
        return Err(Error::Parse(format!("rectangle {text:?} is not sigma0,sigma1,t1,t2")));
    }
    Rectangle::new(v[0], v[1], v[2], v[3])
}

fn cmd_zeros(
    common: &Common,
    target: Target,
    t: Option<f64>,
    beta: Option<f64>,
    rect: Option<&str>,
    out: &mut dyn Write,
) -> std::result::Result<i32, Failure> {
    let ctx = context(common)?;
    match target {
        Target::CF => {
            let t = t.ok_or_else(|| usage("--T is required for target C_F"))?;
            let beta = beta.unwrap_or(defaults::BETA);
            let report = count_report(&ctx, t, beta, &CountOptions::default())?;
            let meta = ZerosMeta {
                target: Some("C_F".into()),
                t: Some(report.t),
                beta: Some(beta),
            };
            write_zeros_csv(&report.zeros(), &meta, out)?;
        }
        Target::PsiFK => {
            let rect = parse_rect(rect.ok_or_else(|| usage("--rect is required for target psi_F_k"))?)?;
            let zeros = dirichlet_zeros_in_rect(&ctx.f, &rect, &ctx.budget)?;
            let meta = ZerosMeta {
                target: Some("psi_F_k".into()),
                ..Default::default()
            };
            write_zeros_csv(&zeros, &meta, out)?;
        }
    }
    Ok(EXIT_PASS)
}

/// A count report as a JSON document tagged with the schema.
pub fn count_document(f: &CoefficientSequence, report: &CountReport) -> Result<Value> {
    let mut doc = serde_json::to_value(report)?;
    if let Value::Object(m) = &mut doc {
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("F".into(), serde_json::to_value(f)?);
    }
    Ok(doc)
}

fn cmd_count(common: &Common, t: f64, beta: Option<f64>, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let ctx = context(common)?;
    let report = count_report(&ctx, t, beta.unwrap_or(defaults::BETA), &CountOptions::default())?;
    let doc = count_document(&ctx.f, &report)?;
    emit(out, &serde_json::to_string_pretty(&doc)?)?;
    Ok(EXIT_PASS)
}

fn cmd_verify(common: &Common, suite: Suite, params: &SuiteParams, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let ctx = context(common)?;
    let reports = run_suite(&ctx, suite, params)?;
    let pass = reports.iter().all(|r| r.ok());
    let doc = json!({
        "schema": VERIFY_SCHEMA,
        "F": ctx.f,
        "suite": suite,
        "pass": pass,
        "not_applicable": reports.iter().filter(|r| !r.applicable).map(|r| r.theorem_id).collect::<Vec<_>>(),
        "reports": reports,
    });
    emit(out, &serde_json::to_string_pretty(&doc)?)?;
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}
