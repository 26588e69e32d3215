//! `umemura <sigma|entries|pv|series|verify|eval> [flags]`

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::json;

use super::cache_file::{cache_load, cache_store};
use super::config::{parse_float_list, Config};
use super::output::{
    csv_string, float17, latex_poly, path_csv, poly_csv, residual_csv, samples_csv, verdict_json, write_artifact,
    Format,
};
use super::suites::{run_suites, Suite};
use crate::arith::document::{serialize, PolyDoc};
use crate::arith::rational::to_short_string;
use crate::arith::{to_f64, BiPoly, Rational};
use crate::genfun::{f_and_derivative, integrate_linear, riccati_formal_residual, riccati_residual_value, truncated_f};
use crate::ode::Tolerance;
use crate::pv::{build_rational_solution, pv_parameters, pv_residual, sample_solution, SampleValue};
use crate::special::{heun_grid, verify_heun_branch, verify_kummer_branch, BranchReport};
use crate::umemura::{compute_entries, sigma_recurrence, RValue, UmemuraCache};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Sigma,
    Entries,
    Pv,
    Series,
    Verify,
    Eval,
}

fn parse_r(s: &str) -> Result<RValue, String> {
    s.parse().map_err(|e: crate::error::ParseError| e.message)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FloatList(pub Vec<f64>);

fn parse_lambda(s: &str) -> Result<FloatList, String> {
    parse_float_list(s).map(FloatList).ok_or_else(|| format!("`{s}` is not a comma-separated list of numbers"))
}

#[derive(Debug, Parser)]
#[command(name = "umemura", version, about = "Umemura polynomials and rational Painleve V solutions")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// index of sigma_n, a_n or the P_V solution
    #[arg(long)]
    pub n: Option<usize>,
    /// verify: upper bound on every suite's n
    #[arg(long = "max-n")]
    pub max_n: Option<usize>,
    /// `sym` or a rational such as `1/3`
    #[arg(long, value_parser = parse_r, allow_hyphen_values = true)]
    pub r: Option<RValue>,
    /// series truncation order
    #[arg(long = "N")]
    pub series_n: Option<usize>,
    /// comma-separated lambda values
    #[arg(long, value_parser = parse_lambda, allow_hyphen_values = true)]
    pub lambda: Option<FloatList>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// directory for report and artifact files
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// key = value settings file
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// treat a Heun MISMATCH as failure
    #[arg(long)]
    pub strict_heun: bool,
    /// verify: `all`, suite names or criterion numbers, comma-separated
    #[arg(long, default_value = "all")]
    pub suite: String,
}

enum CliError {
    Usage(String),
    Failure(String),
}

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Failure(e.to_string())
    }
}

type CliResult = Result<i32, CliError>;

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code: 0 success, 1 failure, 2 usage error.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    run_with_output(argv, &mut stdout.lock())
}

pub fn run_with_output<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut watched = PipeWatch { inner: out, closed: false };
    let result = execute(&cli, &mut watched);
    if watched.closed {
        // reader went away (`umemura ... | head`); nothing left to report to
        return 0;
    }
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

struct PipeWatch<'a> {
    inner: &'a mut dyn Write,
    closed: bool,
}

impl PipeWatch<'_> {
    fn note<T>(&mut self, r: std::io::Result<T>) -> std::io::Result<T> {
        if let Err(e) = &r {
            self.closed |= e.kind() == std::io::ErrorKind::BrokenPipe;
        }
        r
    }
}

impl Write for PipeWatch<'_> {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        let r = self.inner.write(buf);
        self.note(r)
    }

    fn flush(&mut self) -> std::io::Result<()> {
        let r = self.inner.flush();
        self.note(r)
    }
}

fn load_config(cli: &Cli) -> Result<Config, CliError> {
    let mut cfg = match &cli.config {
        Some(p) => Config::load(p).map_err(|e| CliError::Usage(e.to_string()))?,
        None => Config::default(),
    };
    cfg.apply_env();
    if let Some(out) = &cli.out {
        cfg.output_dir = Some(out.clone());
    }
    if let Some(l) = &cli.lambda {
        cfg.lambda_samples = l.0.clone();
    }
    if let Some(n) = cli.series_n {
        cfg.series_n = n;
    }
    if let Some(RValue::Value(r)) = &cli.r {
        if cli.command == Command::Verify {
            cfg.r_samples = vec![r.clone()];
        }
    }
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(cfg)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult {
    let cfg = load_config(cli)?;
    match cli.command {
        Command::Sigma => sigma(cli, &cfg, out),
        Command::Entries => entries(cli, &cfg, out),
        Command::Pv => pv(cli, &cfg, out),
        Command::Series => series(cli, &cfg, out),
        Command::Verify => verify(cli, &cfg, out),
        Command::Eval => eval(cli, &cfg, out),
    }
}

fn emit(cfg: &Config, out: &mut dyn Write, name: &str, text: &str) -> Result<(), CliError> {
    writeln!(out, "{}", text.trim_end())?;
    if let Some(dir) = &cfg.output_dir {
        write_artifact(dir, name, text)?;
    }
    Ok(())
}

fn poly_text(p: &BiPoly, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => serialize(p),
        Format::Csv => poly_csv(p)?,
        Format::Latex => latex_poly(p),
    })
}

/// sigma_n through the cache file when one is configured and matches `r`.
fn cached_sigma(n: usize, r: &RValue, cache_path: Option<&Path>) -> Result<BiPoly, CliError> {
    let Some(path) = cache_path else {
        return Ok(sigma_recurrence(n, r)?);
    };
    let mut cache = if path.exists() { cache_load(path)? } else { UmemuraCache::new(r.clone()) };
    if cache.r() != r {
        return Ok(sigma_recurrence(n, r)?);
    }
    cache.ensure_recurrence(n)?;
    let p = cache.sigma(n).cloned().expect("filled by the recurrence");
    cache_store(&cache, path)?;
    Ok(p)
}

fn sigma(cli: &Cli, cfg: &Config, out: &mut dyn Write) -> CliResult {
    let n = cli.n.unwrap_or(2);
    let r = cli.r.clone().unwrap_or(RValue::Symbolic);
    let p = cached_sigma(n, &r, cfg.cache_path.as_deref())?;
    emit(cfg, out, &format!("sigma_{n}.{}", cli.format.extension()), &poly_text(&p, cli.format)?)?;
    Ok(0)
}

fn entries(cli: &Cli, cfg: &Config, out: &mut dyn Write) -> CliResult {
    let n = cli.max_n.or(cli.n).unwrap_or(5);
    let r = cli.r.clone().unwrap_or(RValue::Symbolic);
    let seq = compute_entries(n, &r);
    let text = match cli.format {
        Format::Json => serde_json::to_string(&seq.entries.iter().map(PolyDoc::from_poly).collect::<Vec<_>>())?,
        Format::Csv => csv_string(
            &["n", "c", "deg_r", "deg_t"],
            seq.entries.iter().enumerate().flat_map(|(k, p)| {
                p.terms()
                    .map(move |((dr, dt), c)| {
                        vec![
                            k.to_string(),
                            crate::arith::rational::to_fraction_string(c),
                            dr.to_string(),
                            dt.to_string(),
                        ]
                    })
                    .collect::<Vec<_>>()
            }),
        )?,
        Format::Latex => seq
            .entries
            .iter()
            .enumerate()
            .map(|(k, p)| format!("a_{{{k}}} = {}", latex_poly(p)))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    emit(cfg, out, &format!("entries_{n}.{}", cli.format.extension()), &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct SampleDoc {
    t: String,
    y_num: Option<String>,
    y_den: Option<String>,
    y_decimal: Option<f64>,
}

fn pv(cli: &Cli, cfg: &Config, out: &mut dyn Write) -> CliResult {
    let n = cli.n.unwrap_or(1);
    let r = cli.r.clone().unwrap_or(RValue::Symbolic);
    let sol = build_rational_solution(n, &r)?;
    let params = pv_parameters(n, &r);
    let zero = pv_residual(&sol, &params)?.is_zero();
    let samples = match &r {
        RValue::Value(rv) => Some(sample_solution(n, rv, &cfg.sample_grid)?),
        RValue::Symbolic => None,
    };
    let text = match cli.format {
        Format::Json => {
            let sample_docs: Option<Vec<SampleDoc>> = samples.as_ref().map(|s| {
                s.iter()
                    .map(|s| {
                        let t = to_short_string(&s.t);
                        match &s.y {
                            SampleValue::Value(v) => SampleDoc {
                                t,
                                y_num: Some(v.numer().to_string()),
                                y_den: Some(v.denom().to_string()),
                                y_decimal: Some(to_f64(v)),
                            },
                            SampleValue::PoleAtSample => SampleDoc { t, y_num: None, y_den: None, y_decimal: None },
                        }
                    })
                    .collect()
            });
            serde_json::to_string_pretty(&json!({
                "n": n,
                "r": r.to_string(),
                "parameters": {
                    "alpha": PolyDoc::from_poly(&params.alpha),
                    "beta": PolyDoc::from_poly(&params.beta),
                    "gamma": PolyDoc::from_poly(&params.gamma),
                    "delta": PolyDoc::from_poly(&params.delta),
                },
                "y": { "num": PolyDoc::from_poly(sol.y.num()), "den": PolyDoc::from_poly(sol.y.den()) },
                "residual_zero": zero,
                "samples": sample_docs,
            }))?
        }
        Format::Csv => match &samples {
            Some(s) => samples_csv(s)?,
            None => return Err(CliError::Usage("CSV samples need a rational --r".into())),
        },
        Format::Latex => format!("y = \\frac{{{}}}{{{}}}", latex_poly(sol.y.num()), latex_poly(sol.y.den())),
    };
    emit(cfg, out, &format!("pv_{n}.{}", cli.format.extension()), &text)?;
    if zero {
        Ok(0)
    } else {
        eprintln!("residual of P_V is not zero");
        Ok(1)
    }
}

fn series(cli: &Cli, cfg: &Config, out: &mut dyn Write) -> CliResult {
    let n = cfg.series_n;
    let r = cli.r.clone().unwrap_or(RValue::Symbolic);
    let f = truncated_f(n, &r);
    let residual = riccati_formal_residual(n, &r);
    let nonzero: Vec<i64> = residual.iter().filter(|(_, p)| !p.is_zero()).map(|(k, _)| *k).collect();
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "N": n,
            "r": r.to_string(),
            "coeffs": f.coeffs.iter().map(PolyDoc::from_poly).collect::<Vec<_>>(),
            "residual_orders": residual.iter().map(|(k, p)| json!({"order": k, "zero": p.is_zero()})).collect::<Vec<_>>(),
        }))?,
        Format::Csv => {
            csv_string(&["order", "zero"], residual.iter().map(|(k, p)| vec![k.to_string(), p.is_zero().to_string()]))?
        }
        Format::Latex => f
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, p)| format!("a_{{{k}}} = {}", latex_poly(p)))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    emit(cfg, out, &format!("series_{n}.{}", cli.format.extension()), &text)?;
    Ok(i32::from(!nonzero.is_empty()))
}

fn verify(cli: &Cli, cfg: &Config, out: &mut dyn Write) -> CliResult {
    let suites =
        Suite::parse_selection(&cli.suite).ok_or_else(|| CliError::Usage(format!("unknown suite `{}`", cli.suite)))?;
    if let Some(m) = cli.max_n {
        if m < 2 {
            return Err(CliError::Usage("--max-n must be at least 2".into()));
        }
    }
    let report = run_suites(cfg, cli.max_n, &suites);
    for r in &report.results {
        writeln!(out, "{r}")?;
    }
    writeln!(out, "{}", report.summary())?;
    if let Some(dir) = &cfg.output_dir {
        let (name, text) = match cli.format {
            Format::Json => ("report.json", serde_json::to_string_pretty(&report)?),
            Format::Csv => (
                "report.csv",
                csv_string(
                    &["id", "inputs", "verdict", "detail"],
                    report
                        .results
                        .iter()
                        .map(|r| vec![r.id.clone(), r.inputs.clone(), r.verdict.to_string(), r.detail.clone()]),
                )?,
            ),
            Format::Latex => return Err(CliError::Usage("verify reports are written as json or csv".into())),
        };
        write_artifact(dir, name, &text)?;
    }
    Ok(report.exit_code(cli.strict_heun))
}

fn tag(x: f64) -> String {
    x.to_string().replace('-', "m")
}

fn eval(cli: &Cli, cfg: &Config, out: &mut dyn Write) -> CliResult {
    let r: Rational = match &cli.r {
        Some(RValue::Value(v)) => v.clone(),
        Some(RValue::Symbolic) => return Err(CliError::Usage("eval needs a rational --r".into())),
        None => cfg.r_samples[0].clone(),
    };
    if cli.format == Format::Latex {
        return Err(CliError::Usage("eval writes json or csv".into()));
    }
    let rf = to_f64(&r);
    let tol = Tolerance { rtol: cfg.integrator_tol, atol: cfg.integrator_tol * 1e-2 };
    let mut summary = Vec::new();
    let mut combined = Vec::new();
    for &lam in &cfg.lambda_samples {
        let path = integrate_linear(1.0, 3.0, [1.0, 0.2], lam, rf, tol)?;
        let mut worst = 0.0f64;
        for s in &path {
            let (f, f_t) = f_and_derivative(s)?;
            let res = riccati_residual_value(s.t, lam, rf, f, f_t);
            worst = worst.max(res.abs());
            combined.push(vec![float17(lam), float17(s.t), float17(s.y1), float17(s.y2), float17(f), float17(res)]);
        }
        let branches: Vec<BranchReport> = if rf == 0.0 {
            verify_kummer_branch(lam, &crate::harness::suites::kummer_grid())?
        } else {
            verify_heun_branch(lam, rf, &heun_grid(rf, 12))?.bases
        };
        if let Some(dir) = &cfg.output_dir {
            let stem = format!("lambda{}_r{}", tag(lam), tag(rf));
            write_artifact(dir, &format!("path_{stem}.csv"), &path_csv(&path)?)?;
            for b in &branches {
                let which = format!(
                    "{}_{}_{stem}",
                    b.branch,
                    if b.basis == crate::special::Basis::First { "first" } else { "second" }
                );
                write_artifact(dir, &format!("residual_{which}.csv"), &residual_csv(b)?)?;
                write_artifact(dir, &format!("verdict_{which}.json"), &verdict_json(b))?;
            }
        }
        summary.push(json!({
            "lambda": lam,
            "r": to_short_string(&r),
            "riccati_max_residual": worst,
            "branches": branches.iter().map(|b| serde_json::from_str::<serde_json::Value>(&verdict_json(b)).expect("valid json")).collect::<Vec<_>>(),
        }));
    }
    let text = match cli.format {
        Format::Csv => csv_string(&["lambda", "t", "Y1", "Y2", "F", "residual"], combined)?,
        _ => serde_json::to_string_pretty(&summary)?,
    };
    emit(cfg, out, &format!("eval.{}", cli.format.extension()), &text)?;
    Ok(0)
}
