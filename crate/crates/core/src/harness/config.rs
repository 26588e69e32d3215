//! Run configuration: documented defaults, a `key = value` file, and flag
//! overrides applied on top.

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::arith::{parse_rational, rat, to_f64, Rational};

pub const CACHE_ENV: &str = "UMEMURA_CACHE";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub n_max_symbolic: usize,
    pub n_max_numeric: usize,
    pub pv_n_max: usize,
    pub series_n: usize,
    pub integrator_tol: f64,
    pub residual_tol: f64,
    pub lambda_samples: Vec<f64>,
    pub r_samples: Vec<Rational>,
    /// `t` values for sampled rational solutions.
    pub sample_grid: Vec<Rational>,
    pub output_dir: Option<PathBuf>,
    pub cache_path: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            n_max_symbolic: 10,
            n_max_numeric: 14,
            pv_n_max: 6,
            series_n: 20,
            integrator_tol: 1e-10,
            residual_tol: 1e-8,
            lambda_samples: vec![0.5, 1.0, 1.5, 2.5],
            r_samples: vec![rat(1, 3), rat(-1, 2), rat(2, 1)],
            sample_grid: vec![rat(1, 2), rat(1, 1), rat(2, 1), rat(3, 1), rat(4, 1)],
            output_dir: None,
            cache_path: None,
        }
    }
}

fn parse_list<T>(text: &str, line: usize, item: impl Fn(&str) -> Option<T>) -> Result<Vec<T>, ConfigError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| item(s).ok_or_else(|| ConfigError::Syntax { line, message: format!("bad list item `{s}`") }))
        .collect()
}

pub fn parse_float_list(text: &str) -> Option<Vec<f64>> {
    parse_list(text, 0, |s| s.parse().ok()).ok().filter(|v: &Vec<f64>| !v.is_empty())
}

impl Config {
    /// Defaults overridden by the `key = value` lines of `text`. Blank lines
    /// and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| ConfigError::Syntax { line, message: "expected key = value".into() })?;
            let (key, value) = (key.trim(), value.trim());
            let int = || -> Result<usize, ConfigError> {
                value.parse().map_err(|_| ConfigError::Syntax { line, message: format!("`{value}` is not an integer") })
            };
            let float = || -> Result<f64, ConfigError> {
                value.parse().map_err(|_| ConfigError::Syntax { line, message: format!("`{value}` is not a number") })
            };
            match key {
                "n_max_symbolic" => cfg.n_max_symbolic = int()?,
                "n_max_numeric" => cfg.n_max_numeric = int()?,
                "pv_n_max" => cfg.pv_n_max = int()?,
                "series_N" | "series_n" => cfg.series_n = int()?,
                "integrator_tol" => cfg.integrator_tol = float()?,
                "residual_tol" => cfg.residual_tol = float()?,
                "lambda_samples" => cfg.lambda_samples = parse_list(value, line, |s| s.parse().ok())?,
                "r_samples" => cfg.r_samples = parse_list(value, line, |s| parse_rational(s).ok())?,
                "sample_grid" => cfg.sample_grid = parse_list(value, line, |s| parse_rational(s).ok())?,
                "output_dir" => cfg.output_dir = Some(PathBuf::from(value)),
                "cache_path" => cfg.cache_path = Some(PathBuf::from(value)),
                _ => return Err(ConfigError::UnknownKey { line, key: key.into() }),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?;
        Self::parse(&text)
    }

    /// `UMEMURA_CACHE`, when set, replaces the cache path.
    pub fn apply_env(&mut self) {
        if let Some(p) = std::env::var_os(CACHE_ENV).filter(|p| !p.is_empty()) {
            self.cache_path = Some(PathBuf::from(p));
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, v) in [("integrator_tol", self.integrator_tol), ("residual_tol", self.residual_tol)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ConfigError::Invalid(format!("{name} must be positive, got {v}")));
            }
        }
        for (name, v) in [
            ("n_max_symbolic", self.n_max_symbolic),
            ("n_max_numeric", self.n_max_numeric),
            ("pv_n_max", self.pv_n_max),
            ("series_N", self.series_n),
        ] {
            if v < 2 {
                return Err(ConfigError::Invalid(format!("{name} must be at least 2, got {v}")));
            }
        }
        if self.lambda_samples.is_empty() || self.r_samples.is_empty() {
            return Err(ConfigError::Invalid("sample lists must not be empty".into()));
        }
        Ok(())
    }

    pub fn r_samples_f64(&self) -> Vec<f64> {
        self.r_samples.iter().map(to_f64).collect()
    }
}
