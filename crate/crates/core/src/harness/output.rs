//! JSON, CSV and LaTeX renderings of polynomials, samples, paths and
//! residual reports.

use std::fs;
use std::path::{Path, PathBuf};

use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::arith::rational::to_fraction_string;
use crate::arith::{to_f64, BiPoly, Rational};
use crate::genfun::{f_and_derivative, riccati_residual_value, LinearState};
use crate::pv::{Sample, SampleValue};
use crate::special::{BranchReport, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Latex => "tex",
        }
    }
}

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// Binary64 with 17 significant digits.
pub fn float17(x: f64) -> String {
    format!("{x:.16e}")
}

fn latex_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

/// LaTeX in canonical order (descending `t`-degree), e.g.
/// `\frac{1}{8}t - r + \frac{3}{4}`.
pub fn latex_poly(p: &BiPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, ((dr, dt), c)) in p.terms().enumerate() {
        out.push_str(match (k, c.is_negative()) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        let mag = c.abs();
        if !mag.is_one() || (dr == 0 && dt == 0) {
            out.push_str(&latex_rational(&mag));
        }
        for (name, d) in [("t", dt), ("r", dr)] {
            match d {
                0 => {}
                1 => out.push_str(name),
                _ => out.push_str(&format!("{name}^{{{d}}}")),
            }
        }
    }
    out
}

pub fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, OutputError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| OutputError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
}

/// Polynomial terms as `c, deg_r, deg_t` rows.
pub fn poly_csv(p: &BiPoly) -> Result<String, OutputError> {
    csv_string(
        &["c", "deg_r", "deg_t"],
        p.terms().map(|((dr, dt), c)| vec![to_fraction_string(c), dr.to_string(), dt.to_string()]),
    )
}

/// Columns `t, y_num, y_den, y_decimal`; a pole leaves the exact columns
/// empty.
pub fn samples_csv(samples: &[Sample]) -> Result<String, OutputError> {
    csv_string(
        &["t", "y_num", "y_den", "y_decimal"],
        samples.iter().map(|s| {
            let t = crate::arith::rational::to_short_string(&s.t);
            match &s.y {
                SampleValue::Value(v) => vec![t, v.numer().to_string(), v.denom().to_string(), float17(to_f64(v))],
                SampleValue::PoleAtSample => vec![t, String::new(), String::new(), "pole".into()],
            }
        }),
    )
}

/// Columns `t, Y1, Y2, F, residual` with `F = lambda Y2/Y1` and the Riccati
/// residual at each node.
pub fn path_csv(path: &[LinearState]) -> Result<String, OutputError> {
    csv_string(
        &["t", "Y1", "Y2", "F", "residual"],
        path.iter().map(|s| {
            let (f, res) = match f_and_derivative(s) {
                Ok((f, f_t)) => (float17(f), float17(riccati_residual_value(s.t, s.lambda, s.r, f, f_t))),
                Err(_) => ("nan".into(), "nan".into()),
            };
            vec![float17(s.t), float17(s.y1), float17(s.y2), f, res]
        }),
    )
}

/// Columns `t, candidate, residual`.
pub fn residual_csv(report: &BranchReport) -> Result<String, OutputError> {
    csv_string(
        &["t", "candidate", "residual"],
        report.rows.iter().map(|row| vec![float17(row.t), float17(row.candidate), float17(row.residual)]),
    )
}

#[derive(Serialize)]
struct VerdictBlock<'a> {
    branch: String,
    lambda: f64,
    r: f64,
    max_residual: Option<f64>,
    verdict: Verdict,
    note: &'a str,
}

/// `{branch, lambda, r, max_residual, verdict}` plus the report note.
pub fn verdict_json(report: &BranchReport) -> String {
    let block = VerdictBlock {
        branch: format!(
            "{}-{}",
            report.branch,
            if report.basis == crate::special::Basis::First { "first" } else { "second" }
        ),
        lambda: report.lambda,
        r: report.r,
        max_residual: report.max_residual.is_finite().then_some(report.max_residual),
        verdict: report.verdict,
        note: &report.note,
    };
    serde_json::to_string_pretty(&block).expect("verdict block serializes")
}

/// Writes `contents` to `dir/name`, creating `dir`.
pub fn write_artifact(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, OutputError> {
    fs::create_dir_all(dir).map_err(|source| OutputError::Io { path: dir.into(), source })?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|source| OutputError::Io { path: path.clone(), source })?;
    Ok(path)
}
