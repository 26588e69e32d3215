//! Kummer and confluent Heun evaluators, a Frobenius series engine, and the
//! residual harness for the closed-form solutions of the linear equation
//! obtained from the Riccati equation.

pub mod branches;
pub mod frobenius;
pub mod heunc;
pub mod kummer;
pub mod l7;

use thiserror::Error;

use crate::ode::OdeError;

pub use branches::{
    heun_candidate, heun_grid, heun_parameters, kummer_candidate, kummer_vs_integration, verify_heun_branch,
    verify_kummer_branch, Basis, BranchReport, HeunBranchReport, ResidualRow, Verdict,
};
pub use frobenius::{frobenius_exponents, FrobeniusSeries, Poly1, RationalFn, SecondOrderOde};
pub use heunc::{heunc_coefficients, heunc_ode, heunc_ode_residual, heunc_series, HeunCParams, SeriesValue};
pub use kummer::{kummer_m, kummer_m_derivs, kummer_second, kummer_second_derivs, kummer_u, KummerParams};
pub use l7::L7Coefficients;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SpecialError {
    #[error("Kummer M undefined for b = {b} (zero or negative integer)")]
    InvalidB { b: f64 },
    #[error("second Kummer solution needs non-integer b, got {b}")]
    IntegerB { b: f64 },
    #[error("argument {x} outside the domain")]
    Domain { x: f64 },
    #[error("|z| = {z} outside the series disk")]
    OutsideDisk { z: f64 },
    #[error("Heun series undefined: beta + 1 + n vanishes at n = {n}")]
    DegenerateBeta { n: usize },
    #[error("irregular singular point at t = {t}")]
    IrregularPoint { t: f64 },
    #[error("Frobenius recurrence is resonant at n = {n}")]
    Resonant { n: usize },
    #[error("series did not converge within {terms} terms")]
    NotConverged { terms: usize },
    #[error(transparent)]
    Ode(#[from] OdeError),
}

pub(crate) const SERIES_EPS: f64 = 1e-17;
pub(crate) const SERIES_CAP: usize = 500;
pub(crate) const TAIL_GUARD: usize = 10;

/// Sums `sum_n c_n x^n` with its first two derivatives while `next(n, c_n)`
/// supplies `c_{n+1}`. Stops once `TAIL_GUARD` consecutive terms are below
/// `SERIES_EPS` relative to the partial sums, or the series terminates.
pub(crate) fn sum_power_series(
    x: f64,
    c0: f64,
    mut next: impl FnMut(usize, f64) -> Option<f64>,
) -> Result<[f64; 3], SpecialError> {
    let mut sums = [0.0f64; 3];
    let mut c = c0;
    let mut small = 0;
    let mut xp = 1.0; // x^n
    let mut xm1 = 0.0; // x^(n-1)
    let mut xm2 = 0.0; // x^(n-2)
    for n in 0..SERIES_CAP {
        let nf = n as f64;
        let terms = [c * xp, nf * c * xm1, nf * (nf - 1.0) * c * xm2];
        for k in 0..3 {
            sums[k] += terms[k];
        }
        let tiny = (0..3).all(|k| terms[k].abs() <= SERIES_EPS * sums[k].abs() || terms[k] == 0.0);
        small = if tiny { small + 1 } else { 0 };
        if small >= TAIL_GUARD {
            return Ok(sums);
        }
        match next(n, c) {
            Some(cn) => c = cn,
            None => return Ok(sums),
        }
        xm2 = xm1;
        xm1 = xp;
        xp *= x;
    }
    Err(SpecialError::NotConverged { terms: SERIES_CAP })
}
