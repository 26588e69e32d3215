//! wasm-bindgen bindings for the demo page in `www/`.
//!
//! Every export returns a flat `Float64Array` of fixed-width rows so the page
//! can plot without parsing. The plain functions below do the work and are
//! tested natively; the `#[wasm_bindgen]` wrappers only map errors.

use umemura::arith::{parse_rational, to_f64, BiPoly, Rational};
use umemura::genfun::{f_and_derivative, integrate_linear, riccati_residual_value};
use umemura::harness::latex_poly;
use umemura::ode::Tolerance;
use umemura::pv::build_rational_solution;
use umemura::special::heunc::DISK_GUARD;
use umemura::special::{heun_candidate, kummer_candidate, Basis, L7Coefficients};
use umemura::umemura::{sigma_recurrence_table, RValue};
use wasm_bindgen::prelude::*;

/// Largest `n` the page may ask for; keeps the exact arithmetic interactive.
pub const MAX_N: usize = 8;

fn parse_r(r: &str) -> Result<Rational, String> {
    parse_rational(r).map_err(|e| e.to_string())
}

fn check_n(n: usize) -> Result<(), String> {
    if n > MAX_N {
        return Err(format!("n must be at most {MAX_N}"));
    }
    Ok(())
}

/// Coefficients in `t` of a polynomial with no `r` left in it.
fn t_coefficients(p: &BiPoly) -> Vec<f64> {
    (0..=p.deg_t().unwrap_or(0)).map(|k| to_f64(&p.coeff(0, k))).collect()
}

fn horner(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * t + a)
}

fn linspace(t0: f64, t1: f64, points: usize) -> Vec<f64> {
    let points = points.max(2);
    (0..points).map(|i| t0 + (t1 - t0) * i as f64 / (points - 1) as f64).collect()
}

/// `sigma_n` for rational or symbolic (`"sym"`) `r`, as LaTeX.
pub fn sigma_text(n: usize, r: &str) -> Result<String, String> {
    check_n(n)?;
    let r: RValue = r.parse().map_err(|e: umemura::error::ParseError| e.to_string())?;
    let table = sigma_recurrence_table(n, &r).map_err(|e| e.to_string())?;
    Ok(latex_poly(&table[n]))
}

/// Rows `(t, y)` of the n-th rational P_V solution; `y` is NaN at poles.
pub fn pv_rows(n: usize, r: &str, t0: f64, t1: f64, points: usize) -> Result<Vec<f64>, String> {
    check_n(n)?;
    let r = RValue::Value(parse_r(r)?);
    let sol = build_rational_solution(n, &r).map_err(|e| e.to_string())?;
    let num = t_coefficients(sol.y.num());
    let den = t_coefficients(sol.y.den());
    let mut out = Vec::with_capacity(2 * points);
    for t in linspace(t0, t1, points) {
        let d = horner(&den, t);
        out.push(t);
        out.push(if d == 0.0 { f64::NAN } else { horner(&num, t) / d });
    }
    Ok(out)
}

/// Rows `(t, Y1, relative residual)` of the closed-form `Y1`: the Kummer
/// form at `r = 0` on `[0.5, 5]`, the first Heun form otherwise on
/// `(0, 0.9 |8r|]` for `r > 0`.
pub fn branch_rows(lambda: f64, r: &str, points: usize) -> Result<Vec<f64>, String> {
    let r = to_f64(&parse_r(r)?);
    let l7 = L7Coefficients::new(lambda, r);
    let grid = if r == 0.0 {
        linspace(0.5, 5.0, points)
    } else if r > 0.0 {
        linspace(0.4 * r, 0.9 * 8.0 * r, points)
    } else {
        return Err("the Heun form is plotted for r > 0 only".into());
    };
    let mut out = Vec::with_capacity(3 * points);
    for t in grid {
        if r != 0.0 && (t / (8.0 * r)).abs() >= DISK_GUARD {
            continue;
        }
        let y = if r == 0.0 {
            kummer_candidate(Basis::First, lambda, t)
        } else {
            heun_candidate(Basis::First, lambda, r, t)
        }
        .map_err(|e| e.to_string())?;
        out.extend([t, y[0], l7.relative_residual(t, y)]);
    }
    Ok(out)
}

/// Rows `(t, Y1, Y2, F, Riccati residual)` along an integrated path of the
/// linear system.
pub fn path_rows(lambda: f64, r: &str, y1: f64, y2: f64, t0: f64, t1: f64) -> Result<Vec<f64>, String> {
    let r = to_f64(&parse_r(r)?);
    let tol = Tolerance::default();
    let path = integrate_linear(t0, t1, [y1, y2], lambda, r, tol).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(5 * path.len());
    for s in &path {
        let (f, res) = match f_and_derivative(s) {
            Ok((f, f_t)) => (f, riccati_residual_value(s.t, lambda, r, f, f_t)),
            Err(_) => (f64::NAN, f64::NAN),
        };
        out.extend([s.t, s.y1, s.y2, f, res]);
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn sigma_latex(n: usize, r: &str) -> Result<String, JsError> {
    sigma_text(n, r).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn pv_curve(n: usize, r: &str, t0: f64, t1: f64, points: usize) -> Result<Vec<f64>, JsError> {
    pv_rows(n, r, t0, t1, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn branch_curve(lambda: f64, r: &str, points: usize) -> Result<Vec<f64>, JsError> {
    branch_rows(lambda, r, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn linear_path(lambda: f64, r: &str, y1: f64, y2: f64, t0: f64, t1: f64) -> Result<Vec<f64>, JsError> {
    path_rows(lambda, r, y1, y2, t0, t1).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_two() {
        assert_eq!(sigma_text(2, "sym").unwrap(), r"\frac{1}{8}t - r + \frac{3}{4}");
        assert!(sigma_text(MAX_N + 1, "0").is_err());
        assert!(sigma_text(2, "x").is_err());
    }

    #[test]
    fn first_rational_solution() {
        // n = 1, r = 0: y(2) = -3, y(4) = -2
        let rows = pv_rows(1, "0", 2.0, 4.0, 3).unwrap();
        assert_eq!(rows.len(), 6);
        assert!((rows[1] + 3.0).abs() < 1e-12);
        assert!((rows[5] + 2.0).abs() < 1e-12);
    }

    #[test]
    fn branch_residuals_small() {
        for (lambda, r) in [(0.7, "0"), (0.5, "1/2"), (1.0, "1")] {
            let rows = branch_rows(lambda, r, 30).unwrap();
            assert!(!rows.is_empty());
            for row in rows.chunks(3) {
                assert!(row[2] < 1e-8, "lambda {lambda}, r {r}: {row:?}");
            }
        }
        assert!(branch_rows(1.0, "-1", 10).is_err());
    }

    #[test]
    fn path_residual_small() {
        let rows = path_rows(1.5, "1/3", 1.0, 0.2, 1.0, 3.0).unwrap();
        assert_eq!(rows.len() % 5, 0);
        assert!(rows.chunks(5).all(|row| row[4].abs() < 1e-8));
        assert!(path_rows(1.0, "0", 1.0, 0.0, -1.0, 1.0).is_err());
    }
}
