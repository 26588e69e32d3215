//! Local analysis of `y'' + P(t) y' + Q(t) y = 0` with rational `P`, `Q`:
//! indicial exponents and Frobenius series at a regular singular point.

use num_complex::Complex64;

use super::SpecialError;
use crate::ode::{integrate, Tolerance, Trajectory};

/// Relative size below which a shifted coefficient is treated as zero.
const STRIP_TOL: f64 = 1e-12;

/// Real polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly1(pub Vec<f64>);

impl Poly1 {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self(coeffs)
    }

    pub fn constant(c: f64) -> Self {
        Self(vec![c])
    }

    /// `t - a`
    pub fn linear_root(a: f64) -> Self {
        Self(vec![-a, 1.0])
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self(self.0.iter().enumerate().skip(1).map(|(k, &c)| k as f64 * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self((0..n).map(|k| self.0.get(k).unwrap_or(&0.0) + other.0.get(k).unwrap_or(&0.0)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return Self::default();
        }
        let mut out = vec![0.0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self(out)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    /// Coefficients of `p(t0 + s)` in powers of `s`.
    pub fn taylor_shift(&self, t0: f64) -> Self {
        let mut c = self.0.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                c[j] += t0 * c[j + 1];
            }
        }
        Self(c)
    }

    fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Index of the first coefficient that is not negligible, `None` for the
    /// zero polynomial.
    fn valuation(&self) -> Option<usize> {
        let m = self.max_abs();
        if m == 0.0 {
            return None;
        }
        self.0.iter().position(|c| c.abs() > STRIP_TOL * m)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalFn {
    pub num: Poly1,
    pub den: Poly1,
}

impl RationalFn {
    pub fn new(num: Poly1, den: Poly1) -> Self {
        Self { num, den }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.num.eval(t) / self.den.eval(t)
    }

    /// Order of vanishing at `t0` (negative for a pole) and the leading
    /// coefficient there. `None` when the function is identically zero.
    fn local_order(&self, t0: f64) -> Option<(i64, f64, Poly1, Poly1)> {
        let n = self.num.taylor_shift(t0);
        let d = self.den.taylor_shift(t0);
        let vn = n.valuation()?;
        let vd = d.valuation().expect("zero denominator");
        let lead = n.0[vn] / d.0[vd];
        Some((vn as i64 - vd as i64, lead, Poly1(n.0[vn..].to_vec()), Poly1(d.0[vd..].to_vec())))
    }
}

/// Power series of `num / den` with `den[0] != 0`, `terms` coefficients.
fn series_quotient(num: &Poly1, den: &Poly1, terms: usize) -> Vec<f64> {
    let mut out = vec![0.0; terms];
    for k in 0..terms {
        let mut acc = num.0.get(k).copied().unwrap_or(0.0);
        for j in 1..=k.min(den.0.len().saturating_sub(1)) {
            acc -= den.0[j] * out[k - j];
        }
        out[k] = acc / den.0[0];
    }
    out
}

/// `y'' + p y' + q y = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SecondOrderOde {
    pub p: RationalFn,
    pub q: RationalFn,
}

impl SecondOrderOde {
    pub fn new(p: RationalFn, q: RationalFn) -> Self {
        Self { p, q }
    }

    pub fn residual(&self, t: f64, y: [f64; 3]) -> f64 {
        y[2] + self.p.eval(t) * y[1] + self.q.eval(t) * y[0]
    }

    /// `y[2]` scaled by the size of the individual terms.
    pub fn relative_residual(&self, t: f64, y: [f64; 3]) -> f64 {
        let (a, b) = (self.p.eval(t) * y[1], self.q.eval(t) * y[0]);
        let scale = y[2].abs() + a.abs() + b.abs();
        let res = (y[2] + a + b).abs();
        if scale == 0.0 {
            res
        } else {
            res / scale
        }
    }

    /// Integrates `(y, y')` from `t0` to `t1`.
    pub fn integrate(&self, t0: f64, y0: [f64; 2], t1: f64, tol: Tolerance) -> Result<Trajectory<2>, SpecialError> {
        let rhs = |t: f64, y: &[f64; 2]| [y[1], -self.p.eval(t) * y[1] - self.q.eval(t) * y[0]];
        Ok(integrate(rhs, t0, y0, t1, tol)?)
    }

    /// `(p0, q0)` with `p ~ p0 / s`, `q ~ q0 / s^2` at `t0`, or `None` at an
    /// ordinary point.
    fn singular_data(&self, t0: f64) -> Result<Option<(f64, f64)>, SpecialError> {
        let p = self.p.local_order(t0);
        let q = self.q.local_order(t0);
        let po = p.as_ref().map_or(0, |x| x.0);
        let qo = q.as_ref().map_or(0, |x| x.0);
        if po < -1 || qo < -2 {
            return Err(SpecialError::IrregularPoint { t: t0 });
        }
        if po >= 0 && qo >= 0 {
            return Ok(None);
        }
        let p0 = p.filter(|x| x.0 == -1).map_or(0.0, |x| x.1);
        let q0 = q.filter(|x| x.0 == -2).map_or(0.0, |x| x.1);
        Ok(Some((p0, q0)))
    }
}

fn indicial_roots(p0: f64, q0: f64) -> [Complex64; 2] {
    // s^2 + (p0 - 1) s + q0 = 0
    let b = p0 - 1.0;
    let disc = Complex64::new(b * b - 4.0 * q0, 0.0).sqrt();
    let mut roots = [(-b + disc) / 2.0, (-b - disc) / 2.0];
    if roots[0].re < roots[1].re {
        roots.swap(0, 1);
    }
    roots
}

/// Roots of the indicial equation at `t0`, larger real part first. At an
/// ordinary point these are `{1, 0}`.
pub fn frobenius_exponents(ode: &SecondOrderOde, t0: f64) -> Result<[Complex64; 2], SpecialError> {
    let (p0, q0) = ode.singular_data(t0)?.unwrap_or((0.0, 0.0));
    Ok(indicial_roots(p0, q0))
}

/// `sum c_n (t - t0)^{n + rho}` with `c_0 = 1`, for real `rho`.
#[derive(Clone, Debug)]
pub struct FrobeniusSeries {
    pub t0: f64,
    pub exponent: f64,
    pub coeffs: Vec<f64>,
}

impl FrobeniusSeries {
    pub fn new(ode: &SecondOrderOde, t0: f64, exponent: f64, terms: usize) -> Result<Self, SpecialError> {
        ode.singular_data(t0)?;
        // s P = sum pk s^k, s^2 Q = sum qk s^k
        let expand = |f: &RationalFn, shift: i64| -> Vec<f64> {
            match f.local_order(t0) {
                None => vec![0.0; terms],
                Some((ord, _, n, d)) => {
                    let lead = ord + shift;
                    let body = series_quotient(&n, &d, terms);
                    let mut out = vec![0.0; terms];
                    for (k, c) in body.into_iter().enumerate() {
                        let idx = k as i64 + lead;
                        if idx >= 0 && (idx as usize) < terms {
                            out[idx as usize] = c;
                        }
                    }
                    out
                }
            }
        };
        let pk = expand(&ode.p, 1);
        let qk = expand(&ode.q, 2);
        let indicial = |x: f64| x * (x - 1.0) + pk[0] * x + qk[0];
        let scale = 1.0 + exponent.abs() * exponent.abs() + pk[0].abs() + qk[0].abs();
        if indicial(exponent).abs() > 1e-9 * scale {
            return Err(SpecialError::Resonant { n: 0 });
        }
        let mut coeffs = vec![1.0];
        for n in 1..terms {
            let f = indicial(n as f64 + exponent);
            if f.abs() < 1e-9 * (scale + (n * n) as f64) {
                return Err(SpecialError::Resonant { n });
            }
            let mut acc = 0.0;
            for k in 1..=n {
                acc += coeffs[n - k] * ((n - k) as f64 + exponent) * pk[k] + coeffs[n - k] * qk[k];
            }
            coeffs.push(-acc / f);
        }
        Ok(Self { t0, exponent, coeffs })
    }

    /// `[y, y', y'']` for `t > t0`.
    pub fn eval(&self, t: f64) -> [f64; 3] {
        let s = t - self.t0;
        let mut out = [0.0; 3];
        for (n, &c) in self.coeffs.iter().enumerate() {
            let e = n as f64 + self.exponent;
            let sp = s.powf(e);
            out[0] += c * sp;
            out[1] += c * e * sp / s;
            out[2] += c * e * (e - 1.0) * sp / (s * s);
        }
        out
    }
}
