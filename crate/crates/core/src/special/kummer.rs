//! Kummer's confluent hypergeometric functions.
//!
//! `M(a, b, x) = sum (a)_n / (b)_n x^n / n!` solves `x w'' + (b - x) w' - a w = 0`;
//! for non-integer `b` the second Frobenius solution is
//! `x^{1-b} M(a - b + 1, 2 - b, x)`.

use super::{sum_power_series, SpecialError};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KummerParams {
    pub a: f64,
    pub b: f64,
    pub x: f64,
}

impl KummerParams {
    /// `x w'' + (b - x) w' - a w` for `w = [w, w', w'']`.
    pub fn ode_residual(&self, w: [f64; 3]) -> f64 {
        self.x * w[2] + (self.b - self.x) * w[1] - self.a * w[0]
    }
}

fn is_nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v.fract() == 0.0
}

/// `[M, M', M'']` summed term by term from one series.
pub fn kummer_m_derivs(a: f64, b: f64, x: f64) -> Result<[f64; 3], SpecialError> {
    if is_nonpositive_integer(b) {
        return Err(SpecialError::InvalidB { b });
    }
    sum_power_series(x, 1.0, |n, c| {
        let nf = n as f64;
        Some(c * (a + nf) / ((b + nf) * (nf + 1.0)))
    })
}

pub fn kummer_m(a: f64, b: f64, x: f64) -> Result<f64, SpecialError> {
    Ok(kummer_m_derivs(a, b, x)?[0])
}

/// `[w, w', w'']` for `w = x^{1-b} M(a - b + 1, 2 - b, x)`, `x > 0`.
pub fn kummer_second_derivs(a: f64, b: f64, x: f64) -> Result<[f64; 3], SpecialError> {
    if b.fract() == 0.0 {
        return Err(SpecialError::IntegerB { b });
    }
    if x <= 0.0 {
        return Err(SpecialError::Domain { x });
    }
    let s = 1.0 - b;
    let [m, m1, m2] = kummer_m_derivs(a - b + 1.0, 2.0 - b, x)?;
    let g = x.powf(s);
    let g1 = s * g / x;
    let g2 = s * (s - 1.0) * g / (x * x);
    Ok([g * m, g1 * m + g * m1, g2 * m + 2.0 * g1 * m1 + g * m2])
}

pub fn kummer_second(a: f64, b: f64, x: f64) -> Result<f64, SpecialError> {
    Ok(kummer_second_derivs(a, b, x)?[0])
}

fn recip_gamma(z: f64) -> f64 {
    if is_nonpositive_integer(z) {
        0.0
    } else {
        1.0 / libm::tgamma(z)
    }
}

/// Tricomi's `U` via the connection formula (non-integer `b` only).
pub fn kummer_u(a: f64, b: f64, x: f64) -> Result<f64, SpecialError> {
    let first = kummer_m(a, b, x)?;
    let second = kummer_second(a, b, x)?;
    let c1 = libm::tgamma(1.0 - b) * recip_gamma(a - b + 1.0);
    let c2 = libm::tgamma(b - 1.0) * recip_gamma(a);
    Ok(c1 * first + c2 * second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn closed_forms() {
        assert_eq!(kummer_m(0.3, 1.7, 0.0).unwrap(), 1.0);
        for &x in &[0.1, 1.0, 3.5] {
            assert!(rel(kummer_m(-1.0, 2.5, x).unwrap(), 1.0 - x / 2.5) < 1e-15);
            assert!(rel(kummer_m(1.0, 1.0, x).unwrap(), f64::exp(x)) < 1e-14);
        }
        assert!(matches!(kummer_m(1.0, -2.0, 1.0), Err(SpecialError::InvalidB { .. })));
        assert!(matches!(kummer_m(1.0, 0.0, 1.0), Err(SpecialError::InvalidB { .. })));
    }

    #[test]
    fn second_solution() {
        let (a, b) = (-1.3, 2.4);
        for i in 0..=28 {
            let x = 0.2 + 0.1 * i as f64;
            let w = kummer_second_derivs(a, b, x).unwrap();
            let scale = (x * w[2]).abs() + ((b - x) * w[1]).abs() + (a * w[0]).abs();
            assert!(KummerParams { a, b, x }.ode_residual(w).abs() < 1e-10 * scale);
        }
        let m = kummer_m_derivs(a, b, 1.0).unwrap();
        let w = kummer_second_derivs(a, b, 1.0).unwrap();
        assert!((m[0] * w[1] - m[1] * w[0]).abs() > 1e-3);
        assert!(matches!(kummer_second(a, 3.0, 1.0), Err(SpecialError::IntegerB { .. })));
    }

    #[test]
    fn tricomi_u_special_case() {
        // U(a, a + 1, x) = x^{-a}
        for &x in &[0.3, 1.0, 2.2] {
            assert!(rel(kummer_u(0.5, 1.5, x).unwrap(), x.powf(-0.5)) < 1e-12);
            assert!(rel(kummer_u(1.3, 2.3, x).unwrap(), x.powf(-1.3)) < 1e-11);
        }
    }

    proptest! {
        #[test]
        fn satisfies_kummer_equation(a in -3.0f64..3.0, b in 0.3f64..5.0, x in 0.1f64..5.0) {
            let w = kummer_m_derivs(a, b, x).unwrap();
            let scale = (x * w[2]).abs() + ((b - x) * w[1]).abs() + (a * w[0]).abs();
            let res = KummerParams { a, b, x }.ode_residual(w);
            prop_assert!(res.abs() <= 1e-10 * scale.max(1e-300));
        }

        #[test]
        fn derivative_shift_identity(a in -3.0f64..3.0, b in 0.3f64..5.0, x in 0.1f64..5.0) {
            let d = kummer_m_derivs(a, b, x).unwrap()[1];
            let shifted = a / b * kummer_m(a + 1.0, b + 1.0, x).unwrap();
            prop_assert!((d - shifted).abs() <= 1e-12 * shifted.abs().max(1e-12));
        }
    }
}
