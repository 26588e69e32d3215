//! Confluent Heun function as a power series about `z = 0`, in the
//! convention
//! `y'' + (alpha + (beta+1)/z + (gamma+1)/(z-1)) y' + (mu/z + nu/(z-1)) y = 0`.

use super::frobenius::{Poly1, RationalFn, SecondOrderOde};
use super::{sum_power_series, SpecialError};
use crate::scalar::{frac, Scalar};

/// Series evaluation is refused at or beyond this radius.
pub const DISK_GUARD: f64 = 0.95;

#[derive(Clone, Debug, PartialEq)]
pub struct HeunCParams<T = f64> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
    pub delta: T,
    pub eta: T,
    pub z: T,
}

impl<T: Scalar> HeunCParams<T> {
    pub fn mu(&self) -> T {
        let (a, b, g) = (self.alpha.clone(), self.beta.clone(), self.gamma.clone());
        (a.clone() - b.clone() - g.clone() + a * b.clone() - b * g) * frac(1, 2) - self.eta.clone()
    }

    pub fn nu(&self) -> T {
        let (a, b, g) = (self.alpha.clone(), self.beta.clone(), self.gamma.clone());
        (a.clone() + b.clone() + g.clone() + a * g.clone() + b * g) * frac(1, 2) + self.delta.clone() + self.eta.clone()
    }

    /// Same parameters at another point.
    pub fn at(&self, z: T) -> Self {
        Self { z, ..self.clone() }
    }
}

/// First `terms` series coefficients `v_n`, `v_0 = 1`, from
/// `(n+1)(n+beta+1) v_{n+1} = (n(n+beta+gamma+1-alpha) - mu) v_n + (alpha(n-1) + mu + nu) v_{n-1}`.
pub fn heunc_coefficients<T: Scalar>(p: &HeunCParams<T>, terms: usize) -> Result<Vec<T>, SpecialError> {
    let (mu, nu) = (p.mu(), p.nu());
    let mut v: Vec<T> = Vec::with_capacity(terms);
    if terms == 0 {
        return Ok(v);
    }
    v.push(T::one());
    for n in 0..terms.saturating_sub(1) {
        let nt = T::from_usize(n).expect("index fits");
        let lead = (nt.clone() + T::one()) * (nt.clone() + p.beta.clone() + T::one());
        if lead.is_zero() {
            return Err(SpecialError::DegenerateBeta { n });
        }
        let mid = (nt.clone() * (nt.clone() + p.beta.clone() + p.gamma.clone() + T::one() - p.alpha.clone())
            - mu.clone())
            * v[n].clone();
        let low = if n == 0 {
            T::zero()
        } else {
            (p.alpha.clone() * (nt - T::one()) + mu.clone() + nu.clone()) * v[n - 1].clone()
        };
        v.push((mid + low) / lead);
    }
    Ok(v)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl SeriesValue {
    pub fn as_array(&self) -> [f64; 3] {
        [self.value, self.d1, self.d2]
    }
}

/// Value and first two derivatives of the series at `p.z`.
pub fn heunc_series(p: &HeunCParams) -> Result<SeriesValue, SpecialError> {
    if p.z.abs() >= DISK_GUARD {
        return Err(SpecialError::OutsideDisk { z: p.z.abs() });
    }
    let b1 = p.beta + 1.0;
    if b1 <= 0.0 && b1.fract() == 0.0 {
        return Err(SpecialError::DegenerateBeta { n: (-b1) as usize });
    }
    let (mu, nu) = (p.mu(), p.nu());
    let mut prev = 0.0;
    let [value, d1, d2] = sum_power_series(p.z, 1.0, |n, c| {
        let nf = n as f64;
        let next = ((nf * (nf + p.beta + p.gamma + 1.0 - p.alpha) - mu) * c + (p.alpha * (nf - 1.0) + mu + nu) * prev)
            / ((nf + 1.0) * (nf + b1));
        prev = c;
        Some(next)
    })?;
    Ok(SeriesValue { value, d1, d2 })
}

/// The defining equation as rational coefficients over `z (z - 1)`.
pub fn heunc_ode(p: &HeunCParams) -> SecondOrderOde {
    let den = Poly1::new(vec![0.0, -1.0, 1.0]);
    let pn = Poly1::new(vec![-(p.beta + 1.0), p.beta + p.gamma + 2.0 - p.alpha, p.alpha]);
    let (mu, nu) = (p.mu(), p.nu());
    let qn = Poly1::new(vec![-mu, mu + nu]);
    SecondOrderOde::new(RationalFn::new(pn, den.clone()), RationalFn::new(qn, den))
}

/// Relative residual of the defining equation at `p.z`.
pub fn heunc_ode_residual(p: &HeunCParams, y: &SeriesValue) -> f64 {
    heunc_ode(p).relative_residual(p.z, y.as_array())
}
