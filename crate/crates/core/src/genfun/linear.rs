use thiserror::Error;

use crate::ode::{integrate, OdeError, Tolerance};
use crate::scalar::{frac, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum LinearError {
    #[error("singular point at t = {t}")]
    SingularPoint { t: f64 },
    #[error("Y1 vanishes at t = {t}")]
    ZeroY1 { t: f64 },
    #[error(transparent)]
    Ode(#[from] OdeError),
}

/// Coefficient matrix `A(t, lambda, r)` of `Y' = A Y`:
///
/// ```text
/// [ -h       t/8 - r ]      h = (lambda - 3t/4) / (2t)
/// [ -1/t     h       ]
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientMatrix<T> {
    pub entries: [[T; 2]; 2],
}

impl<T: Scalar> CoefficientMatrix<T> {
    pub fn trace(&self) -> T {
        self.entries[0][0].clone() + self.entries[1][1].clone()
    }

    pub fn apply(&self, y: &[T; 2]) -> [T; 2] {
        let e = &self.entries;
        [
            e[0][0].clone() * y[0].clone() + e[0][1].clone() * y[1].clone(),
            e[1][0].clone() * y[0].clone() + e[1][1].clone() * y[1].clone(),
        ]
    }
}

pub fn coefficient_matrix<T: Scalar>(t: T, lambda: T, r: T) -> Result<CoefficientMatrix<T>, LinearError> {
    if t.is_zero() {
        return Err(LinearError::SingularPoint { t: 0.0 });
    }
    let h = (lambda - frac::<T>(3, 4) * t.clone()) / (frac::<T>(2, 1) * t.clone());
    let a12 = t.clone() / frac(8, 1) - r;
    let a21 = T::zero() - T::one() / t;
    Ok(CoefficientMatrix { entries: [[T::zero() - h.clone(), a12], [a21, h]] })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearState {
    pub t: f64,
    pub y1: f64,
    pub y2: f64,
    pub lambda: f64,
    pub r: f64,
}

impl LinearState {
    /// `(Y1', Y2')` from the system.
    pub fn derivative(&self) -> Result<[f64; 2], LinearError> {
        Ok(coefficient_matrix(self.t, self.lambda, self.r)?.apply(&[self.y1, self.y2]))
    }
}

/// Solves `Y' = A Y` from `t0` to `t1`; the interval must not contain `t = 0`.
/// Returns the state at every accepted step.
pub fn integrate_linear(
    t0: f64,
    t1: f64,
    y0: [f64; 2],
    lambda: f64,
    r: f64,
    tol: Tolerance,
) -> Result<Vec<LinearState>, LinearError> {
    if t0.min(t1) <= 0.0 && t0.max(t1) >= 0.0 {
        return Err(LinearError::SingularPoint { t: 0.0 });
    }
    let rhs = |t: f64, y: &[f64; 2]| {
        let h = (lambda - 0.75 * t) / (2.0 * t);
        [-h * y[0] + (t / 8.0 - r) * y[1], -y[0] / t + h * y[1]]
    };
    let traj = integrate(rhs, t0, y0, t1, tol)?;
    Ok(traj.ts.iter().zip(&traj.ys).map(|(&t, y)| LinearState { t, y1: y[0], y2: y[1], lambda, r }).collect())
}

/// Two solutions carried on one step sequence, so their Wronskian can be
/// formed node by node.
pub fn integrate_linear_pair(
    t0: f64,
    t1: f64,
    first: [f64; 2],
    second: [f64; 2],
    lambda: f64,
    r: f64,
    tol: Tolerance,
) -> Result<Vec<(LinearState, LinearState)>, LinearError> {
    if t0.min(t1) <= 0.0 && t0.max(t1) >= 0.0 {
        return Err(LinearError::SingularPoint { t: 0.0 });
    }
    let rhs = |t: f64, y: &[f64; 4]| {
        let h = (lambda - 0.75 * t) / (2.0 * t);
        let s = t / 8.0 - r;
        [-h * y[0] + s * y[1], -y[0] / t + h * y[1], -h * y[2] + s * y[3], -y[2] / t + h * y[3]]
    };
    let y0 = [first[0], first[1], second[0], second[1]];
    let traj = integrate(rhs, t0, y0, t1, tol)?;
    Ok(traj
        .ts
        .iter()
        .zip(&traj.ys)
        .map(|(&t, y)| {
            (LinearState { t, y1: y[0], y2: y[1], lambda, r }, LinearState { t, y1: y[2], y2: y[3], lambda, r })
        })
        .collect())
}

pub fn wronskian(a: &LinearState, b: &LinearState) -> f64 {
    a.y1 * b.y2 - a.y2 * b.y1
}

/// `F = lambda / (t/8 - r) * (d/dt log Y1 + (lambda - 3t/4) / (2t))`, with
/// `Y1'` taken from the system.
pub fn f_from_y(state: &LinearState) -> Result<f64, LinearError> {
    let LinearState { t, y1, lambda, r, .. } = *state;
    if y1 == 0.0 {
        return Err(LinearError::ZeroY1 { t });
    }
    let s = t / 8.0 - r;
    if s == 0.0 {
        return Err(LinearError::SingularPoint { t });
    }
    let [dy1, _] = state.derivative()?;
    Ok(lambda / s * (dy1 / y1 + (lambda - 0.75 * t) / (2.0 * t)))
}

/// `t lambda F_t + t(t/8 - r) F^2 - (lambda^2 - 3/4 t lambda) F + lambda^2`.
pub fn riccati_residual_value(t: f64, lambda: f64, r: f64, f: f64, f_t: f64) -> f64 {
    t * lambda * f_t + t * (t / 8.0 - r) * f * f - (lambda * lambda - 0.75 * t * lambda) * f + lambda * lambda
}

/// Maximum absolute Riccati residual along a path, with `F = lambda Y2/Y1`
/// and `F_t` in closed form from the system.
pub fn riccati_numeric_residual(path: &[LinearState]) -> Result<f64, LinearError> {
    let mut worst: f64 = 0.0;
    for state in path {
        let (f, f_t) = f_and_derivative(state)?;
        worst = worst.max(riccati_residual_value(state.t, state.lambda, state.r, f, f_t).abs());
    }
    Ok(worst)
}

/// `(F, F_t)` for `F = lambda Y2 / Y1`.
pub fn f_and_derivative(state: &LinearState) -> Result<(f64, f64), LinearError> {
    let LinearState { t, y1, y2, lambda, .. } = *state;
    if y1 == 0.0 {
        return Err(LinearError::ZeroY1 { t });
    }
    let [d1, d2] = state.derivative()?;
    Ok((lambda * y2 / y1, lambda * (d2 * y1 - y2 * d1) / (y1 * y1)))
}
