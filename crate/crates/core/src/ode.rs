//! Dormand–Prince 5(4) integrator with step-size control and cubic Hermite
//! dense output.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum OdeError {
    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },
    #[error("step budget exhausted at t = {t}")]
    TooManySteps { t: f64 },
    #[error("non-finite state at t = {t}")]
    NonFinite { t: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rtol: f64,
    pub atol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { rtol: 1e-10, atol: 1e-12 }
    }
}

/// Accepted steps of an integration, with the derivative at each node.
#[derive(Debug, Clone)]
pub struct Trajectory<const N: usize> {
    pub ts: Vec<f64>,
    pub ys: Vec<[f64; N]>,
    pub dys: Vec<[f64; N]>,
}

impl<const N: usize> Trajectory<N> {
    pub fn last(&self) -> (f64, [f64; N]) {
        (*self.ts.last().unwrap(), *self.ys.last().unwrap())
    }

    /// Cubic Hermite interpolation between accepted nodes. `t` must lie in
    /// the integrated range.
    pub fn dense(&self, t: f64) -> Option<[f64; N]> {
        let forward = self.ts.last()? >= self.ts.first()?;
        let idx =
            self.ts.windows(2).position(|w| if forward { w[0] <= t && t <= w[1] } else { w[1] <= t && t <= w[0] });
        let Some(i) = idx else {
            return (self.ts.len() == 1 && self.ts[0] == t).then(|| self.ys[0]);
        };
        let (t0, t1) = (self.ts[i], self.ts[i + 1]);
        let h = t1 - t0;
        let s = (t - t0) / h;
        let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        let mut out = [0.0; N];
        for (k, o) in out.iter_mut().enumerate() {
            *o =
                h00 * self.ys[i][k] + h10 * h * self.dys[i][k] + h01 * self.ys[i + 1][k] + h11 * h * self.dys[i + 1][k];
        }
        Some(out)
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// fifth-order weights are the last row of A; these are the embedded error weights
const E: [f64; 7] =
    [71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0, -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0];

const MAX_STEPS: usize = 200_000;

/// Integrates `y' = f(t, y)` from `t0` to `t1` (either direction).
pub fn integrate<const N: usize, F>(
    f: F,
    t0: f64,
    y0: [f64; N],
    t1: f64,
    tol: Tolerance,
) -> Result<Trajectory<N>, OdeError>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let dir = if t1 >= t0 { 1.0 } else { -1.0 };
    let mut t = t0;
    let mut y = y0;
    let mut k0 = f(t, &y);
    let mut traj = Trajectory { ts: vec![t], ys: vec![y], dys: vec![k0] };
    if t0 == t1 {
        return Ok(traj);
    }
    let span = (t1 - t0).abs();
    let mut h = (span / 100.0).min(0.05 * (1.0 + t0.abs()));
    for _ in 0..MAX_STEPS {
        if (t1 - t) * dir <= 0.0 {
            return Ok(traj);
        }
        let last = (t + dir * h - t1) * dir >= 0.0;
        if last {
            h = (t1 - t).abs();
        }
        if h < 1e-14 * (1.0 + t.abs()) {
            return Err(OdeError::StepUnderflow { t });
        }
        let hs = dir * h;
        let mut k = [[0.0; N]; 7];
        k[0] = k0;
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                let a = A[s][j];
                if a != 0.0 {
                    for i in 0..N {
                        ys[i] += hs * a * kj[i];
                    }
                }
            }
            k[s] = f(t + C[s] * hs, &ys);
        }
        let mut y_new = y;
        for (j, kj) in k.iter().enumerate().take(6) {
            for i in 0..N {
                y_new[i] += hs * A[6][j] * kj[i];
            }
        }
        let mut err = 0.0;
        for i in 0..N {
            let e: f64 = (0..7).map(|j| E[j] * k[j][i]).sum::<f64>() * hs;
            let scale = tol.atol + tol.rtol * y[i].abs().max(y_new[i].abs());
            err += (e / scale).powi(2);
        }
        let err = (err / N as f64).sqrt();
        if !err.is_finite() || y_new.iter().any(|v| !v.is_finite()) {
            h *= 0.25;
            if y.iter().any(|v| !v.is_finite()) {
                return Err(OdeError::NonFinite { t });
            }
            continue;
        }
        if err <= 1.0 {
            t = if last { t1 } else { t + hs };
            y = y_new;
            k0 = k[6];
            traj.ts.push(t);
            traj.ys.push(y);
            traj.dys.push(k0);
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= if err <= 1.0 { factor } else { factor.min(1.0) };
    }
    Err(OdeError::TooManySteps { t })
}
