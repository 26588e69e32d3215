//! The second-order equation for `Y1` obtained by eliminating `Y2` from the
//! linear system: `Y1'' = p(t) Y1' + q(t) Y1`.

use num_traits::ToPrimitive;

use super::frobenius::{Poly1, RationalFn, SecondOrderOde};
use super::SpecialError;
use crate::genfun::{coefficient_matrix, LinearError};
use crate::ode::{integrate, Tolerance, Trajectory};
use crate::scalar::{frac, Scalar};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct L7Coefficients {
    pub lambda: f64,
    pub r: f64,
}

/// `q` term by term:
/// `lambda/(2t^2) + (lambda/(2t) - 3/8)/(t - 8r) + (lambda/t - 3/4)^2/4 - (t/8 - r)/t`.
pub fn q_printed<T: Scalar>(t: T, lambda: T, r: T) -> T {
    let two = frac::<T>(2, 1);
    let inner = lambda.clone() / t.clone() - frac(3, 4);
    lambda.clone() / (two.clone() * t.clone() * t.clone())
        + (lambda / (two * t.clone()) - frac(3, 8)) / (t.clone() - frac::<T>(8, 1) * r.clone())
        + inner.clone() * inner * frac(1, 4)
        - (t.clone() / frac(8, 1) - r) / t
}

/// `(p, q)` from the general elimination formula applied to the entries of
/// the system matrix:
/// `p = a11 + a22 + a12'/a12`,
/// `q = a11' - a11 a12'/a12 + a12 a21 - a11 a22`.
pub fn q_from_elimination<T: Scalar + ToPrimitive>(t: T, lambda: T, r: T) -> Result<(T, T), LinearError> {
    let a = coefficient_matrix(t.clone(), lambda.clone(), r)?.entries;
    if a[0][1].is_zero() {
        return Err(LinearError::SingularPoint { t: t.to_f64().unwrap_or(f64::NAN) });
    }
    let da11 = lambda / (frac::<T>(2, 1) * t.clone() * t);
    let da12 = frac::<T>(1, 8);
    let ratio = da12 / a[0][1].clone();
    let p = a[0][0].clone() + a[1][1].clone() + ratio.clone();
    let q = da11 - a[0][0].clone() * ratio + a[0][1].clone() * a[1][0].clone() - a[0][0].clone() * a[1][1].clone();
    Ok((p, q))
}

/// Collected form of `q` at `r = 0`.
pub fn q_r0_simplified<T: Scalar>(t: T, lambda: T) -> T {
    (lambda.clone() * lambda.clone() + frac::<T>(4, 1) * lambda.clone()) / (frac::<T>(4, 1) * t.clone() * t.clone())
        - frac::<T>(3, 8) * (T::one() + lambda) / t
        + frac(1, 64)
}

impl L7Coefficients {
    pub fn new(lambda: f64, r: f64) -> Self {
        Self { lambda, r }
    }

    pub fn p(&self, t: f64) -> f64 {
        1.0 / (t - 8.0 * self.r)
    }

    pub fn q(&self, t: f64) -> f64 {
        q_printed(t, self.lambda, self.r)
    }

    /// `q t^2 (t - 8r)` as a polynomial in `t`.
    fn q_numerator(&self) -> Poly1 {
        let (lam, r) = (self.lambda, self.r);
        let shifted = Poly1::linear_root(8.0 * r);
        let t = Poly1::new(vec![0.0, 1.0]);
        let inner = Poly1::new(vec![lam, -0.75]);
        let s = Poly1::new(vec![-r, 0.125]);
        shifted
            .scale(lam / 2.0)
            .add(&Poly1::new(vec![0.0, lam / 2.0, -0.375]))
            .add(&inner.mul(&inner).mul(&shifted).scale(0.25))
            .add(&t.mul(&s).mul(&shifted).scale(-1.0))
    }

    /// As `y'' + P y' + Q y = 0` with polynomial numerators and denominators.
    pub fn to_ode(&self) -> SecondOrderOde {
        let shifted = Poly1::linear_root(8.0 * self.r);
        let den_q = Poly1::new(vec![0.0, 0.0, 1.0]).mul(&shifted);
        SecondOrderOde::new(
            RationalFn::new(Poly1::constant(-1.0), shifted),
            RationalFn::new(self.q_numerator().scale(-1.0), den_q),
        )
    }

    /// `|Y'' - p Y' - q Y|` over the sum of the magnitudes of its terms.
    pub fn relative_residual(&self, t: f64, y: [f64; 3]) -> f64 {
        let (a, b) = (self.p(t) * y[1], self.q(t) * y[0]);
        let scale = y[2].abs() + a.abs() + b.abs();
        let res = (y[2] - a - b).abs();
        if scale == 0.0 {
            res
        } else {
            res / scale
        }
    }

    /// Integrates `(Y1, Y1')` from `t0` to `t1`.
    pub fn integrate(&self, t0: f64, y0: [f64; 2], t1: f64, tol: Tolerance) -> Result<Trajectory<2>, SpecialError> {
        let rhs = |t: f64, y: &[f64; 2]| [y[1], self.p(t) * y[1] + self.q(t) * y[0]];
        Ok(integrate(rhs, t0, y0, t1, tol)?)
    }

    /// Two solutions on one step sequence, state `[y, y', u, u']`.
    pub fn integrate_pair(
        &self,
        t0: f64,
        first: [f64; 2],
        second: [f64; 2],
        t1: f64,
        tol: Tolerance,
    ) -> Result<Trajectory<4>, SpecialError> {
        let rhs = |t: f64, y: &[f64; 4]| {
            let (p, q) = (self.p(t), self.q(t));
            [y[1], p * y[1] + q * y[0], y[3], p * y[3] + q * y[2]]
        };
        Ok(integrate(rhs, t0, [first[0], first[1], second[0], second[1]], t1, tol)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Rational};
    use crate::special::{frobenius_exponents, FrobeniusSeries};
    use proptest::prelude::*;

    #[test]
    fn printed_value_at_sample_point() {
        assert_eq!(q_printed(rat(2, 1), rat(1, 1), rat(1, 3)), rat(71, 192));
        assert!((L7Coefficients::new(1.0, 1.0 / 3.0).q(2.0) - 71.0 / 192.0).abs() < 1e-15);
    }

    #[test]
    fn polynomial_form_matches() {
        for &(lam, r) in &[(0.5, 1.0 / 3.0), (1.0, 0.0), (2.5, -0.5)] {
            let l7 = L7Coefficients::new(lam, r);
            let ode = l7.to_ode();
            for &t in &[0.3, 1.1, 4.0] {
                assert!((ode.p.eval(t) + l7.p(t)).abs() < 1e-13);
                assert!((ode.q.eval(t) + l7.q(t)).abs() < 1e-12 * l7.q(t).abs().max(1.0));
            }
        }
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..12).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn elimination_reproduces_coefficients(t in small_rational(), lam in small_rational(), r in small_rational()) {
            prop_assume!(t != rat(0, 1) && t != rat(8, 1) * r.clone());
            let (p, q) = q_from_elimination(t.clone(), lam.clone(), r.clone()).unwrap();
            prop_assert_eq!(p, rat(1, 1) / (t.clone() - rat(8, 1) * r.clone()));
            prop_assert_eq!(q, q_printed(t, lam, r));
        }

        #[test]
        fn r0_collection(t in small_rational(), lam in small_rational()) {
            prop_assume!(t != rat(0, 1));
            prop_assert_eq!(q_r0_simplified(t.clone(), lam.clone()), q_printed(t, lam, rat(0, 1)));
        }
    }

    #[test]
    fn wronskian_tracks_singular_factor() {
        let tol = Tolerance { rtol: 1e-12, atol: 1e-14 };
        for &(lam, r) in &[(0.5, -0.5), (1.5, 2.0), (1.0, 1.0 / 3.0)] {
            let l7 = L7Coefficients::new(lam, r);
            let (t0, t1) = if r == 1.0 / 3.0 { (1.0, 2.5) } else { (1.0, 3.0) };
            let traj = l7.integrate_pair(t0, [1.0, 0.0], [0.0, 1.0], t1, tol).unwrap();
            let ratios: Vec<f64> =
                traj.ts.iter().zip(&traj.ys).map(|(&t, y)| (y[0] * y[3] - y[1] * y[2]) / (t - 8.0 * r)).collect();
            for c in &ratios {
                assert!((c - ratios[0]).abs() < 1e-8 * ratios[0].abs(), "lambda {lam} r {r}");
            }
        }
    }

    #[test]
    fn local_behaviour_matches_exponents() {
        let tol = Tolerance { rtol: 1e-12, atol: 1e-300 };
        for &(lam, r) in &[(0.5, 1.0 / 3.0), (1.5, 0.0), (0.7, -0.5)] {
            let l7 = L7Coefficients::new(lam, r);
            let ode = l7.to_ode();
            let exps = frobenius_exponents(&ode, 0.0).unwrap();
            for e in exps.iter().map(|c| c.re) {
                let series = FrobeniusSeries::new(&ode, 0.0, e, 60).unwrap();
                let seed = series.eval(0.02);
                let traj = l7.integrate(0.02, [seed[0], seed[1]], 1e-3, tol).unwrap();
                let y_end = traj.last().1[0];
                let y_mid = traj.dense(2e-3).unwrap()[0];
                let slope = (y_end / y_mid).ln() / (0.5f64).ln();
                assert!((slope - e).abs() < 5e-3 * e.abs().max(1.0), "lambda {lam} r {r}: slope {slope} vs {e}");
            }
        }
    }
}
