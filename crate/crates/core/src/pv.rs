//! Rational solutions of Painlevé V built from shifted Umemura polynomials,
//! with an exact residual test.

use thiserror::Error;

use crate::arith::{rat, BiPoly, RatFunc, Rational};
use crate::error::UmemuraError;
use crate::umemura::{sigma_recurrence_table, RValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PvError {
    #[error("the cleared denominator of the residual vanishes identically")]
    DegenerateDenominator,
    #[error(transparent)]
    Umemura(#[from] UmemuraError),
}

/// `(alpha, beta, gamma, delta)`, polynomial in `r` when `r` is symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PVParams {
    pub alpha: BiPoly,
    pub beta: BiPoly,
    pub gamma: BiPoly,
    pub delta: BiPoly,
}

/// `(2r^2, -2(r - n/2)^2, n, -1/2)`.
pub fn pv_parameters(n: usize, r: &RValue) -> PVParams {
    let r = r.as_poly();
    let shifted = &r - &BiPoly::constant(rat(n as i64, 2));
    PVParams {
        alpha: (&r * &r).scalar_mul(&rat(2, 1)),
        beta: (&shifted * &shifted).scalar_mul(&rat(-2, 1)),
        gamma: BiPoly::from(n as i64),
        delta: BiPoly::constant(rat(-1, 2)),
    }
}

#[derive(Clone, Debug)]
pub struct RationalSolution {
    pub n: usize,
    pub r: RValue,
    pub y: RatFunc,
}

/// `y = -sigma_n(t, r+1/2) sigma_{n+1}(t, r+1/4) / (sigma_n(t, r) sigma_{n+1}(t, r+3/4))`,
/// numerator and denominator kept as unreduced products.
pub fn build_rational_solution(n: usize, r: &RValue) -> Result<RationalSolution, PvError> {
    let shifted = |c: Rational| -> Result<Vec<BiPoly>, UmemuraError> {
        match r {
            RValue::Symbolic => {
                let table = sigma_recurrence_table(n + 1, r)?;
                Ok(table.iter().map(|s| s.shift_r(&c)).collect())
            }
            RValue::Value(_) => sigma_recurrence_table(n + 1, &r.shifted(&c)),
        }
    };
    let base = shifted(rat(0, 1))?;
    let quarter = shifted(rat(1, 4))?;
    let half = shifted(rat(1, 2))?;
    let three_quarters = shifted(rat(3, 4))?;
    let num = -(&half[n] * &quarter[n + 1]);
    let den = &base[n] * &three_quarters[n + 1];
    let y = RatFunc::new(num, den).map_err(|_| PvError::DegenerateDenominator)?;
    Ok(RationalSolution { n, r: r.clone(), y })
}

/// Numerator of `y'' - RHS(P_V)` after clearing by `2 t^2 y (y-1) Q^5`, where
/// `y = P/Q`. Zero exactly when `y` solves P_V with `params`.
pub fn pv_residual(sol: &RationalSolution, params: &PVParams) -> Result<BiPoly, PvError> {
    let p = sol.y.num();
    let q = sol.y.den();
    let p_minus_q = p - q;
    if p.is_zero() || p_minus_q.is_zero() {
        return Err(PvError::DegenerateDenominator);
    }
    let t = BiPoly::t();
    let t2 = &t * &t;
    let (p1, q1) = (p.differentiate_t(), q.differentiate_t());
    let (p2, q2) = (p1.differentiate_t(), q1.differentiate_t());
    // y' = w / q^2, y'' = v / q^3
    let w = &(&p1 * q) - &(p * &q1);
    let v = &(&(&(&p2 * q) - &(p * &q2)) * q) - &(&q1 * &w).scalar_mul(&rat(2, 1));
    let pp = p * p;
    let qq = q * q;
    let ww = &w * &w;
    let two = rat(2, 1);

    let mut res = &(&t2 * &(p * &p_minus_q)) * &v;
    res = res.scalar_mul(&two);
    res -= &(&(&t2 * &p_minus_q) * &ww);
    res -= &(&(&t2 * p) * &ww).scalar_mul(&two);
    res += &(&(&(&t * p) * &p_minus_q) * &(&w * q)).scalar_mul(&two);
    let cube = &(&p_minus_q * &p_minus_q) * &p_minus_q;
    res -= &(&cube * &(&(&params.alpha * &pp) + &(&params.beta * &qq))).scalar_mul(&two);
    res -= &(&(&(&params.gamma * &t) * &(&pp * &p_minus_q)) * &qq).scalar_mul(&two);
    res -= &(&(&(&params.delta * &t2) * &(&pp * &(p + q))) * &qq).scalar_mul(&two);
    Ok(res)
}

/// Value of a sampled solution, or a pole of the stored denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SampleValue {
    Value(Rational),
    PoleAtSample,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub t: Rational,
    pub y: SampleValue,
}

/// Exact values of `y(t)` at a fixed rational `r` on a grid of `t`.
pub fn sample_solution(n: usize, r: &Rational, grid: &[Rational]) -> Result<Vec<Sample>, PvError> {
    let sol = build_rational_solution(n, &RValue::Value(r.clone()))?;
    Ok(grid
        .iter()
        .map(|t| Sample {
            t: t.clone(),
            y: match sol.y.eval(t, r) {
                Some(v) => SampleValue::Value(v),
                None => SampleValue::PoleAtSample,
            },
        })
        .collect())
}
