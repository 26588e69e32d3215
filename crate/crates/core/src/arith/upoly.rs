// Dense univariate helpers over Rational. A row is the coefficient vector of
// a polynomial in r (index = degree), trimmed of trailing zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;
use crate::error::DivisionError;

pub(crate) fn trim(row: &mut Vec<Rational>) {
    while row.last().is_some_and(Zero::is_zero) {
        row.pop();
    }
}

/// Integer numerators over a common denominator: `row = ints / den`.
pub(crate) fn to_integer_row(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let mut den = BigInt::one();
    for c in row {
        if !c.denom().is_one() {
            den = den.lcm(c.denom());
        }
    }
    let ints = row.iter().map(|c| if c.is_zero() { BigInt::zero() } else { c.numer() * (&den / c.denom()) }).collect();
    (ints, den)
}

pub(crate) fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `acc -= ints / den`, coefficientwise.
pub(crate) fn sub_scaled_ints(acc: &mut Vec<Rational>, ints: &[BigInt], den: &BigInt) {
    if acc.len() < ints.len() {
        acc.resize(ints.len(), Rational::zero());
    }
    for (slot, n) in acc.iter_mut().zip(ints) {
        if !n.is_zero() {
            *slot -= Rational::new(n.clone(), den.clone());
        }
    }
    trim(acc);
}

/// Exact quotient of univariate polynomials in r.
pub(crate) fn div_exact(num: &[Rational], den: &[Rational]) -> Result<Vec<Rational>, DivisionError> {
    if den.is_empty() {
        return Err(DivisionError::DivisionByZero);
    }
    if num.is_empty() {
        return Ok(Vec::new());
    }
    if den.len() == 1 {
        let inv = den[0].recip();
        return Ok(num.iter().map(|c| c * &inv).collect());
    }
    if num.len() < den.len() {
        return Err(DivisionError::NotDivisible);
    }
    let mut rem = num.to_vec();
    let lead_inv = den[den.len() - 1].recip();
    let mut quot = vec![Rational::zero(); num.len() - den.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + den.len() - 1] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Err(DivisionError::NotDivisible);
    }
    trim(&mut quot);
    Ok(quot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn univariate_division() {
        // (r^2 - 1) / (r - 1) = r + 1
        let num = vec![rat(-1, 1), rat(0, 1), rat(1, 1)];
        let den = vec![rat(-1, 1), rat(1, 1)];
        assert_eq!(div_exact(&num, &den).unwrap(), vec![rat(1, 1), rat(1, 1)]);
        assert_eq!(div_exact(&[rat(1, 1), rat(1, 1)], &den), Err(DivisionError::NotDivisible));
    }
}
