//! Unreduced quotients of `BiPoly`.
//!
//! No GCD normalization is performed; equality and zero tests cross-multiply.

use std::ops::{Add, Mul, Neg, Sub};

use super::{BiPoly, Rational};
use crate::error::DivisionError;

#[derive(Clone, Debug)]
pub struct RatFunc {
    num: BiPoly,
    den: BiPoly,
}

impl RatFunc {
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self, DivisionError> {
        if den.is_zero() {
            return Err(DivisionError::DivisionByZero);
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(p: BiPoly) -> Self {
        Self { num: p, den: BiPoly::one() }
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Quotient rule, without cancelling anything.
    pub fn differentiate_t(&self) -> RatFunc {
        let num = &(&self.num.differentiate_t() * &self.den) - &(&self.num * &self.den.differentiate_t());
        RatFunc { num, den: &self.den * &self.den }
    }

    pub fn recip(&self) -> Result<RatFunc, DivisionError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc, DivisionError> {
        Ok(self * &rhs.recip()?)
    }

    /// Value at a point, `None` where the stored denominator vanishes.
    pub fn eval(&self, t0: &Rational, r0: &Rational) -> Option<Rational> {
        let d = self.den.eval(t0, r0);
        if num_traits::Zero::is_zero(&d) {
            return None;
        }
        Some(self.num.eval(t0, r0) / d)
    }

    pub fn subs_r(&self, r0: &Rational) -> Result<RatFunc, DivisionError> {
        RatFunc::new(self.num.subs_r(r0), self.den.subs_r(r0))
    }

    pub fn scalar_mul(&self, c: &Rational) -> RatFunc {
        RatFunc { num: self.num.scalar_mul(c), den: self.den.clone() }
    }

    fn combine(&self, rhs: &RatFunc, negate: bool) -> RatFunc {
        let rhs_num = if negate { -&rhs.num } else { rhs.num.clone() };
        if self.den == rhs.den {
            return RatFunc { num: &self.num + &rhs_num, den: self.den.clone() };
        }
        RatFunc { num: &(&self.num * &rhs.den) + &(&rhs_num * &self.den), den: &self.den * &rhs.den }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        self.combine(rhs, false)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self.combine(rhs, true)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc { num: &self.num * &rhs.num, den: &self.den * &rhs.den }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn t() -> BiPoly {
        BiPoly::t()
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RatFunc::new(t(), BiPoly::zero()).unwrap_err(), DivisionError::DivisionByZero);
    }

    #[test]
    fn equality_by_cross_multiplication() {
        let a = RatFunc::new(&t() * &t(), &t() * &t() + t()).unwrap();
        let b = RatFunc::new(t(), t() + BiPoly::one()).unwrap();
        assert_eq!(a, b);
        assert!((&a - &b).is_zero());
    }

    #[test]
    fn quotient_rule() {
        // d/dt (t / (t+1)) = 1/(t+1)^2
        let f = RatFunc::new(t(), t() + BiPoly::one()).unwrap();
        let tp1 = t() + BiPoly::one();
        assert_eq!(f.differentiate_t(), RatFunc::new(BiPoly::one(), &tp1 * &tp1).unwrap());
        assert_eq!(f.eval(&rat(-1, 1), &rat(0, 1)), None);
        assert_eq!(f.eval(&rat(3, 1), &rat(0, 1)), Some(rat(3, 4)));
    }
}
