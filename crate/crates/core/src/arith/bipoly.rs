//! Polynomials in two commuting indeterminates `r` and `t` over the rationals.
//!
//! Storage is dense in both variables: `rows[j]` holds the coefficients of
//! `t^j` as a polynomial in `r` (index = power of `r`). Every row is trimmed
//! of trailing zeros and the row list of trailing empty rows, so structural
//! equality is polynomial equality. The umemura polynomials are dense in `t`
//! with moderately sized `r`-degree, which is what this layout favours.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{int, to_short_string};
use super::upoly;
use super::Rational;
use crate::error::DivisionError;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    rows: Vec<Vec<Rational>>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// The indeterminate `r`.
    pub fn r() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    /// `c * r^deg_r * t^deg_t`.
    pub fn monomial(c: Rational, deg_r: usize, deg_t: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut rows = vec![Vec::new(); deg_t + 1];
        let mut row = vec![Rational::zero(); deg_r + 1];
        row[deg_r] = c;
        rows[deg_t] = row;
        Self { rows }
    }

    /// Sums the given terms; repeated exponents accumulate.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((usize, usize), Rational)>,
    {
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for ((dr, dt), c) in terms {
            if rows.len() <= dt {
                rows.resize(dt + 1, Vec::new());
            }
            let row = &mut rows[dt];
            if row.len() <= dr {
                row.resize(dr + 1, Rational::zero());
            }
            row[dr] += c;
        }
        Self::from_rows(rows)
    }

    pub(crate) fn from_rows(mut rows: Vec<Vec<Rational>>) -> Self {
        for row in rows.iter_mut() {
            upoly::trim(row);
        }
        while rows.last().is_some_and(Vec::is_empty) {
            rows.pop();
        }
        Self { rows }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Degree in `t`; `None` stands for minus infinity (zero polynomial).
    pub fn deg_t(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    /// Degree in `r`; `None` for the zero polynomial.
    pub fn deg_r(&self) -> Option<usize> {
        self.rows.iter().map(Vec::len).max().and_then(|l| l.checked_sub(1))
    }

    pub fn coeff(&self, deg_r: usize, deg_t: usize) -> Rational {
        self.rows.get(deg_t).and_then(|row| row.get(deg_r)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the highest power of `t`, as a polynomial in `r`.
    pub fn leading_t_coeff(&self) -> BiPoly {
        match self.rows.last() {
            Some(row) => BiPoly { rows: vec![row.clone()] },
            None => BiPoly::zero(),
        }
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.rows.as_slice() {
            [] => Some(Rational::zero()),
            [row] if row.len() == 1 => Some(row[0].clone()),
            _ => None,
        }
    }

    /// Nonzero terms as `((deg_r, deg_t), coefficient)`, in canonical order:
    /// `(deg_t, deg_r)` descending.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> + '_ {
        self.rows.iter().enumerate().rev().flat_map(|(dt, row)| {
            row.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).map(move |(dr, c)| ((dr, dt), c))
        })
    }

    pub fn num_terms(&self) -> usize {
        self.terms().count()
    }

    pub fn scalar_mul(&self, c: &Rational) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly { rows: self.rows.iter().map(|row| row.iter().map(|x| x * c).collect()).collect() }
    }

    /// Partial derivative in `t`, `r` held constant.
    pub fn differentiate_t(&self) -> BiPoly {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, row)| {
                let j = int(j as i64);
                row.iter().map(|c| c * &j).collect()
            })
            .collect();
        BiPoly::from_rows(rows)
    }

    /// Exact value at `(t, r) = (t0, r0)`.
    pub fn eval(&self, t0: &Rational, r0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for row in self.rows.iter().rev() {
            acc *= t0;
            acc += horner(row, r0);
        }
        acc
    }

    /// Substitutes `r = r0`, leaving a polynomial in `t` alone.
    pub fn subs_r(&self, r0: &Rational) -> BiPoly {
        BiPoly::from_rows(self.rows.iter().map(|row| vec![horner(row, r0)]).collect())
    }

    /// Substitutes `t = t0`, leaving a polynomial in `r` alone.
    pub fn subs_t(&self, t0: &Rational) -> BiPoly {
        let mut acc: Vec<Rational> = Vec::new();
        for row in self.rows.iter().rev() {
            for c in acc.iter_mut() {
                *c *= t0;
            }
            if acc.len() < row.len() {
                acc.resize(row.len(), Rational::zero());
            }
            for (a, c) in acc.iter_mut().zip(row) {
                *a += c;
            }
        }
        BiPoly::from_rows(vec![acc])
    }

    /// `p(t, r + c)`.
    pub fn shift_r(&self, c: &Rational) -> BiPoly {
        if c.is_zero() {
            return self.clone();
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                // Horner in r with (r + c) as the variable
                let mut acc: Vec<Rational> = Vec::new();
                for coef in row.iter().rev() {
                    let mut next = vec![Rational::zero(); acc.len() + 1];
                    for (i, a) in acc.iter().enumerate() {
                        next[i + 1] += a;
                        next[i] += a * c;
                    }
                    next[0] += coef;
                    acc = next;
                }
                acc
            })
            .collect();
        BiPoly::from_rows(rows)
    }

    /// `p * t^k`.
    pub fn mul_t_pow(&self, k: usize) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let mut rows = vec![Vec::new(); k];
        rows.extend(self.rows.iter().cloned());
        BiPoly { rows }
    }

    /// `p / t^k`, exact.
    pub fn div_t_pow(&self, k: usize) -> Result<BiPoly, DivisionError> {
        if self.rows.iter().take(k).any(|row| !row.is_empty()) {
            return Err(DivisionError::NotDivisible);
        }
        Ok(BiPoly { rows: self.rows.iter().skip(k).cloned().collect() })
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Integer grid over a common denominator: `self = grid / den`.
    fn to_integer_grid(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut den = BigInt::one();
        for row in &self.rows {
            for c in row {
                if !c.denom().is_one() {
                    den = den.lcm(c.denom());
                }
            }
        }
        let grid = self
            .rows
            .iter()
            .map(|row| {
                row.iter().map(|c| if c.is_zero() { BigInt::zero() } else { c.numer() * (&den / c.denom()) }).collect()
            })
            .collect();
        (grid, den)
    }

    /// Quotient `q` with `self = q * divisor`, treating both as polynomials in
    /// `t` with coefficients in Q[r]. A nonzero remainder is an error.
    pub fn exact_div(&self, divisor: &BiPoly) -> Result<BiPoly, DivisionError> {
        let Some(dt) = divisor.deg_t() else {
            return Err(DivisionError::DivisionByZero);
        };
        let Some(pt) = self.deg_t() else {
            return Ok(BiPoly::zero());
        };
        if pt < dt {
            return Err(DivisionError::NotDivisible);
        }
        let (d_ints, d_den) = divisor.to_integer_grid();
        let lead = &divisor.rows[dt];
        let mut rem = self.rows.clone();
        let mut quot = vec![Vec::new(); pt - dt + 1];
        for k in (0..=pt - dt).rev() {
            let top = std::mem::take(&mut rem[k + dt]);
            if top.is_empty() {
                continue;
            }
            // the top row cancels exactly once q = top / lead is exact
            let q = upoly::div_exact(&top, lead)?;
            let (q_ints, q_den) = upoly::to_integer_row(&q);
            let den = q_den * &d_den;
            for (i, d_row) in d_ints.iter().enumerate().take(dt) {
                if d_row.is_empty() {
                    continue;
                }
                let prod = upoly::int_mul(&q_ints, d_row);
                upoly::sub_scaled_ints(&mut rem[k + i], &prod, &den);
            }
            quot[k] = q;
        }
        if rem.iter().take(dt).any(|row| !row.is_empty()) {
            return Err(DivisionError::NotDivisible);
        }
        Ok(BiPoly::from_rows(quot))
    }

    fn add_rows(&self, other: &BiPoly, negate: bool) -> BiPoly {
        let n = self.rows.len().max(other.rows.len());
        let mut rows = Vec::with_capacity(n);
        for j in 0..n {
            let a = self.rows.get(j).map(Vec::as_slice).unwrap_or(&[]);
            let b = other.rows.get(j).map(Vec::as_slice).unwrap_or(&[]);
            let m = a.len().max(b.len());
            let mut row = Vec::with_capacity(m);
            for i in 0..m {
                let x = a.get(i);
                let y = b.get(i);
                row.push(match (x, y) {
                    (Some(x), Some(y)) if negate => x - y,
                    (Some(x), Some(y)) => x + y,
                    (Some(x), None) => x.clone(),
                    (None, Some(y)) if negate => -y,
                    (None, Some(y)) => y.clone(),
                    (None, None) => Rational::zero(),
                });
            }
            rows.push(row);
        }
        BiPoly::from_rows(rows)
    }

    fn mul_poly(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero();
        }
        let (a, ad) = self.to_integer_grid();
        let (b, bd) = other.to_integer_grid();
        let r_len = self.deg_r().unwrap_or(0) + other.deg_r().unwrap_or(0) + 1;
        let mut grid = vec![vec![BigInt::zero(); r_len]; a.len() + b.len() - 1];
        for (ta, row_a) in a.iter().enumerate() {
            for (tb, row_b) in b.iter().enumerate() {
                let out = &mut grid[ta + tb];
                for (i, x) in row_a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in row_b.iter().enumerate() {
                        if !y.is_zero() {
                            out[i + j] += x * y;
                        }
                    }
                }
            }
        }
        let den = ad * bd;
        let rows =
            grid.into_iter().map(|row| row.into_iter().map(|n| Rational::new(n, den.clone())).collect()).collect();
        BiPoly::from_rows(rows)
    }
}

fn horner(row: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in row.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

impl From<Rational> for BiPoly {
    fn from(c: Rational) -> Self {
        BiPoly::constant(c)
    }
}

impl From<i64> for BiPoly {
    fn from(c: i64) -> Self {
        BiPoly::constant(int(c))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a BiPoly> for &'a BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: &'a BiPoly) -> BiPoly {
                let f: fn(&BiPoly, &BiPoly) -> BiPoly = $body;
                f(self, rhs)
            }
        }
        impl $trait<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: &'a BiPoly) -> BiPoly {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<BiPoly> for &'a BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_rows(b, false));
forward_binop!(Sub, sub, |a, b| a.add_rows(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_poly(b));

impl AddAssign<&BiPoly> for BiPoly {
    fn add_assign(&mut self, rhs: &BiPoly) {
        *self = self.add_rows(rhs, false);
    }
}

impl SubAssign<&BiPoly> for BiPoly {
    fn sub_assign(&mut self, rhs: &BiPoly) {
        *self = self.add_rows(rhs, true);
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { rows: self.rows.iter().map(|row| row.iter().map(|c| -c).collect()).collect() }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

/// Plain-text rendering in canonical order, e.g. `1/8*t - r + 3/4`.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, ((dr, dt), c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            if !mag.is_one() || (dr == 0 && dt == 0) {
                factors.push(to_short_string(&mag));
            }
            for (name, d) in [("t", dt), ("r", dr)] {
                match d {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{d}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn t() -> BiPoly {
        BiPoly::t()
    }
    fn r() -> BiPoly {
        BiPoly::r()
    }
    fn c(n: i64, d: i64) -> BiPoly {
        BiPoly::constant(rat(n, d))
    }
    fn sigma2() -> BiPoly {
        t().scalar_mul(&rat(1, 8)) - r() + c(3, 4)
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&t() * &t(), BiPoly::monomial(rat(1, 1), 0, 2));
        assert_eq!((t().scalar_mul(&rat(1, 8)) - r()) + r(), t().scalar_mul(&rat(1, 8)));
        let a = t().scalar_mul(&rat(3, 4));
        assert_eq!(&a * &a, BiPoly::monomial(rat(9, 16), 0, 2));
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).deg_t(), None);
        assert_eq!((&a - &a).deg_r(), None);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(BiPoly::monomial(rat(1, 1), 0, 3).differentiate_t(), BiPoly::monomial(rat(3, 1), 0, 2));
        assert!(c(5, 7).differentiate_t().is_zero());
        // a_2 = 11/16 t^2 + (3/4 - r) t
        let a2 = BiPoly::monomial(rat(11, 16), 0, 2) + &(c(3, 4) - r()) * &t();
        assert_eq!(a2.differentiate_t(), t().scalar_mul(&rat(11, 8)) + c(3, 4) - r());
    }

    #[test]
    fn division_examples() {
        let p = &t() * &t() - &r() * &t();
        assert_eq!(p.exact_div(&t()).unwrap(), t() - r());
        let det2 = BiPoly::monomial(rat(1, 8), 0, 2) + &(c(3, 4) - r()) * &t();
        assert_eq!(det2.exact_div(&t()).unwrap(), sigma2());
        assert_eq!((t() + c(1, 1)).exact_div(&t()), Err(DivisionError::NotDivisible));
        assert_eq!(t().exact_div(&BiPoly::zero()), Err(DivisionError::DivisionByZero));
        assert!(BiPoly::zero().exact_div(&t()).unwrap().is_zero());
    }

    #[test]
    fn division_with_r_dependent_leading_coefficient() {
        // ((r+1) t + r)(r t - 2) / ((r+1) t + r)
        let d = &(r() + c(1, 1)) * &t() + r();
        let q = &r() * &t() - c(2, 1);
        assert_eq!((&d * &q).exact_div(&d).unwrap(), q);
        assert_eq!((&d * &q + r()).exact_div(&d), Err(DivisionError::NotDivisible));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(c(1, 1).eval(&rat(17, 3), &rat(-2, 9)), rat(1, 1));
        assert_eq!(t().scalar_mul(&rat(3, 4)).eval(&rat(4, 1), &rat(0, 1)), rat(3, 1));
        let u = sigma2();
        let sigma3 =
            u.pow(3) + u.pow(2).scalar_mul(&rat(3, 4)) + u.scalar_mul(&rat(1, 8)) - t().scalar_mul(&rat(1, 64));
        assert_eq!(sigma3.eval(&rat(8, 1), &rat(0, 1)), rat(31, 4));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(sigma2().shift_r(&rat(1, 4)), t().scalar_mul(&rat(1, 8)) - r() + c(1, 2));
        assert_eq!(sigma2().shift_r(&rat(0, 1)), sigma2());
        assert_eq!(c(7, 3).shift_r(&rat(5, 2)), c(7, 3));
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(sigma2().to_string(), "1/8*t - r + 3/4");
        assert_eq!(BiPoly::zero().to_string(), "0");
        assert_eq!((&(&r() * &r()) * &t()).scalar_mul(&rat(-3, 1)).to_string(), "-3*t*r^2");
    }

    #[test]
    fn t_power_division() {
        let p = sigma2().mul_t_pow(3);
        assert_eq!(p.div_t_pow(3).unwrap(), sigma2());
        assert_eq!(p.div_t_pow(4), Err(DivisionError::NotDivisible));
    }

    pub(crate) fn arb_bipoly() -> impl Strategy<Value = BiPoly> {
        prop::collection::vec(((0usize..3, 0usize..4), -6i64..6, 1i64..5), 0..6)
            .prop_map(|terms| BiPoly::from_terms(terms.into_iter().map(|(e, n, d)| (e, rat(n, d)))))
    }

    fn arb_rat() -> impl Strategy<Value = Rational> {
        (-9i64..9, 1i64..6).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_bipoly(), b in arb_bipoly(), c in arb_bipoly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn exact_div_recovers_factor(q in arb_bipoly(), d in arb_bipoly()) {
            prop_assume!(!d.is_zero());
            prop_assert_eq!((&q * &d).exact_div(&d).unwrap(), q);
        }

        #[test]
        fn derivative_is_linear_and_leibniz(a in arb_bipoly(), b in arb_bipoly(), k in arb_rat()) {
            prop_assert_eq!((&a + &b.scalar_mul(&k)).differentiate_t(),
                a.differentiate_t() + b.differentiate_t().scalar_mul(&k));
            prop_assert_eq!((&a * &b).differentiate_t(),
                &a.differentiate_t() * &b + &a * &b.differentiate_t());
        }

        #[test]
        fn eval_is_a_homomorphism(a in arb_bipoly(), b in arb_bipoly(), t0 in arb_rat(), r0 in arb_rat()) {
            prop_assert_eq!((&a * &b).eval(&t0, &r0), a.eval(&t0, &r0) * b.eval(&t0, &r0));
            prop_assert_eq!((&a + &b).eval(&t0, &r0), a.eval(&t0, &r0) + b.eval(&t0, &r0));
            prop_assert_eq!(a.subs_r(&r0).eval(&t0, &rat(99, 1)), a.eval(&t0, &r0));
            prop_assert_eq!(a.subs_t(&t0).eval(&rat(99, 1), &r0), a.eval(&t0, &r0));
        }

        #[test]
        fn shifts_compose(a in arb_bipoly(), x in arb_rat(), y in arb_rat()) {
            prop_assert_eq!(a.shift_r(&x).shift_r(&y), a.shift_r(&(&x + &y)));
        }
    }
}
