//! Exact rational scalars.
//!
//! `Rational` is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator; zero is `0/1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

use crate::error::ParseError;

pub type Rational = BigRational;

/// Builds `num/den` from machine integers. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"p/q"` or a terminating decimal such as `"-0.4"`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let s = text.trim();
    let bad = |msg: &str| ParseError::new(0, format!("{msg}: {text:?}"));
    if s.is_empty() {
        return Err(bad("empty rational"));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad("bad numerator"))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad("bad denominator"))?;
        if d.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let whole = whole.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit()) || !whole.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad("bad decimal"));
        }
        let digits = format!("{whole}{frac}");
        let n = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad("bad decimal"))?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let q = Rational::new(n, d);
        return Ok(if negative { -q } else { q });
    }
    BigInt::from_str(s).map(Rational::from_integer).map_err(|_| bad("bad integer"))
}

/// `num/den` with the denominator always written, e.g. `-3/1`.
pub fn to_fraction_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Compact form: `3/4`, `-2`, `0`.
pub fn to_short_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // ratio of huge integers: scale both down before converting
        let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
        let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        if q.is_negative() && n > 0.0 {
            -n / d
        } else {
            n / d
        }
    })
}

/// Exact rational value of a finite binary64.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}
