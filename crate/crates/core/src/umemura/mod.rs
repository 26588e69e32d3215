//! Umemura polynomials by the bilinear recurrence and by Hankel determinants.

pub mod bareiss;
pub mod cache;
pub mod cross_check;
pub mod entries;
pub mod hankel;
pub mod sigma;
pub mod toda;

use std::fmt;
use std::str::FromStr;

use crate::arith::{parse_rational, rational::to_short_string, BiPoly, Rational};
use crate::error::ParseError;

pub use bareiss::{bareiss_det, leading_principal_minors};
pub use cache::{Method, UmemuraCache};
pub use cross_check::{cross_check, cross_check_against, CrossCheckReport, CrossCheckRow};
pub use entries::{compute_entries, EntrySequence};
pub use hankel::{build_hankel, HankelMatrix};
pub use sigma::{rho, sigma_hankel, sigma_recurrence, sigma_recurrence_table};
pub use toda::{scaled_toda_residual, verify_scaled_toda};

/// How the parameter `r` enters a computation: as the indeterminate, or as a
/// fixed rational value substituted from the start.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RValue {
    Symbolic,
    Value(Rational),
}

impl RValue {
    pub fn as_poly(&self) -> BiPoly {
        match self {
            RValue::Symbolic => BiPoly::r(),
            RValue::Value(r) => BiPoly::constant(r.clone()),
        }
    }

    /// `r + c`, kept symbolic when `r` is.
    pub fn shifted(&self, c: &Rational) -> RValue {
        match self {
            RValue::Symbolic => RValue::Symbolic,
            RValue::Value(r) => RValue::Value(r + c),
        }
    }

    /// `t/8 - r`, the factor that recurs throughout.
    pub fn t_over_8_minus_r(&self) -> BiPoly {
        BiPoly::t().scalar_mul(&crate::arith::rat(1, 8)) - self.as_poly()
    }
}

impl fmt::Display for RValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RValue::Symbolic => write!(f, "sym"),
            RValue::Value(r) => write!(f, "{}", to_short_string(r)),
        }
    }
}

impl FromStr for RValue {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        if s.trim() == "sym" {
            Ok(RValue::Symbolic)
        } else {
            parse_rational(s).map(RValue::Value)
        }
    }
}

/// `n(n-1)/2`: the t-degree of sigma_n and the power of t stripped from the
/// Hankel determinant.
pub fn triangular(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
