//! Exact arithmetic: rationals, polynomials in `r` and `t`, and unreduced
//! rational functions.

pub mod bipoly;
pub mod document;
pub mod ratfunc;
pub mod rational;
mod upoly;

pub use bipoly::BiPoly;
pub use ratfunc::RatFunc;
pub use rational::{int, parse_rational, rat, to_f64, Rational};
