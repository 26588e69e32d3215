//! Exact Umemura polynomials for the fifth Painlevé equation.
//!
//! The polynomials `sigma_n(t, r)` are computed two independent ways, by the
//! bilinear recurrence and by Hankel determinants of a sequence of entries
//! `a_n`, and the rational Painlevé V solutions built from them are checked
//! exactly. The generating function of the entries satisfies a Riccati
//! equation whose linearization is solved by Kummer and confluent Heun
//! functions; those claims are checked numerically.

pub mod arith;
pub mod error;
pub mod genfun;
pub mod harness;
pub mod ode;
pub mod pv;
pub mod scalar;
pub mod special;
pub mod umemura;
