//! Generating function of the Hankel entries: its Riccati equation (checked
//! order by order in exact arithmetic) and the linear 2x2 system behind it
//! (checked numerically).

pub mod linear;
pub mod series;

pub use linear::{
    coefficient_matrix, f_and_derivative, f_from_y, integrate_linear, integrate_linear_pair, riccati_numeric_residual,
    riccati_residual_value, wronskian, CoefficientMatrix, LinearError, LinearState,
};
pub use series::{riccati_formal_residual, riccati_residual_of, truncated_f, LambdaSeries, Laurent};
