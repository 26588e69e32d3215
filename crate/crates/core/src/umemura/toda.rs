use crate::arith::{rat, BiPoly};

use super::{rho, RValue};

/// `t^2(rho'' rho - rho'^2) + t rho' rho + t(t/8 - r + 3n/4) rho^2 - rho_{n+1} rho_{n-1}`
/// for `rho_k = t^{k(k-1)/2} sigma_k`. `sigmas` must reach index `n + 1`.
pub fn scaled_toda_residual(n: usize, sigmas: &[BiPoly], r: &RValue) -> BiPoly {
    assert!(n >= 1 && sigmas.len() > n + 1, "need sigma_{} .. sigma_{}", n - 1, n + 1);
    let t = BiPoly::t();
    let p = rho(n, &sigmas[n]);
    let d1 = p.differentiate_t();
    let d2 = d1.differentiate_t();
    let coeff = &t * &(&r.t_over_8_minus_r() + &BiPoly::constant(rat(3 * n as i64, 4)));
    let lhs = &(&(&t * &t) * &(&(&d2 * &p) - &(&d1 * &d1))) + &(&(&t * &(&d1 * &p)) + &(&coeff * &(&p * &p)));
    let rhs = &rho(n + 1, &sigmas[n + 1]) * &rho(n - 1, &sigmas[n - 1]);
    lhs - rhs
}

pub fn verify_scaled_toda(n: usize, sigmas: &[BiPoly], r: &RValue) -> bool {
    scaled_toda_residual(n, sigmas, r).is_zero()
}
