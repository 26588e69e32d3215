use crate::arith::{rat, BiPoly};
use crate::error::UmemuraError;

use super::{bareiss_det, build_hankel, compute_entries, triangular, RValue};

/// `sigma_n` as `t^{-n(n-1)/2}` times the `n x n` Hankel determinant of the
/// entries.
pub fn sigma_hankel(n: usize, r: &RValue) -> Result<BiPoly, UmemuraError> {
    if n <= 1 {
        return Ok(BiPoly::one());
    }
    let seq = compute_entries(2 * n - 2, r);
    let det = bareiss_det(&build_hankel(n, &seq)?.rows());
    det.div_t_pow(triangular(n)).map_err(|_| UmemuraError::NotDivisible {
        what: format!("Hankel determinant of size {n} by t^{}", triangular(n)),
    })
}

/// `sigma_0..=sigma_{n_max}` from the bilinear recurrence
/// `sigma_{n+1} sigma_{n-1} = t(sigma_n'' sigma_n - sigma_n'^2) + sigma_n' sigma_n
/// + (t/8 - r + 3n/4) sigma_n^2`, each division checked remainder-free.
pub fn sigma_recurrence_table(n_max: usize, r: &RValue) -> Result<Vec<BiPoly>, UmemuraError> {
    let mut table = vec![BiPoly::one(), BiPoly::one()];
    extend_recurrence(&mut table, n_max, r)?;
    table.truncate(n_max + 1);
    Ok(table)
}

/// Extends a recurrence table (which must hold at least sigma_0, sigma_1).
pub fn extend_recurrence(table: &mut Vec<BiPoly>, n_max: usize, r: &RValue) -> Result<(), UmemuraError> {
    let t = BiPoly::t();
    let base = r.t_over_8_minus_r();
    while table.len() <= n_max {
        let n = table.len() - 1;
        let s = &table[n];
        let d1 = s.differentiate_t();
        let d2 = d1.differentiate_t();
        let wronskian_like = &(&d2 * s) - &(&d1 * &d1);
        let coeff = &base + &BiPoly::constant(rat(3 * n as i64, 4));
        let rhs = &(&t * &wronskian_like) + &(&(&d1 * s) + &(&coeff * &(s * s)));
        let next = rhs.exact_div(&table[n - 1]).map_err(|_| UmemuraError::NotDivisible {
            what: format!("sigma_{} from the recurrence (division by sigma_{})", n + 1, n - 1),
        })?;
        table.push(next);
    }
    Ok(())
}

pub fn sigma_recurrence(n: usize, r: &RValue) -> Result<BiPoly, UmemuraError> {
    Ok(sigma_recurrence_table(n, r)?.swap_remove(n))
}

/// `rho_n = t^{n(n-1)/2} sigma_n`.
pub fn rho(n: usize, sigma: &BiPoly) -> BiPoly {
    sigma.mul_t_pow(triangular(n))
}
