use crate::arith::BiPoly;
use crate::error::UmemuraError;

use super::EntrySequence;

/// `n x n` matrix with entry `(i, j) = a_{i+j}` for zero-based `i, j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HankelMatrix {
    anti_diagonals: Vec<BiPoly>,
    dim: usize,
}

impl HankelMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BiPoly {
        &self.anti_diagonals[i + j]
    }

    pub fn rows(&self) -> Vec<Vec<BiPoly>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.get(i, j).clone()).collect()).collect()
    }
}

/// Hankel matrix over `a_0..a_{2n-2}`. The index range includes `a_0`; it is
/// the range for which the determinant reproduces the recurrence.
pub fn build_hankel(n: usize, seq: &EntrySequence) -> Result<HankelMatrix, UmemuraError> {
    let needed = (2 * n).saturating_sub(2);
    if n == 0 || seq.len() <= needed {
        return Err(UmemuraError::InsufficientEntries { size: n, needed, available: seq.len() });
    }
    Ok(HankelMatrix { anti_diagonals: seq.entries[..=needed].to_vec(), dim: n })
}
