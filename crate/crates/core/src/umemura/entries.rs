use crate::arith::{rat, BiPoly};

use super::RValue;

/// Hankel entries `a_0..a_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntrySequence {
    pub r: RValue,
    pub entries: Vec<BiPoly>,
}

impl EntrySequence {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<&BiPoly> {
        self.entries.get(n)
    }

    /// Extends the table in place up to `a_n_max`.
    pub fn extend_to(&mut self, n_max: usize) {
        let t = BiPoly::t();
        let tw = &t * &self.r.t_over_8_minus_r();
        let three_quarters = rat(3, 4);
        while self.entries.len() <= n_max {
            let n = self.entries.len();
            let next = match n {
                0 => BiPoly::one(),
                1 => t.scalar_mul(&three_quarters),
                _ => {
                    let prev = &self.entries[n - 1];
                    let lin = &t * &(prev.differentiate_t() + prev.scalar_mul(&three_quarters));
                    // sum_{k=0}^{n-2} a_k a_{n-2-k}, folded by symmetry
                    let m = n - 2;
                    let mut conv = BiPoly::zero();
                    for k in 0..m.div_ceil(2) {
                        conv += &(&self.entries[k] * &self.entries[m - k]);
                    }
                    conv = &conv + &conv;
                    if m.is_multiple_of(2) {
                        conv += &(&self.entries[m / 2] * &self.entries[m / 2]);
                    }
                    lin + &tw * &conv
                }
            };
            self.entries.push(next);
        }
    }
}

/// `a_0..a_N` from `a_n = t(a'_{n-1} + 3/4 a_{n-1}) + t(t/8 - r) sum a_k a_{n-k-2}`.
pub fn compute_entries(n_max: usize, r: &RValue) -> EntrySequence {
    let mut seq = EntrySequence { r: r.clone(), entries: Vec::with_capacity(n_max + 1) };
    seq.extend_to(n_max);
    seq
}
