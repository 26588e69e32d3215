use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::BiPoly;
use crate::error::UmemuraError;

use super::entries::EntrySequence;
use super::sigma::extend_recurrence;
use super::{compute_entries, rho, RValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Recurrence,
    Hankel,
}

/// Append-only memo of entries `a_n` and polynomials `sigma_n` for one `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UmemuraCache {
    entries: EntrySequence,
    sigma: BTreeMap<usize, (BiPoly, Method)>,
}

impl UmemuraCache {
    pub fn new(r: RValue) -> Self {
        let mut sigma = BTreeMap::new();
        sigma.insert(0, (BiPoly::one(), Method::Recurrence));
        sigma.insert(1, (BiPoly::one(), Method::Recurrence));
        Self { entries: compute_entries(1, &r), sigma }
    }

    pub fn r(&self) -> &RValue {
        &self.entries.r
    }

    pub fn entries(&self) -> &[BiPoly] {
        &self.entries.entries
    }

    pub fn sigma(&self, n: usize) -> Option<&BiPoly> {
        self.sigma.get(&n).map(|(p, _)| p)
    }

    pub fn method(&self, n: usize) -> Option<Method> {
        self.sigma.get(&n).map(|&(_, m)| m)
    }

    pub fn sigmas(&self) -> impl Iterator<Item = (usize, &BiPoly, Method)> + '_ {
        self.sigma.iter().map(|(&n, (p, m))| (n, p, *m))
    }

    /// Largest `n` with a stored sigma.
    pub fn max_n(&self) -> usize {
        self.sigma.keys().next_back().copied().unwrap_or(0)
    }

    pub fn rho(&self, n: usize) -> Option<BiPoly> {
        self.sigma(n).map(|s| rho(n, s))
    }

    /// Stores `sigma_n`. An existing different value is a conflict, never
    /// overwritten.
    pub fn insert_sigma(&mut self, n: usize, p: BiPoly, method: Method) -> Result<(), UmemuraError> {
        match self.sigma.get(&n) {
            Some((old, _)) if *old != p => Err(UmemuraError::CacheConflict { n }),
            Some(_) => Ok(()),
            None => {
                self.sigma.insert(n, (p, method));
                Ok(())
            }
        }
    }

    /// Appends an entry `a_n`; it must be the next index.
    pub fn push_entry(&mut self, a: BiPoly) {
        self.entries.entries.push(a);
    }

    pub fn ensure_entries(&mut self, n_max: usize) {
        self.entries.extend_to(n_max);
    }

    /// Fills sigma_0..=sigma_{n_max} by the recurrence, reusing the stored
    /// contiguous prefix.
    pub fn ensure_recurrence(&mut self, n_max: usize) -> Result<(), UmemuraError> {
        let mut table: Vec<BiPoly> = Vec::new();
        while let Some(p) = self.sigma(table.len()) {
            table.push(p.clone());
        }
        if table.len() > n_max {
            return Ok(());
        }
        let start = table.len();
        extend_recurrence(&mut table, n_max, self.r())?;
        for (n, p) in table.into_iter().enumerate().skip(start) {
            self.insert_sigma(n, p, Method::Recurrence)?;
        }
        Ok(())
    }

    /// Contiguous `sigma_0..=sigma_{n_max}` if all are stored.
    pub fn sigma_table(&self, n_max: usize) -> Option<Vec<BiPoly>> {
        (0..=n_max).map(|n| self.sigma(n).cloned()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::umemura::sigma_recurrence_table;

    #[test]
    fn starts_with_unit_sigmas() {
        let cache = UmemuraCache::new(RValue::Symbolic);
        assert_eq!(cache.sigma(0), Some(&BiPoly::one()));
        assert_eq!(cache.sigma(1), Some(&BiPoly::one()));
        assert_eq!(cache.max_n(), 1);
    }

    #[test]
    fn recurrence_fill_matches_direct_table() {
        let mut cache = UmemuraCache::new(RValue::Symbolic);
        cache.ensure_recurrence(5).unwrap();
        assert_eq!(cache.sigma_table(5).unwrap(), sigma_recurrence_table(5, &RValue::Symbolic).unwrap());
        assert_eq!(cache.rho(3).unwrap().deg_t(), Some(6));
    }

    #[test]
    fn append_only() {
        let mut cache = UmemuraCache::new(RValue::Symbolic);
        cache.ensure_recurrence(3).unwrap();
        let s2 = cache.sigma(2).unwrap().clone();
        assert!(cache.insert_sigma(2, s2.clone(), Method::Hankel).is_ok());
        assert_eq!(cache.method(2), Some(Method::Recurrence));
        assert_eq!(
            cache.insert_sigma(2, &s2 + &BiPoly::one(), Method::Hankel),
            Err(UmemuraError::CacheConflict { n: 2 })
        );
    }
}
