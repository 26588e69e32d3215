use std::thread;
use std::time::{Duration, Instant};

use crate::arith::BiPoly;
use crate::error::UmemuraError;

use super::sigma::extend_recurrence;
use super::{sigma_hankel, RValue};

#[derive(Clone, Debug)]
pub struct CrossCheckRow {
    pub n: usize,
    pub equal: bool,
    pub deg_t: Option<usize>,
    pub deg_r: Option<usize>,
    pub terms: usize,
    pub hankel_time: Duration,
    pub recurrence_time: Duration,
    pub error: Option<String>,
}

#[derive(Clone, Debug)]
pub struct CrossCheckReport {
    pub r: RValue,
    pub rows: Vec<CrossCheckRow>,
}

impl CrossCheckReport {
    pub fn all_equal(&self) -> bool {
        self.rows.iter().all(|row| row.equal)
    }

    pub fn mismatches(&self) -> Vec<usize> {
        self.rows.iter().filter(|row| !row.equal).map(|row| row.n).collect()
    }
}

/// Compares the Hankel-determinant and recurrence routes for `2 <= n <= n_max`.
pub fn cross_check(n_max: usize, r: &RValue) -> CrossCheckReport {
    let mut table = vec![BiPoly::one(), BiPoly::one()];
    let mut times = vec![Duration::ZERO; 2];
    let mut failure = None;
    for n in 2..=n_max {
        let start = Instant::now();
        if let Err(e) = extend_recurrence(&mut table, n, r) {
            failure = Some(e);
            break;
        }
        times.push(start.elapsed());
    }
    let mut report = cross_check_against(&table, n_max, r);
    for row in report.rows.iter_mut() {
        if let Some(t) = times.get(row.n) {
            row.recurrence_time = *t;
        }
        if row.n >= table.len() {
            row.equal = false;
            row.error = failure.as_ref().map(UmemuraError::to_string);
        }
    }
    report
}

/// Compares `recurrence[n]` against freshly computed Hankel sigmas, one worker
/// per `n`. Mismatches are recorded, not raised.
pub fn cross_check_against(recurrence: &[BiPoly], n_max: usize, r: &RValue) -> CrossCheckReport {
    let rows = thread::scope(|scope| {
        let jobs: Vec<_> = (2..=n_max)
            .map(|n| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let result = sigma_hankel(n, r);
                    (n, result, start.elapsed())
                })
            })
            .collect();
        jobs.into_iter()
            .map(|job| {
                let (n, result, hankel_time) = job.join().expect("Hankel worker panicked");
                let mut row = CrossCheckRow {
                    n,
                    equal: false,
                    deg_t: None,
                    deg_r: None,
                    terms: 0,
                    hankel_time,
                    recurrence_time: Duration::ZERO,
                    error: None,
                };
                match result {
                    Ok(h) => {
                        row.deg_t = h.deg_t();
                        row.deg_r = h.deg_r();
                        row.terms = h.num_terms();
                        match recurrence.get(n) {
                            Some(s) => row.equal = *s == h,
                            None => row.error = Some(format!("no recurrence value for n = {n}")),
                        }
                    }
                    Err(e) => row.error = Some(e.to_string()),
                }
                row
            })
            .collect()
    });
    CrossCheckReport { r: r.clone(), rows }
}
