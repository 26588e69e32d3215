//! Verification results and the exit-code rule.

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    Pass,
    Fail,
    Mismatch,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Mismatch => "MISMATCH",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub inputs: String,
    pub verdict: Outcome,
    pub detail: String,
    /// Kept out of written artifacts so repeated runs stay byte-identical.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl CheckResult {
    /// Runs `check`, timing it. A panic inside is not caught.
    pub fn timed(id: &str, inputs: impl Into<String>, check: impl FnOnce() -> (Outcome, String)) -> Self {
        let start = Instant::now();
        let (verdict, detail) = check();
        Self { id: id.into(), inputs: inputs.into(), verdict, detail, wall_time: start.elapsed() }
    }

    pub fn pass_if(ok: bool) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:<8}] {:<28} {:>9.3}s  {}  ({})",
            self.verdict.to_string(),
            self.id,
            self.wall_time.as_secs_f64(),
            self.detail,
            self.inputs
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn push(&mut self, r: CheckResult) {
        self.results.push(r);
    }

    pub fn extend(&mut self, rs: impl IntoIterator<Item = CheckResult>) {
        self.results.extend(rs);
    }

    pub fn count(&self, o: Outcome) -> usize {
        self.results.iter().filter(|r| r.verdict == o).count()
    }

    /// 0 when nothing failed; MISMATCH counts as failure only when `strict`.
    pub fn exit_code(&self, strict: bool) -> i32 {
        let failed = self.results.iter().any(|r| match r.verdict {
            Outcome::Fail => true,
            Outcome::Mismatch => strict,
            Outcome::Pass => false,
        });
        i32::from(failed)
    }

    pub fn summary(&self) -> String {
        format!(
            "{} checks: {} pass, {} fail, {} mismatch",
            self.results.len(),
            self.count(Outcome::Pass),
            self.count(Outcome::Fail),
            self.count(Outcome::Mismatch)
        )
    }
}
