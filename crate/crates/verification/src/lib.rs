//! Pass/fail bookkeeping for the acceptance suite.

use std::fmt;
use std::time::{Duration, Instant};

#[derive(Clone, Debug)]
pub struct Verdict {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub elapsed: Duration,
    pub details: Vec<String>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {:>2}: {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64()
        )?;
        for d in &self.details {
            write!(f, "\n        {d}")?;
        }
        Ok(())
    }
}

/// Accumulates check results for one criterion.
#[derive(Debug, Default)]
pub struct Checks {
    failed: bool,
    details: Vec<String>,
}

impl Checks {
    pub fn check(&mut self, ok: bool, detail: impl Into<String>) {
        if !ok {
            self.failed = true;
            self.details.push(format!("failed: {}", detail.into()));
        }
    }

    pub fn note(&mut self, detail: impl Into<String>) {
        self.details.push(detail.into());
    }

    /// A time limit counts as a check of its own.
    pub fn within(&mut self, elapsed: Duration, limit: Duration) {
        self.check(
            elapsed <= limit,
            format!("took {:.1}s, limit {:.0}s", elapsed.as_secs_f64(), limit.as_secs_f64()),
        );
    }
}

pub fn run(id: u32, title: &'static str, body: impl FnOnce(&mut Checks)) -> Verdict {
    let start = Instant::now();
    let mut checks = Checks::default();
    body(&mut checks);
    Verdict { id, title, passed: !checks.failed, elapsed: start.elapsed(), details: checks.details }
}
