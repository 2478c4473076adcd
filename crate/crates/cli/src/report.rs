use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub description: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
    pub elapsed_ms: u128,
}

/// What a check body reports. `Err` is a failure.
pub enum Outcome {
    Pass(String),
    Skip(String),
}

pub type CheckFn = Box<dyn Fn() -> anyhow::Result<Outcome> + Send + Sync>;

pub struct Check {
    pub id: String,
    pub description: String,
    pub run: CheckFn,
}

impl Check {
    pub fn new(
        id: impl Into<String>,
        description: impl Into<String>,
        run: impl Fn() -> anyhow::Result<Outcome> + Send + Sync + 'static,
    ) -> Self {
        Check {
            id: id.into(),
            description: description.into(),
            run: Box::new(run),
        }
    }
}

impl VerifyReport {
    /// Runs the checks concurrently; the report is sorted by id.
    pub fn run(suite: &str, checks: Vec<Check>) -> Self {
        let start = Instant::now();
        let mut results: Vec<CheckResult> = checks
            .into_par_iter()
            .map(|c| {
                let (status, detail) = match (c.run)() {
                    Ok(Outcome::Pass(d)) => (Status::Pass, d),
                    Ok(Outcome::Skip(d)) => (Status::Skip, d),
                    Err(e) => (Status::Fail, format!("{e:#}")),
                };
                CheckResult {
                    id: c.id,
                    description: c.description,
                    status,
                    detail,
                }
            })
            .collect();
        results.sort_by(|a, b| a.id.cmp(&b.id));
        VerifyReport {
            suite: suite.to_string(),
            checks: results,
            elapsed_ms: start.elapsed().as_millis(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = write!(out, "[{}] {} — {}", c.status.tag(), c.id, c.description);
            if c.status != Status::Pass && !c.detail.is_empty() {
                let _ = write!(out, " ({})", c.detail);
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{}: {} passed, {} failed, {} skipped in {} ms",
            self.suite,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip),
            self.elapsed_ms
        );
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
