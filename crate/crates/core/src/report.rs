//! Outcome records shared by the exact and numeric checkers.

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub range: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rejected: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_rel_err: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reading: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn elapsed(&self) -> Duration {
        Duration::from_secs_f64(self.elapsed_ms / 1000.0)
    }

    /// A failed report for a case that could not run at all.
    pub fn error(id: &str, range: &str, msg: String) -> Self {
        VerificationReport {
            id: id.to_string(),
            range: range.to_string(),
            status: Status::Fail,
            counterexample: None,
            notes: vec![msg],
            elapsed_ms: 0.0,
            samples: None,
            rejected: None,
            worst_rel_err: None,
            reading: None,
        }
    }

    pub fn one_line(&self) -> String {
        let mut s = format!("{:<34} {} [{}]", self.id, self.status, self.range);
        if let Some(r) = &self.reading {
            s.push_str(&format!(" reading: {r}"));
        }
        if let (Some(n), Some(e)) = (self.samples, self.worst_rel_err) {
            s.push_str(&format!(" samples={n} worst_rel_err={e:.2e}"));
        }
        if let Some(c) = &self.counterexample {
            s.push_str(&format!(
                " first counterexample (n={}, i={}, j={}): {} != {}",
                c.n, c.i, c.j, c.lhs, c.rhs
            ));
        }
        s
    }
}

/// Accumulates exact comparisons and keeps the first mismatch.
pub struct ExactCheck {
    id: String,
    started: Instant,
    first: Option<Counterexample>,
    compared: usize,
    notes: Vec<String>,
}

impl ExactCheck {
    pub fn new(id: &str) -> Self {
        ExactCheck {
            id: id.to_string(),
            started: Instant::now(),
            first: None,
            compared: 0,
            notes: Vec::new(),
        }
    }

    pub fn eq<T: PartialEq + fmt::Display>(&mut self, n: usize, i: usize, j: usize, lhs: &T, rhs: &T) -> bool {
        self.compared += 1;
        let ok = lhs == rhs;
        if !ok && self.first.is_none() {
            self.first = Some(Counterexample { n, i, j, lhs: lhs.to_string(), rhs: rhs.to_string() });
        }
        ok
    }

    pub fn fail(&mut self, n: usize, i: usize, j: usize, lhs: String, rhs: String) {
        self.compared += 1;
        if self.first.is_none() {
            self.first = Some(Counterexample { n, i, j, lhs, rhs });
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn ok(&self) -> bool {
        self.first.is_none()
    }

    pub fn finish(self, range: impl Into<String>) -> VerificationReport {
        let mut notes = self.notes;
        notes.push(format!("{} comparisons", self.compared));
        let status = if self.first.is_none() && self.compared > 0 { Status::Pass } else { Status::Fail };
        if self.compared == 0 {
            notes.push("nothing was compared".to_string());
        }
        VerificationReport {
            id: self.id,
            range: range.into(),
            status,
            counterexample: self.first,
            notes,
            elapsed_ms: self.started.elapsed().as_secs_f64() * 1000.0,
            samples: None,
            rejected: None,
            worst_rel_err: None,
            reading: None,
        }
    }
}
