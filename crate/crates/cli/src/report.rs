use std::time::Duration;

use aqar_core::bounds::BoundCheck;
use aqar_core::report::{Claim, ClaimStatus};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

/// Everything one invocation produced.
#[derive(Debug, Serialize)]
pub struct TaskReport {
    pub task: String,
    pub parameters: Value,
    pub results: Value,
    pub bounds: Vec<BoundCheck>,
    pub claims: Vec<Claim>,
    /// `verified` unless a claim or check failed.
    pub status: ClaimStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
    /// Human-readable lines for `--format text`.
    #[serde(skip)]
    pub summary: Vec<String>,
}

impl TaskReport {
    pub fn new(task: &str, parameters: Value) -> Self {
        TaskReport {
            task: task.to_string(),
            parameters,
            results: Value::Null,
            bounds: Vec::new(),
            claims: Vec::new(),
            status: ClaimStatus::Verified,
            timing: None,
            summary: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.summary.push(s.into());
    }

    /// Marks the run as violated, independent of any claim.
    pub fn fail(&mut self) {
        self.status = ClaimStatus::Violated;
    }

    pub fn finalize(&mut self, elapsed: Option<Duration>) {
        if self.claims.iter().any(Claim::is_failure) {
            self.status = ClaimStatus::Violated;
        }
        self.timing = elapsed.map(|d| Timing { elapsed_ms: d.as_millis() as u64 });
    }

    pub fn exit_code(&self) -> i32 {
        if self.status == ClaimStatus::Violated {
            2
        } else {
            0
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("task: {}\n", self.task);
        for l in &self.summary {
            out.push_str(&format!("  {l}\n"));
        }
        for b in &self.bounds {
            let exact = b.bound.exact.as_deref().map(|e| format!(", exactly {e}")).unwrap_or_default();
            out.push_str(&format!(
                "  bound {}: log2 in [{:.6}, {:.6}]{exact}; count {} -> {}\n",
                b.bound.formula_id, b.bound.log2.lower, b.bound.log2.upper, b.count, b.verdict
            ));
            for f in &b.bound.flags {
                out.push_str(&format!("    note: {f}\n"));
            }
        }
        for c in &self.claims {
            let status = match c.status {
                ClaimStatus::Verified => "verified",
                ClaimStatus::Violated if c.known_discrepancy => "violated (known discrepancy)",
                ClaimStatus::Violated => "violated",
                ClaimStatus::OutOfScope => "out of scope",
            };
            out.push_str(&format!("  claim {}: {status}; {}\n", c.claim_id, c.notes));
            if let Some(w) = &c.witness {
                out.push_str(&format!("    witness: {w}\n"));
            }
        }
        let status = if self.status == ClaimStatus::Verified { "verified" } else { "violated" };
        out.push_str(&format!("status: {status}\n"));
        if let Some(t) = &self.timing {
            out.push_str(&format!("elapsed: {} ms\n", t.elapsed_ms));
        }
        out
    }
}
