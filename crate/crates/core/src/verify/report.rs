//! Per-check verdicts.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
    /// The check could not be evaluated; counts as a failure.
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub space: String,
    pub params: String,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        matches!(self.verdict, Verdict::Pass | Verdict::Skipped)
    }

    /// Key used to merge concurrently produced reports.
    pub fn sort_key(&self) -> (&str, &str, &str) {
        (&self.check_id, &self.space, &self.params)
    }
}

/// Ids of failing checks, deduplicated, in report order.
pub fn failing_ids(reports: &[VerificationReport]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for r in reports.iter().filter(|r| !r.passed()) {
        let id = format!("{}[{}]", r.check_id, r.params);
        if !out.contains(&id) {
            out.push(id);
        }
    }
    out
}
