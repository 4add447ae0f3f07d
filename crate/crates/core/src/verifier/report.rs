use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::group::{Group, Subgroup};

/// Why an instance did not reach the conclusion check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SkipReason {
    HypothesisFailed,
    LatticeBudget,
    SearchBudget,
    OrderCap,
}

impl SkipReason {
    pub fn as_str(self) -> &'static str {
        match self {
            SkipReason::HypothesisFailed => "hypothesis-failed",
            SkipReason::LatticeBudget => "lattice-budget",
            SkipReason::SearchBudget => "search-budget",
            SkipReason::OrderCap => "order-cap",
        }
    }

    pub fn is_budget(self) -> bool {
        self != SkipReason::HypothesisFailed
    }

    fn from_key(key: &str) -> Option<SkipReason> {
        [
            SkipReason::HypothesisFailed,
            SkipReason::LatticeBudget,
            SkipReason::SearchBudget,
            SkipReason::OrderCap,
        ]
        .into_iter()
        .find(|r| r.as_str() == key)
    }
}

/// A reproducible counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub group: String,
    pub order: usize,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub centralizer: Option<Vec<usize>>,
    pub cayley_table: Vec<Vec<usize>>,
}

impl Failure {
    pub fn new(g: &Group, message: impl Into<String>) -> Failure {
        Failure {
            group: g.label().to_string(),
            order: g.order(),
            message: message.into(),
            subgroup: None,
            residual: None,
            centralizer: None,
            cayley_table: g.table_rows(),
        }
    }

    pub fn subgroup(mut self, s: &Subgroup) -> Failure {
        self.subgroup = Some(s.elements().to_vec());
        self
    }

    pub fn residual(mut self, s: &Subgroup) -> Failure {
        self.residual = Some(s.elements().to_vec());
        self
    }

    pub fn centralizer(mut self, s: &Subgroup) -> Failure {
        self.centralizer = Some(s.elements().to_vec());
        self
    }
}

/// Per-group partial results; merging is associative and order-preserving.
#[derive(Clone, Debug, Default)]
pub struct Tally {
    pub instances: u64,
    pub checked: u64,
    pub skip_reasons: BTreeMap<String, u64>,
    pub failures: Vec<Failure>,
    pub stats: BTreeMap<String, u64>,
    pub notes: Vec<String>,
}

impl Tally {
    pub fn pass(&mut self) {
        self.instances += 1;
        self.checked += 1;
    }

    pub fn fail(&mut self, f: Failure) {
        self.instances += 1;
        self.checked += 1;
        self.failures.push(f);
    }

    /// Records one checked instance, failing with `f()` unless `ok`.
    pub fn check(&mut self, ok: bool, f: impl FnOnce() -> Failure) {
        if ok {
            self.pass()
        } else {
            self.fail(f())
        }
    }

    pub fn skip(&mut self, reason: SkipReason) {
        self.instances += 1;
        *self.skip_reasons.entry(reason.as_str().to_string()).or_default() += 1;
    }

    pub fn stat(&mut self, key: &str, by: u64) {
        *self.stats.entry(key.to_string()).or_default() += by;
    }

    /// Turns an error escaping a per-group check into a skip or a failure.
    pub fn absorb(&mut self, g: &Group, err: Error) {
        match err {
            Error::LatticeBudgetExceeded { .. } => self.skip(SkipReason::LatticeBudget),
            Error::SearchBudgetExceeded { .. } => self.skip(SkipReason::SearchBudget),
            Error::OrderCapExceeded { .. } => self.skip(SkipReason::OrderCap),
            other => self.fail(Failure::new(g, other.to_string())),
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.checked += other.checked;
        for (k, v) in other.skip_reasons {
            *self.skip_reasons.entry(k).or_default() += v;
        }
        self.failures.extend(other.failures);
        for (k, v) in other.stats {
            *self.stats.entry(k).or_default() += v;
        }
        self.notes.extend(other.notes);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one claim sweep. The structured form is the stable schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub formation: Option<String>,
    pub sigma: Option<String>,
    pub verdict: Verdict,
    pub coverage: String,
    pub groups: usize,
    pub instances: u64,
    pub checked: u64,
    pub skipped: u64,
    pub skip_reasons: BTreeMap<String, u64>,
    pub failures: Vec<Failure>,
    pub stats: BTreeMap<String, u64>,
    pub notes: Vec<String>,
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn from_tally(
        claim: impl Into<String>,
        formation: Option<String>,
        sigma: Option<String>,
        coverage: String,
        groups: usize,
        t: Tally,
    ) -> VerificationReport {
        VerificationReport {
            claim: claim.into(),
            formation,
            sigma,
            verdict: if t.failures.is_empty() { Verdict::Pass } else { Verdict::Fail },
            coverage,
            groups,
            instances: t.instances,
            checked: t.checked,
            skipped: t.instances - t.checked,
            skip_reasons: t.skip_reasons,
            failures: t.failures,
            stats: t.stats,
            notes: t.notes,
            elapsed_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn budget_skips(&self) -> u64 {
        self.skip_reasons
            .iter()
            .filter(|(k, _)| SkipReason::from_key(k).is_some_and(|r| r.is_budget()))
            .map(|(_, v)| v)
            .sum()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = write!(out, "{verdict} {}", self.claim);
        if let Some(f) = &self.formation {
            let _ = write!(out, " formation={f}");
        }
        if let Some(s) = &self.sigma {
            let _ = write!(out, " sigma={s}");
        }
        out.push('\n');
        let _ = writeln!(out, "  coverage: {}", self.coverage);
        let _ = writeln!(
            out,
            "  groups={} instances={} checked={} skipped={} failures={}",
            self.groups,
            self.instances,
            self.checked,
            self.skipped,
            self.failures.len()
        );
        for (k, v) in &self.skip_reasons {
            let _ = writeln!(out, "  skipped[{k}]={v}");
        }
        for (k, v) in &self.stats {
            let _ = writeln!(out, "  {k}={v}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        for f in &self.failures {
            let _ = writeln!(out, "  failure in {} (order {}): {}", f.group, f.order, f.message);
            if let Some(s) = &f.subgroup {
                let _ = writeln!(out, "    subgroup {s:?}");
            }
            if let Some(s) = &f.residual {
                let _ = writeln!(out, "    residual {s:?}");
            }
            if let Some(s) = &f.centralizer {
                let _ = writeln!(out, "    centralizer {s:?}");
            }
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "  elapsed_ms={ms}");
        }
        out
    }
}

/// 0 on pass, 1 on any failure, 2 when passing but some instance ran out
/// of budget.
pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().any(|r| !r.passed()) {
        1
    } else if reports.iter().any(|r| r.budget_skips() > 0) {
        2
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_merge_and_exit_codes() {
        let g = Group::trivial();
        let mut a = Tally::default();
        a.pass();
        a.skip(SkipReason::HypothesisFailed);
        let mut b = Tally::default();
        b.absorb(&g, Error::SearchBudgetExceeded { budget: 5 });
        let t = a.merge(b);
        let r = VerificationReport::from_tally("c", None, None, "cov".into(), 1, t);
        assert_eq!((r.instances, r.checked, r.skipped), (3, 1, 2));
        assert_eq!(exit_code(std::slice::from_ref(&r)), 2);
        let mut c = Tally::default();
        c.check(false, || Failure::new(&g, "boom"));
        let bad = VerificationReport::from_tally("c", None, None, "cov".into(), 1, c);
        assert_eq!(bad.verdict, Verdict::Fail);
        assert_eq!(exit_code(&[r, bad]), 1);
    }
}
