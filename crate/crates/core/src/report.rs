//! Verification reports shared by every claim checker.

use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Falsified,
    Vacuous,
}

impl Status {
    /// Process exit code for a single status.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Verified => 0,
            Status::Falsified => 2,
            Status::Vacuous => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    /// Canonical code or other stable instance key.
    pub instance: String,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub anchor: String,
    /// Number of instances that met the hypotheses and were checked.
    pub universe: usize,
    pub status: Status,
    pub counterexamples: Vec<Counterexample>,
    /// Interpretation choices and parameters of the run.
    pub notes: Vec<String>,
    /// Extra measurements, keyed for stable output.
    pub details: BTreeMap<String, Value>,
}

impl VerificationReport {
    pub fn new(claim: &str, anchor: &str) -> Self {
        VerificationReport {
            claim: claim.to_string(),
            anchor: anchor.to_string(),
            universe: 0,
            status: Status::Vacuous,
            counterexamples: Vec::new(),
            notes: Vec::new(),
            details: BTreeMap::new(),
        }
    }

    pub fn note(&mut self, s: impl Into<String>) -> &mut Self {
        self.notes.push(s.into());
        self
    }

    pub fn detail(&mut self, key: &str, v: impl Serialize) -> &mut Self {
        self.details.insert(key.to_string(), serde_json::to_value(v).expect("detail serializes"));
        self
    }

    /// Records one checked instance; `failure` holds the witness when the claim fails on it.
    pub fn check(&mut self, instance: impl Into<String>, failure: Option<Value>) {
        self.universe += 1;
        if let Some(witness) = failure {
            self.counterexamples.push(Counterexample { instance: instance.into(), witness });
        }
    }

    /// Folds another partial report for the same claim into this one.
    pub fn merge(&mut self, other: VerificationReport) {
        debug_assert_eq!(self.claim, other.claim);
        self.universe += other.universe;
        self.counterexamples.extend(other.counterexamples);
        for n in other.notes {
            if !self.notes.contains(&n) {
                self.notes.push(n);
            }
        }
        self.details.extend(other.details);
    }

    /// Sorts counterexamples and sets the status from the evidence.
    pub fn finish(mut self) -> Self {
        self.counterexamples.sort_by(|a, b| a.instance.cmp(&b.instance).then_with(|| a.witness.to_string().cmp(&b.witness.to_string())));
        self.status = if !self.counterexamples.is_empty() {
            Status::Falsified
        } else if self.universe == 0 {
            Status::Vacuous
        } else {
            Status::Verified
        };
        self
    }
}

/// Exit status for a batch: any falsified gives 2, all vacuous (or none) gives 3.
pub fn aggregate_status(reports: &[VerificationReport]) -> Status {
    if reports.iter().any(|r| r.status == Status::Falsified) {
        Status::Falsified
    } else if reports.iter().all(|r| r.status == Status::Vacuous) {
        Status::Vacuous
    } else {
        Status::Verified
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_evidence() {
        let r = VerificationReport::new("x", "anchor").finish();
        assert_eq!(r.status, Status::Vacuous);
        let mut r = VerificationReport::new("x", "anchor");
        r.check("a", None);
        assert_eq!(r.clone().finish().status, Status::Verified);
        r.check("b", Some(serde_json::json!({"why": 1})));
        let r = r.finish();
        assert_eq!(r.status, Status::Falsified);
        assert_eq!(r.universe, 2);
        assert_eq!(aggregate_status(&[r]), Status::Falsified);
        assert_eq!(aggregate_status(&[]), Status::Vacuous);
    }

    #[test]
    fn merge_is_order_independent() {
        let mk = |inst: &str, bad: bool| {
            let mut r = VerificationReport::new("c", "a");
            r.check(inst, bad.then(|| serde_json::json!(inst)));
            r
        };
        let mut left = mk("p", true);
        left.merge(mk("q", true));
        let mut right = mk("q", true);
        right.merge(mk("p", true));
        assert_eq!(
            serde_json::to_string(&left.finish()).unwrap(),
            serde_json::to_string(&right.finish()).unwrap()
        );
    }
}
