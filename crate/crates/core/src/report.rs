use std::fmt;

use serde::Serialize;

/// Maximum number of counterexamples a report keeps.
pub const MAX_WITNESSES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One counterexample: the offending term tuple plus what the law expected
/// and what was observed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub law: String,
    pub terms: Vec<String>,
    pub expected: String,
    pub actual: String,
    /// Total node count of `terms`; witnesses are kept smallest-first.
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub suite: String,
    pub checked: u64,
    pub failures: u64,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
}

impl PropertyReport {
    pub fn new(suite: impl Into<String>) -> Self {
        PropertyReport {
            suite: suite.into(),
            checked: 0,
            failures: 0,
            verdict: Verdict::Pass,
            witnesses: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Counts one instance of a law and records a witness if it failed.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok {
            self.fail(witness());
        }
    }

    pub fn fail(&mut self, witness: Witness) {
        self.failures += 1;
        self.verdict = Verdict::Fail;
        let at = self.witnesses.partition_point(|w| w.size <= witness.size);
        if at < MAX_WITNESSES {
            self.witnesses.insert(at, witness);
            self.witnesses.truncate(MAX_WITNESSES);
        }
    }

    /// Folds another report's counts and witnesses into this one.
    pub fn merge(mut self, other: PropertyReport) -> Self {
        self.checked += other.checked;
        let failures = self.failures + other.failures;
        for w in other.witnesses {
            self.fail(w);
        }
        self.failures = failures;
        if failures > 0 {
            self.verdict = Verdict::Fail;
        }
        self
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        };
        write!(
            f,
            "{verdict} {} ({} checked, {} failed)",
            self.suite, self.checked, self.failures
        )?;
        for w in &self.witnesses {
            write!(
                f,
                "\n  [{}] {}: expected {}, got {}",
                w.law,
                w.terms.join(" ; "),
                w.expected,
                w.actual
            )?;
        }
        Ok(())
    }
}
