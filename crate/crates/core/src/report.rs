//! Pass/fail tallies for sampled checks.

use serde::Serialize;

/// Counterexamples kept per report; the rest are only counted.
pub const MAX_EXAMPLES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub invariant: String,
    pub sample: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub skipped: usize,
    pub violations: usize,
    pub examples: Vec<Violation>,
}

impl CheckReport {
    pub fn new(name: &str) -> Self {
        CheckReport { name: name.to_string(), ..Default::default() }
    }

    pub fn pass(&mut self) {
        self.checked += 1;
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn fail(&mut self, invariant: &str, sample: impl Into<String>, detail: impl Into<String>) {
        self.checked += 1;
        self.violations += 1;
        if self.examples.len() < MAX_EXAMPLES {
            self.examples.push(Violation { invariant: invariant.to_string(), sample: sample.into(), detail: detail.into() });
        }
    }

    /// `pass` or `fail` depending on `ok`.
    pub fn check(&mut self, ok: bool, invariant: &str, sample: impl FnOnce() -> String, detail: impl FnOnce() -> String) {
        if ok {
            self.pass();
        } else {
            self.fail(invariant, sample(), detail());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.violations += other.violations;
        let room = MAX_EXAMPLES.saturating_sub(self.examples.len());
        self.examples.extend(other.examples.into_iter().take(room));
    }

    /// Folds per-sample reports in order.
    pub fn collect(name: &str, parts: impl IntoIterator<Item = CheckReport>) -> Self {
        let mut out = CheckReport::new(name);
        for p in parts {
            out.merge(p);
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_caps_examples() {
        let mut a = CheckReport::new("a");
        for i in 0..15 {
            a.fail("x", i.to_string(), "");
        }
        let mut b = CheckReport::new("b");
        for i in 0..15 {
            b.fail("y", i.to_string(), "");
        }
        b.pass();
        b.skip();
        a.merge(b);
        assert_eq!((a.checked, a.violations, a.skipped, a.examples.len()), (31, 30, 1, MAX_EXAMPLES));
        assert!(!a.passed());
        assert!(CheckReport::new("c").passed());
    }
}
