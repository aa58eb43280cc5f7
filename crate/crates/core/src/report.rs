//! Certificates emitted by the verification sweeps.

use std::collections::{BTreeMap, BTreeSet};

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

/// Counterexamples kept per report unless a caller asks for more.
pub const DEFAULT_COUNTEREXAMPLE_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, JsonSchema)]
pub struct Counterexample {
    pub vertex: usize,
    pub word: String,
    pub detail: String,
}

/// A computed count next to the value a claim states for it, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct CountCheck {
    pub name: String,
    pub computed: u64,
    pub stated: Option<u64>,
    pub agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct VerificationReport {
    pub claim: String,
    pub k: usize,
    pub ell: usize,
    pub params: BTreeMap<String, u64>,
    pub passed: bool,
    pub counts: Vec<CountCheck>,
    pub histograms: BTreeMap<String, BTreeMap<u64, u64>>,
    /// Total number of offending items found, of which at most the cap are
    /// listed in `counterexamples`.
    pub violations: u64,
    pub counterexamples: Vec<Counterexample>,
    /// Findings that do not fail the claim, e.g. a closed form disagreeing
    /// with the computed count.
    pub flags: BTreeSet<String>,
    pub notes: Vec<String>,
    /// Structured sub-reports (domination reports, censuses, ...).
    pub details: BTreeMap<String, serde_json::Value>,
}

impl VerificationReport {
    pub fn new(claim: impl Into<String>, k: usize, ell: usize) -> Self {
        Self {
            claim: claim.into(),
            k,
            ell,
            params: BTreeMap::new(),
            passed: true,
            counts: Vec::new(),
            histograms: BTreeMap::new(),
            violations: 0,
            counterexamples: Vec::new(),
            flags: BTreeSet::new(),
            notes: Vec::new(),
            details: BTreeMap::new(),
        }
    }

    pub fn param(mut self, name: &str, value: u64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn count(&mut self, name: &str, computed: u64, stated: Option<u64>) {
        self.counts.push(CountCheck {
            name: name.to_string(),
            computed,
            stated,
            agrees: stated.map(|s| s == computed),
        });
    }

    pub fn histogram<K: Into<u64>>(&mut self, name: &str, hist: BTreeMap<K, u64>) {
        self.histograms.insert(
            name.to_string(),
            hist.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        );
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn flag(&mut self, flag: &str) {
        self.flags.insert(flag.to_string());
    }

    pub fn detail<T: Serialize>(&mut self, name: &str, value: &T) {
        let value = serde_json::to_value(value).expect("report types serialize");
        self.details.insert(name.to_string(), value);
    }

    /// Folds another report's verdict and counterexamples into this one.
    pub fn merge_verdict(&mut self, other: &VerificationReport) {
        self.passed &= other.passed;
        self.violations += other.violations;
        let mut all = std::mem::take(&mut self.counterexamples);
        all.extend(other.counterexamples.iter().cloned());
        all.sort();
        all.truncate(DEFAULT_COUNTEREXAMPLE_CAP);
        self.counterexamples = all;
    }

    pub fn absorb(&mut self, found: Counterexamples) {
        self.violations += found.total;
        self.counterexamples = found.items;
        if found.total > 0 {
            self.passed = false;
        }
    }
}

/// Keeps the `cap` smallest counterexamples (by vertex id) while counting
/// all of them. Merging is commutative, so parallel sweeps stay
/// deterministic.
#[derive(Debug, Clone, Default)]
pub struct Counterexamples {
    cap: usize,
    total: u64,
    items: Vec<Counterexample>,
}

impl Counterexamples {
    pub fn new(cap: usize) -> Self {
        Self {
            cap,
            total: 0,
            items: Vec::new(),
        }
    }

    pub fn push(&mut self, vertex: usize, word: String, detail: String) {
        self.total += 1;
        self.items.push(Counterexample {
            vertex,
            word,
            detail,
        });
        if self.items.len() > 2 * self.cap.max(1) {
            self.trim();
        }
    }

    fn trim(&mut self) {
        self.items.sort();
        self.items.truncate(self.cap);
    }

    pub fn merge(mut self, other: Self) -> Self {
        self.total += other.total;
        self.items.extend(other.items);
        self.cap = self.cap.max(other.cap);
        self.trim();
        self
    }

    pub fn finish(mut self) -> Self {
        self.trim();
        self
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn items(&self) -> &[Counterexample] {
        &self.items
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cap_keeps_smallest_vertices_regardless_of_merge_order() {
        let mut a = Counterexamples::new(3);
        let mut b = Counterexamples::new(3);
        for v in [9, 4, 7, 1] {
            a.push(v, String::new(), String::new());
        }
        for v in [8, 2, 6] {
            b.push(v, String::new(), String::new());
        }
        let ab = a.clone().merge(b.clone());
        let ba = b.merge(a);
        assert_eq!(ab.items, ba.items);
        assert_eq!(ab.total(), 7);
        let ids: Vec<usize> = ab.items().iter().map(|c| c.vertex).collect();
        assert_eq!(ids, [1, 2, 4]);
    }
}
