//! Machine-readable results of exhaustive checks.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::character::QmodZ;
use crate::group::Elem;

/// Counterexamples kept per report; the failure count is always exact.
pub const MAX_COUNTEREXAMPLES: usize = 8;

/// One side of a failed comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Elem(Elem),
    Value(QmodZ),
    Text(String),
}

impl From<Elem> for Witness {
    fn from(x: Elem) -> Self {
        Witness::Elem(x)
    }
}

impl From<QmodZ> for Witness {
    fn from(v: QmodZ) -> Self {
        Witness::Value(v)
    }
}

impl From<bool> for Witness {
    fn from(b: bool) -> Self {
        Witness::Text(b.to_string())
    }
}

impl From<String> for Witness {
    fn from(s: String) -> Self {
        Witness::Text(s)
    }
}

impl From<&str> for Witness {
    fn from(s: &str) -> Self {
        Witness::Text(s.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub g: Elem,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<Elem>,
    pub lhs: Witness,
    pub rhs: Witness,
}

/// Outcome of one named check. Serializes as
/// `{"check", "pass", "counterexamples", "stats"}`, where `stats` always
/// carries the `cases` and `failures` counters.
#[derive(Clone, Debug)]
pub struct CheckReport {
    check: String,
    cases: u64,
    failures: u64,
    counterexamples: Vec<Counterexample>,
    stats: BTreeMap<String, serde_json::Value>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            cases: 0,
            failures: 0,
            counterexamples: Vec::new(),
            stats: BTreeMap::new(),
        }
    }

    pub fn check(&self) -> &str {
        &self.check
    }

    pub fn pass(&self) -> bool {
        self.failures == 0
    }

    pub fn cases(&self) -> u64 {
        self.cases
    }

    pub fn failures(&self) -> u64 {
        self.failures
    }

    pub fn counterexamples(&self) -> &[Counterexample] {
        &self.counterexamples
    }

    pub fn stats(&self) -> &BTreeMap<String, serde_json::Value> {
        &self.stats
    }

    /// Records one comparison; returns whether it held.
    pub fn expect_eq<T: PartialEq + Into<Witness>>(
        &mut self,
        g: Elem,
        h: Option<Elem>,
        lhs: T,
        rhs: T,
    ) -> bool {
        self.cases += 1;
        if lhs == rhs {
            return true;
        }
        self.fail(Counterexample {
            g,
            h,
            lhs: lhs.into(),
            rhs: rhs.into(),
        });
        false
    }

    /// Records one case that must hold, with a description used on failure.
    pub fn expect(&mut self, g: Elem, h: Option<Elem>, holds: bool, what: &str) -> bool {
        self.cases += 1;
        if !holds {
            self.fail(Counterexample {
                g,
                h,
                lhs: what.into(),
                rhs: "violated".into(),
            });
        }
        holds
    }

    fn fail(&mut self, cx: Counterexample) {
        self.failures += 1;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(cx);
        }
    }

    pub fn set_stat(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.stats.insert(key.to_string(), value.into());
    }

    /// Adds `by` to an integer stat.
    pub fn bump_stat(&mut self, key: &str, by: u64) {
        let cur = self
            .stats
            .get(key)
            .and_then(serde_json::Value::as_u64)
            .unwrap_or(0);
        self.stats.insert(key.to_string(), (cur + by).into());
    }

    /// Folds another report into this one: counters add up, integer stats
    /// are summed and other stats keep their first value.
    pub fn absorb(&mut self, other: CheckReport) {
        self.cases += other.cases;
        self.failures += other.failures;
        let room = MAX_COUNTEREXAMPLES.saturating_sub(self.counterexamples.len());
        self.counterexamples
            .extend(other.counterexamples.into_iter().take(room));
        for (k, v) in other.stats {
            match (
                self.stats.get(&k).and_then(serde_json::Value::as_u64),
                v.as_u64(),
            ) {
                (Some(a), Some(b)) => {
                    self.stats.insert(k, (a + b).into());
                }
                _ => {
                    self.stats.entry(k).or_insert(v);
                }
            }
        }
    }

    /// One-line `name: PASS (n cases)` summary.
    pub fn summary(&self) -> String {
        let verdict = if self.pass() { "PASS" } else { "FAIL" };
        format!(
            "{}: {verdict} ({} cases, {} failures)",
            self.check, self.cases, self.failures
        )
    }
}

impl Serialize for CheckReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut stats = self.stats.clone();
        stats.insert("cases".into(), self.cases.into());
        stats.insert("failures".into(), self.failures.into());
        let mut s = serializer.serialize_struct("CheckReport", 4)?;
        s.serialize_field("check", &self.check)?;
        s.serialize_field("pass", &self.pass())?;
        s.serialize_field("counterexamples", &self.counterexamples)?;
        s.serialize_field("stats", &stats)?;
        s.end()
    }
}
