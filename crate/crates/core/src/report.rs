//! Pass/fail reports with witnesses.

use serde::Serialize;
use std::fmt::Write as _;

/// One named law or property, checked over `cases` instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    /// A check that failed iff a witness was found.
    pub fn new(name: impl Into<String>, cases: u64, witness: Option<String>) -> Self {
        Check {
            name: name.into(),
            passed: witness.is_none(),
            cases,
            witness,
        }
    }
}

/// A named value recorded alongside the checks (counts, flags, evaluations).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub facts: Vec<Fact>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Record a check; `witness` is `None` when the property held on all cases.
    pub fn check(&mut self, name: impl Into<String>, cases: u64, witness: Option<String>) {
        self.push(Check::new(name, cases, witness));
    }

    pub fn fact(&mut self, name: impl Into<String>, value: impl ToString) {
        self.facts.push(Fact {
            name: name.into(),
            value: value.to_string(),
        });
    }

    /// Append all checks of `other`, prefixing their names.
    pub fn merge(&mut self, prefix: &str, other: Report) {
        let name = |n: String| {
            if prefix.is_empty() {
                n
            } else {
                format!("{prefix}.{n}")
            }
        };
        for c in other.checks {
            self.checks.push(Check { name: name(c.name), ..c });
        }
        for f in other.facts {
            self.facts.push(Fact { name: name(f.name), ..f });
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn fact_value(&self, name: &str) -> Option<&str> {
        self.facts
            .iter()
            .find(|f| f.name == name)
            .map(|f| f.value.as_str())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// One line per check (`name: pass` or `name: FAIL [witness]`), then one
    /// `name: value` line per fact.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            if c.passed {
                let _ = writeln!(out, "{}: pass", c.name);
            } else {
                let w = c.witness.as_deref().unwrap_or("");
                let _ = writeln!(out, "{}: FAIL [{}]", c.name, w);
            }
        }
        for f in &self.facts {
            let _ = writeln!(out, "{}: {}", f.name, f.value);
        }
        out
    }
}

/// Scan `cases`, returning the first witness produced by `probe`.
pub(crate) fn first_witness<T, I>(cases: I, mut probe: impl FnMut(T) -> Option<String>) -> Option<String>
where
    I: IntoIterator<Item = T>,
{
    cases.into_iter().find_map(&mut probe)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_prefixes_and_renders() {
        let mut inner = Report::new();
        inner.check("assoc", 8, None);
        inner.check("inv", 2, Some("a=1".into()));
        let mut r = Report::new();
        r.merge("semigroup", inner);
        r.fact("n", 2);
        assert!(!r.passed());
        assert_eq!(
            r.render_text(),
            "semigroup.assoc: pass\nsemigroup.inv: FAIL [a=1]\nn: 2\n"
        );
        assert_eq!(r.failures().count(), 1);
    }
}
