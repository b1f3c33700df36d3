//! Verification reports shared by every checker.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Where a failed check can be reproduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Locator {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entry: Option<(usize, usize)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bindings: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub locator: Option<Locator>,
    /// Offending residual entry, as an exact polynomial string.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>) -> Self {
        Self { name: name.into(), passed: true, detail: None, locator: None, residual: None }
    }

    pub fn fail(name: impl Into<String>) -> Self {
        Self { name: name.into(), passed: false, detail: None, locator: None, residual: None }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Self::fail(name)
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_locator(mut self, locator: Locator) -> Self {
        self.locator = Some(locator);
        self
    }

    pub fn with_residual(mut self, residual: impl Into<String>) -> Self {
        self.residual = Some(residual.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self { checks: Vec::new(), passed: true }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        for c in other.checks {
            self.push(c);
        }
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }

    /// One line per check, `PASS`/`FAIL` first.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(if c.passed { "PASS " } else { "FAIL " });
            s.push_str(&c.name);
            if let Some(d) = &c.detail {
                s.push_str(" -- ");
                s.push_str(d);
            }
            if let Some(l) = &c.locator {
                if !l.generators.is_empty() {
                    s.push_str(&format!(" [{}]", l.generators.join(",")));
                }
                if let Some((r, col)) = l.entry {
                    s.push_str(&format!(" at ({r},{col})"));
                }
                if !l.bindings.is_empty() {
                    let b: Vec<String> = l.bindings.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    s.push_str(&format!(" with {}", b.join(" ")));
                }
            }
            if let Some(r) = &c.residual {
                s.push_str(&format!(" residual {r}"));
            }
            s.push('\n');
        }
        s.push_str(if self.passed { "verdict: PASS\n" } else { "verdict: FAIL\n" });
        s
    }
}
