use std::fmt;

use serde::Serialize;

use crate::unitriangular::UTMatrix;

/// A localized counterexample attached to a failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub description: String,
    /// First 1-based matrix position where the two sides disagree, if any.
    pub position: Option<(usize, usize)>,
}

impl Witness {
    pub fn new(description: impl Into<String>) -> Self {
        Witness {
            description: description.into(),
            position: None,
        }
    }

    pub fn mismatch(description: impl Into<String>, lhs: &UTMatrix, rhs: &UTMatrix) -> Self {
        Witness {
            description: description.into(),
            position: lhs.first_difference(rhs),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.description)?;
        if let Some((r, c)) = self.position {
            write!(f, " (first difference at row {r}, column {c})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

/// Outcome of a verifier: named checks, each with a witness on failure.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn record(&mut self, name: impl Into<String>, failure: Option<Witness>) {
        self.checks.push(CheckOutcome {
            name: name.into(),
            passed: failure.is_none(),
            witness: failure,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{}: {}", c.name, if c.passed { "pass" } else { "FAIL" })?;
            if let Some(w) = &c.witness {
                write!(f, " -- {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
