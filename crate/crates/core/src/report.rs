//! Pass/fail records shared by every verification routine and the CLI.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual_zero: bool,
    /// Printed residual, or a printed value for informational rows.
    pub value: String,
}

impl Check {
    /// A check passes iff the residual prints as exactly zero.
    pub fn residual(name: impl Into<String>, residual: impl fmt::Display, is_zero: bool) -> Self {
        Check { name: name.into(), residual_zero: is_zero, value: if is_zero { "0".into() } else { residual.to_string() } }
    }

    pub fn flag(name: impl Into<String>, ok: bool, value: impl Into<String>) -> Self {
        Check { name: name.into(), residual_zero: ok, value: value.into() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Prefixes every check name, e.g. with the realization it was run on.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for c in &mut self.checks {
            c.name = format!("{prefix}: {}", c.name);
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.residual_zero)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.residual_zero)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.residual_zero { "ok  " } else { "FAIL" };
            if c.residual_zero {
                writeln!(f, "{tag} {}", c.name)?;
            } else {
                writeln!(f, "{tag} {}: {}", c.name, c.value)?;
            }
        }
        Ok(())
    }
}
