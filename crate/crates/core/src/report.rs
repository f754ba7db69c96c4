//! Named pass/fail checks shared by the verification entry points.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Assertion {
    /// Passes iff the rendered values are equal.
    pub fn eq(name: impl Into<String>, expected: impl fmt::Debug, actual: impl fmt::Debug) -> Assertion {
        let (expected, actual) = (format!("{expected:?}"), format!("{actual:?}"));
        let pass = expected == actual;
        Assertion { name: name.into(), expected, actual, pass }
    }

    pub fn holds(name: impl Into<String>, pass: bool) -> Assertion {
        Assertion::eq(name, true, pass)
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "[{mark}] {}: expected {}, got {}", self.name, self.expected, self.actual)
    }
}

pub fn all_pass(assertions: &[Assertion]) -> bool {
    assertions.iter().all(|a| a.pass)
}
