//! Claims and reports: what was expected, what was computed, whether they
//! agree.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub description: String,
    /// Short tag naming the statement under test.
    pub statement: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Claim {
    pub fn new(
        description: impl Into<String>,
        statement: impl Into<String>,
        expected: impl Display,
        computed: impl Display,
        pass: bool,
    ) -> Claim {
        Claim {
            description: description.into(),
            statement: statement.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass,
        }
    }

    /// Passes iff `expected == computed`.
    pub fn equal<T: PartialEq + Display>(
        description: impl Into<String>,
        statement: impl Into<String>,
        expected: T,
        computed: T,
    ) -> Claim {
        let pass = expected == computed;
        Claim::new(description, statement, expected, computed, pass)
    }

    /// A boolean property expected to hold.
    pub fn holds(
        description: impl Into<String>,
        statement: impl Into<String>,
        computed: bool,
    ) -> Claim {
        Claim::equal(description, statement, true, computed)
    }
}

/// The outcome of one command: fields serialize in declaration order and
/// parameters in key order, so equal runs give equal output.
#[derive(Clone, Debug, Default, Serialize)]
pub struct VerificationReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub claims: Vec<Claim>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(command: impl Into<String>) -> VerificationReport {
        VerificationReport {
            command: command.into(),
            pass: true,
            ..VerificationReport::default()
        }
    }

    pub fn parameter(mut self, key: &str, value: impl Display) -> VerificationReport {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, claim: Claim) {
        self.pass &= claim.pass;
        self.claims.push(claim);
    }

    pub fn extend(&mut self, claims: impl IntoIterator<Item = Claim>) {
        for c in claims {
            self.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_pass() {
        let mut r = VerificationReport::new("x").parameter("p", 5);
        r.push(Claim::equal("a", "t", 7, 7));
        assert!(r.pass && r.passed());
        r.push(Claim::holds("b", "t", false));
        assert!(!r.pass && !r.passed());
        assert_eq!(r.claims[1].expected, "true");
    }
}
