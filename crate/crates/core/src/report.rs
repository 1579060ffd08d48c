//! Check results shared by the verification suites and the CLI.

use serde::Serialize;

/// One named assertion inside a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub assertions: Vec<Assertion>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport::default()
    }

    pub fn assert(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) -> bool {
        self.assertions.push(Assertion { name: name.into(), pass, detail: detail.into() });
        pass
    }

    pub fn extend(&mut self, prefix: &str, other: CheckReport) {
        for a in other.assertions {
            self.assertions.push(Assertion { name: format!("{prefix}{}", a.name), ..a });
        }
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn failures(&self) -> Vec<&Assertion> {
        self.assertions.iter().filter(|a| !a.pass).collect()
    }

    /// `name: detail` lines of failed assertions, or a pass count.
    pub fn summary(&self) -> String {
        let bad = self.failures();
        if bad.is_empty() {
            format!("{} assertions passed", self.assertions.len())
        } else {
            bad.iter()
                .map(|a| format!("{}: {}", a.name, a.detail))
                .collect::<Vec<_>>()
                .join("; ")
        }
    }
}
