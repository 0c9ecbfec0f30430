//! Machine-readable run reports.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// An outcome that is reported without being asserted.
    Recorded,
    /// A conjectured identity that does not hold.
    Falsified,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Recorded => "RECORDED",
            Status::Falsified => "FALSIFIED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// The identity or property under test, in plain notation.
    pub identity: String,
    pub status: Status,
    pub detail: Value,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, identity: impl Into<String>, status: Status, detail: Value) -> Self {
        CheckRecord { name: name.into(), identity: identity.into(), status, detail }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub recorded: usize,
    pub falsified: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: Value,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FALSIFIED: i32 = 3;

impl RunReport {
    /// Checks are sorted by name so the output does not depend on the
    /// order in which they ran.
    pub fn new(command: &str, config: Value, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
        let summary = Summary {
            total: checks.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            recorded: count(Status::Recorded),
            falsified: count(Status::Falsified),
        };
        RunReport {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            config,
            checks,
            summary,
        }
    }

    /// 1 on any failure, otherwise 3 if a conjecture was falsified, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.summary.failed > 0 {
            EXIT_FAIL
        } else if self.summary.falsified > 0 {
            EXIT_FALSIFIED
        } else {
            EXIT_PASS
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check.
    pub fn to_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{:<9} {:<width$}  {}\n", c.status.label(), c.name, c.identity));
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{} checks: {} passed, {} failed, {} recorded, {} falsified\n",
            s.total, s.passed, s.failed, s.recorded, s.falsified
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn ordering_and_exit_codes() {
        let checks = vec![
            CheckRecord::new("b", "y", Status::Pass, json!({})),
            CheckRecord::new("a", "x", Status::Falsified, json!({})),
        ];
        let r = RunReport::new("mother", json!({}), checks);
        assert_eq!(r.checks[0].name, "a");
        assert_eq!(r.exit_code(), EXIT_FALSIFIED);
        let r = RunReport::new("x", json!({}), vec![CheckRecord::new("c", "z", Status::Fail, json!(null))]);
        assert_eq!(r.exit_code(), EXIT_FAIL);
        assert_eq!(RunReport::new("x", json!({}), vec![]).exit_code(), EXIT_PASS);
    }

    #[test]
    fn json_is_stable() {
        let mk = || {
            RunReport::new(
                "verify",
                json!({"n": [1, 2], "model": "periodic"}),
                vec![CheckRecord::new("k", "id", Status::Recorded, json!({"z": 1, "a": 2}))],
            )
        };
        assert_eq!(mk().to_json(), mk().to_json());
        assert!(mk().to_json().find("\"a\"").unwrap() < mk().to_json().find("\"z\"").unwrap());
    }
}
