//! The versioned JSON run report.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "reflexlab-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_passed(passed: bool) -> Self {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    pub parameters: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
    pub details: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupRecord {
    pub family: String,
    pub degree: usize,
    pub order: usize,
    pub checks: Vec<CheckRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub trials: usize,
    pub max_group_order: usize,
    pub groups: Vec<GroupRecord>,
    pub status: Status,
}

impl RunReport {
    pub fn new(command: String, seed: u64, trials: usize, max_group_order: usize) -> Self {
        RunReport {
            schema: SCHEMA,
            version: env!("CARGO_PKG_VERSION"),
            command,
            seed,
            trials,
            max_group_order,
            groups: Vec::new(),
            status: Status::Pass,
        }
    }

    /// Recomputes the overall status: failing if any check failed.
    pub fn finish(&mut self) {
        let failed = self
            .groups
            .iter()
            .flat_map(|g| &g.checks)
            .any(|c| c.status == Status::Fail);
        self.status = Status::from_passed(!failed);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check: `PASS  family  check  note`.
    pub fn summary_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for g in &self.groups {
            for c in &g.checks {
                let mut line = format!("{}  {}  {}", c.status, g.family, c.id);
                if let Some(note) = &c.note {
                    line.push_str(&format!("  ({note})"));
                }
                if let Some(ms) = c.wall_ms {
                    line.push_str(&format!("  [{ms} ms]"));
                }
                out.push(line);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_rollup_and_schema() {
        let mut r = RunReport::new("verify all".into(), 1, 2, 3);
        r.groups.push(GroupRecord {
            family: "x".into(),
            degree: 1,
            order: 2,
            checks: vec![CheckRecord {
                id: "c".into(),
                status: Status::Skipped,
                parameters: BTreeMap::new(),
                note: Some("n/a".into()),
                wall_ms: None,
                details: Value::Null,
            }],
        });
        r.finish();
        assert_eq!(r.status, Status::Pass);
        let json: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["schema"], SCHEMA);
        assert_eq!(json["groups"][0]["checks"][0]["status"], "skipped");
        assert!(json["groups"][0]["checks"][0].get("wall_ms").is_none());
        r.groups[0].checks[0].status = Status::Fail;
        r.finish();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.summary_lines(), vec!["FAIL  x  c  (n/a)"]);
    }
}
