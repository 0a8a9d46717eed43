//! Machine-consumable run reports: one verdict per check, a payload of
//! structured results, and the seed echoed back. Re-runs are byte-identical
//! apart from `elapsed_ms`.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub args: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub verdicts: Vec<Verdict>,
    pub payload: Value,
    pub elapsed_ms: u128,
}

impl RunReport {
    pub fn new(command: &str, args: Value, seed: Option<u64>) -> RunReport {
        RunReport {
            command: command.to_string(),
            args,
            seed,
            verdicts: Vec::new(),
            payload: Value::Null,
            elapsed_ms: 0,
        }
    }

    pub fn verdict(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per verdict, PASS/FAIL first for scanning.
    pub fn verdict_lines(&self) -> String {
        self.verdicts
            .iter()
            .map(|v| {
                format!(
                    "{} {} {}",
                    if v.pass { "PASS" } else { "FAIL" },
                    v.name,
                    v.detail
                )
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}
