use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Item {
    pub check: String,
    /// Library operation that produced the item.
    pub op: String,
    pub status: Status,
    pub data: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: u32,
    pub command: String,
    pub config: Map<String, Value>,
    pub items: Vec<Item>,
}

impl Report {
    pub fn new(command: &str, config: Map<String, Value>) -> Self {
        Report {
            version: SCHEMA_VERSION,
            command: command.to_string(),
            config,
            items: Vec::new(),
        }
    }

    pub fn push<T: Serialize>(&mut self, check: &str, op: &str, status: Status, data: T) {
        let data = serde_json::to_value(data).expect("report data serializes");
        self.items.push(Item {
            check: check.to_string(),
            op: op.to_string(),
            status,
            data,
        });
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        for (k, v) in &self.config {
            let _ = writeln!(out, "  {k} = {}", compact(v));
        }
        for item in &self.items {
            let tag = match item.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "info",
            };
            let _ = writeln!(out, "[{tag}] {} ({})", item.check, item.op);
            match &item.data {
                Value::Object(map) => {
                    for (k, v) in map {
                        let _ = writeln!(out, "    {k}: {}", compact(v));
                    }
                }
                Value::Null => {}
                v => {
                    let _ = writeln!(out, "    {}", compact(v));
                }
            }
        }
        let _ = writeln!(out, "{}", if self.passed() { "ok" } else { "FAILED" });
        out
    }

    /// File name for golden comparisons, derived from the command and config.
    pub fn golden_name(&self) -> String {
        let mut name = self.command.replace(' ', "_");
        for (k, v) in &self.config {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let _ = write!(name, "__{k}={v}");
        }
        let clean: String = name
            .chars()
            .map(|c| {
                if c.is_ascii_alphanumeric() || "_=-.".contains(c) {
                    c
                } else {
                    '_'
                }
            })
            .collect();
        format!("{clean}.json")
    }

    /// Compare against `dir/<golden_name>`, recording the file when absent.
    pub fn check_golden(&mut self, dir: &Path) -> std::io::Result<()> {
        let path = dir.join(self.golden_name());
        let current = self.to_json();
        let file = path.display().to_string();
        if path.exists() {
            let stored = std::fs::read_to_string(&path)?;
            let same = stored.trim_end() == current.trim_end();
            self.push(
                "golden",
                "cli::golden",
                Status::from_bool(same),
                serde_json::json!({ "file": file }),
            );
        } else {
            std::fs::create_dir_all(dir)?;
            std::fs::write(&path, format!("{current}\n"))?;
            self.push(
                "golden",
                "cli::golden",
                Status::Info,
                serde_json::json!({ "file": file, "recorded": true }),
            );
        }
        Ok(())
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
