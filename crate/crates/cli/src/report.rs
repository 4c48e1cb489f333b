use std::fmt;

use serde_json::{Map, Value};

pub const REPORT_FORMAT: &str = "mahler-report/1";

/// Process exit status of a command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// Affirmative or complete, with the certificate in the report.
    Affirmative = 0,
    /// Negative, with a witness in the report.
    Negative = 1,
    /// Undecided at the given bounds.
    Unknown = 2,
    InputError = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Affirmative => "affirmative",
            Status::Negative => "negative",
            Status::Unknown => "unknown",
            Status::InputError => "input-error",
        })
    }
}

/// Outcome of one command: a verdict with its evidence, plus a human summary.
///
/// The machine form carries no timing so that identical runs give identical
/// bytes; timing is only printed with the human summary.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub verdict: String,
    pub status: Status,
    pub evidence: Value,
    pub summary: Vec<String>,
}

fn canonical(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            let mut out = Map::new();
            for k in keys {
                out.insert(k.clone(), canonical(&m[k]));
            }
            Value::Object(out)
        }
        Value::Array(xs) => Value::Array(xs.iter().map(canonical).collect()),
        other => other.clone(),
    }
}

impl Report {
    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("format".into(), REPORT_FORMAT.into());
        m.insert("command".into(), self.command.clone().into());
        m.insert("inputs".into(), self.inputs.clone());
        m.insert("verdict".into(), self.verdict.clone().into());
        m.insert("status".into(), Value::from(self.status.code()));
        m.insert("evidence".into(), self.evidence.clone());
        canonical(&Value::Object(m))
    }

    /// Pretty-printed JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}: {} (exit {})\n", self.command, self.verdict, self.status.code());
        for l in &self.summary {
            s.push_str("  ");
            s.push_str(l);
            s.push('\n');
        }
        s
    }
}
