use serde_json::{json, Value};

use super::Format;
use crate::scheme::WindowTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_pass(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub status: Status,
    pub payload: Value,
    /// Printed on standard error.
    pub diagnostic: Option<String>,
    table: Option<WindowTable>,
}

impl Report {
    pub fn new(command: &'static str, status: Status, payload: Value) -> Report {
        Report {
            command,
            status,
            payload,
            diagnostic: None,
            table: None,
        }
    }

    pub fn with_diagnostic(mut self, d: String) -> Report {
        self.diagnostic = Some(d);
        self
    }

    pub(super) fn with_table(mut self, t: WindowTable) -> Report {
        self.table = Some(t);
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "status": self.status.as_str(),
            "payload": self.payload,
        })
    }
}

/// Canonical JSON (sorted keys, no whitespace) or an aligned table.
pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(&r.to_json()).expect("values serialize"),
        Format::Table => {
            let mut rows = vec![
                ("command".to_string(), r.command.to_string()),
                ("status".to_string(), r.status.as_str().to_string()),
            ];
            match &r.table {
                Some(t) => {
                    rows.push(("x".into(), "f(x)".into()));
                    rows.extend(
                        t.entries
                            .iter()
                            .map(|(x, y)| (x.to_string(), y.to_string())),
                    );
                }
                None => flatten("", &r.payload, &mut rows),
            }
            align(&rows)
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(a) if !a.is_empty() && a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = a.iter().map(scalar).collect();
            out.push((prefix.to_string(), items.join(" ")));
        }
        Value::Array(a) if !a.is_empty() => {
            for (k, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{k}]"), x, out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn align(rows: &[(String, String)]) -> String {
    let width = rows
        .iter()
        .map(|(k, _)| k.chars().count())
        .max()
        .unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}").trim_end().to_string())
        .collect::<Vec<_>>()
        .join("\n")
}
