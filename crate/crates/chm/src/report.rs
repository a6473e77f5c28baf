//! Reports and their JSON and table renderings.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA: &str = "chm-report/1";

/// The JSON schema reports conform to.
pub const SCHEMA_JSON: &str = include_str!("../schema/chm-report-1.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// A definitive verdict.
    Ok,
    /// A budget ran out before the search finished.
    Incomplete,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: Vec<String>,
    pub status: Status,
    pub result: Map<String, Value>,
    /// Present only when timings were requested, so default output is
    /// byte-stable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Map<String, Value>>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Report {
        Report { schema: SCHEMA, command, status: Status::Ok, result: Map::new(), timings_ms: None }
    }

    pub fn set(&mut self, key: &str, v: impl Serialize) -> &mut Report {
        self.result.insert(key.to_string(), serde_json::to_value(v).expect("report values serialize"));
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Incomplete => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
}

pub fn emit(r: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Table => table(r),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Leaves of the result tree as `path value` pairs, arrays of scalars kept
/// on one line.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (k, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{k}]"), x, out);
            }
        }
        Value::Array(a) => out.push((prefix.to_string(), a.iter().map(scalar).collect::<Vec<_>>().join(" "))),
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn table(r: &Report) -> String {
    let mut rows = vec![
        ("schema".to_string(), r.schema.to_string()),
        ("command".to_string(), r.command.join(" ")),
        ("status".to_string(), scalar(&serde_json::to_value(r.status).expect("status serializes"))),
    ];
    flatten("", &Value::Object(r.result.clone()), &mut rows);
    if let Some(t) = &r.timings_ms {
        flatten("timings_ms", &Value::Object(t.clone()), &mut rows);
    }
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}
