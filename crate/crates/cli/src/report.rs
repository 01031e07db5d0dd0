//! Report document and exit codes.

use std::fmt::Write as _;

use amdist::matrix::Matrix;
use amdist::Error;
use serde::Serialize;
use serde_json::{json, Value};

/// Exit codes, stable across releases.
pub mod code {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 2;
    pub const INCONSISTENT: i32 = 3;
    pub const SINGULAR: i32 = 4;
    pub const IDENTITY_FAILED: i32 = 5;
    pub const INADMISSIBLE: i32 = 6;
}

/// Maps a library error to the exit code documented for it.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Inconsistent(_) => code::INCONSISTENT,
        Error::SingularDistanceMatrix
        | Error::SingularMatrix
        | Error::SingularBlock(_)
        | Error::NonInvertibleWeight(_)
        | Error::SingularUpdate
        | Error::DenominatorVanishes => code::SINGULAR,
        Error::InadmissibleMinor(_) | Error::VertexInRemovedSet(_) => code::INADMISSIBLE,
        _ => code::INPUT,
    }
}

#[derive(Debug, Serialize)]
pub struct Command {
    pub subcommand: String,
    pub args: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Status {
    pub code: i32,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct ReportFile {
    pub command: Command,
    pub results: Value,
    pub status: Status,
}

/// Results so far plus how the command ended.
pub struct Outcome {
    pub results: Value,
    pub code: i32,
    pub message: String,
}

impl Outcome {
    pub fn ok(results: Value) -> Outcome {
        Outcome { results, code: code::OK, message: "ok".into() }
    }

    pub fn with(results: Value, code: i32, message: impl Into<String>) -> Outcome {
        Outcome { results, code, message: message.into() }
    }

    pub fn error(e: &Error) -> Outcome {
        Outcome { results: Value::Null, code: exit_code(e), message: e.to_string() }
    }
}

/// `{labels, rows}` with entries as exact strings.
pub fn matrix_json(labels: &[usize], rows: Vec<Vec<String>>) -> Value {
    json!({ "labels": labels, "rows": rows })
}

pub fn matrix_strings<R: amdist::ring::Ring + std::fmt::Display>(m: &Matrix<R>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

/// `path = value` lines, one per leaf.
pub fn to_text(v: &Value) -> String {
    fn walk(v: &Value, path: &str, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                    walk(x, &p, out);
                }
            }
            Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let items: Vec<String> = xs.iter().map(leaf).collect();
                let _ = writeln!(out, "{path} = [{}]", items.join(", "));
            }
            Value::Array(xs) => {
                for (k, x) in xs.iter().enumerate() {
                    walk(x, &format!("{path}[{k}]"), out);
                }
            }
            _ => {
                let _ = writeln!(out, "{path} = {}", leaf(v));
            }
        }
    }
    fn leaf(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    let mut out = String::new();
    walk(v, "", &mut out);
    out
}
