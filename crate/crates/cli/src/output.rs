use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use wallcube::{Caps, Error};

/// A failed run: message for stderr and the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_DOMAIN,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::StateSpaceCap { .. } => EXIT_CAP,
            Error::Parse(_) => EXIT_INPUT,
            _ => EXIT_DOMAIN,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Provenance embedded in every artifact.
#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub caps: Caps,
    pub input_digest: String,
}

impl Meta {
    pub fn new(seed: u64, caps: Caps, input: &[u8]) -> Self {
        Self {
            tool: "wallcube",
            version: env!("CARGO_PKG_VERSION"),
            seed,
            caps,
            input_digest: format!("sha256:{}", hex::encode(Sha256::digest(input))),
        }
    }

    /// One-line summary for formats without structured metadata.
    pub fn comment(&self, prefix: &str) -> String {
        format!(
            "{prefix} {} {} seed={} caps=points:{},walls:{},vertices:{} input={}\n",
            self.tool,
            self.version,
            self.seed,
            self.caps.points,
            self.caps.walls,
            self.caps.vertices,
            self.input_digest
        )
    }
}

/// Adds `meta` to a JSON object, or wraps any other value as `result`.
pub fn with_meta(value: impl Serialize, meta: &Meta) -> Value {
    let value = serde_json::to_value(value).expect("reports serialize");
    match value {
        Value::Object(mut map) => {
            map.insert("meta".into(), json!(meta));
            Value::Object(map)
        }
        other => json!({ "result": other, "meta": meta }),
    }
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Null => Some(String::new()),
        _ => None,
    }
}

/// Columns placed first when present; the rest follow alphabetically.
const LEADING: &[&str] = &["scale", "dim", "points", "walls", "vertices", "dimension", "max_degree", "line_max_degree"];

/// CSV of the scalar fields of each row object, with a metadata comment.
pub fn csv_rows(rows: &[Value], meta: &Meta) -> Result<String, Failure> {
    let mut header: Vec<String> = Vec::new();
    for r in rows {
        if let Value::Object(map) = r {
            for (k, v) in map {
                if scalar(v).is_some() && !header.contains(k) {
                    header.push(k.clone());
                }
            }
        }
    }
    header.sort_by_key(|k| LEADING.iter().position(|l| l == k).unwrap_or(LEADING.len()));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).map_err(|e| Failure::input(e.to_string()))?;
    for r in rows {
        let rec: Vec<String> = header.iter().map(|k| r.get(k).and_then(scalar).unwrap_or_default()).collect();
        w.write_record(&rec).map_err(|e| Failure::input(e.to_string()))?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| Failure::input(e.to_string()))?).expect("csv is utf-8");
    Ok(meta.comment("#") + &body)
}
