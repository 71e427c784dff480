//! Versioned JSON with sorted keys.

use serde::Serialize;
use serde_json::{Map, Value};

pub const VERSION: u32 = 1;

/// Recursively sorts object keys, so output is stable whatever map type serde_json uses.
pub fn canonical(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().map(|(k, v)| (k, canonical(v))).collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().collect::<Map<String, Value>>())
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonical).collect()),
        other => other,
    }
}

pub fn to_value<T: Serialize>(x: &T) -> serde_json::Result<Value> {
    Ok(canonical(serde_json::to_value(x)?))
}

/// Wraps a payload that has no schema of its own.
pub fn envelope(schema: &str, payload: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), Value::from(format!("rcyclo/{schema}")));
    m.insert("version".into(), Value::from(VERSION));
    match payload {
        Value::Object(o) => m.extend(o),
        other => {
            m.insert("data".into(), other);
        }
    }
    canonical(Value::Object(m))
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&canonical(v.clone())).expect("json values always serialize");
    s.push('\n');
    s
}
