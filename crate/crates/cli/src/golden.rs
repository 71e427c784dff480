//! Degree-by-degree comparison of a fresh result with a stored one.

use rcyclo_core::PadicGroup;
use serde_json::Value;
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GoldenError {
    #[error("schema drift: golden is {golden}, result is {actual}")]
    Schema { golden: String, actual: String },
    #[error("malformed {0}")]
    Malformed(String),
}

fn header(v: &Value) -> (String, u64) {
    let schema = v.get("schema").and_then(Value::as_str).unwrap_or("none").to_string();
    let version = v.get("version").and_then(Value::as_u64).unwrap_or(0);
    (schema, version)
}

fn group(v: &Value) -> Result<String, GoldenError> {
    if v.is_null() {
        return Ok("ambiguous".into());
    }
    let g: PadicGroup = serde_json::from_value(v.clone()).map_err(|e| GoldenError::Malformed(e.to_string()))?;
    Ok(g.to_string())
}

/// (degree, field) -> displayed group
fn rows(v: &Value) -> Result<BTreeMap<(i64, &'static str), String>, GoldenError> {
    let mut out = BTreeMap::new();
    match header(v).0.as_str() {
        "rcyclo/pi-table" => {
            let entries = v.get("entries").and_then(Value::as_object).ok_or(GoldenError::Malformed("entries".into()))?;
            for (k, e) in entries {
                let n: i64 = k.parse().map_err(|_| GoldenError::Malformed(format!("degree {k}")))?;
                out.insert((n, "pi"), group(&e["group"])?);
            }
        }
        "rcyclo/fiber-report" => {
            let fiber = v.get("fiber").and_then(Value::as_array).ok_or(GoldenError::Malformed("fiber".into()))?;
            for f in fiber {
                let n = f["degree"].as_i64().ok_or(GoldenError::Malformed("fiber degree".into()))?;
                out.insert((n, "pi"), group(&f["group"])?);
            }
            let degrees = v.get("degrees").and_then(Value::as_array).ok_or(GoldenError::Malformed("degrees".into()))?;
            for d in degrees {
                let n = d["degree"].as_i64().ok_or(GoldenError::Malformed("map degree".into()))?;
                out.insert((n, "ker"), group(&d["kernel"])?);
                out.insert((n, "coker"), group(&d["cokernel"])?);
            }
        }
        _ => {}
    }
    Ok(out)
}

/// One line per disagreeing (degree, quantity), lowest degree first; empty when equal.
/// Schemas without degrees are compared field by field.
pub fn compare_golden(actual: &Value, golden: &Value) -> Result<Vec<String>, GoldenError> {
    let (ga, va) = header(actual);
    let (gg, vg) = header(golden);
    if ga != gg || va != vg {
        return Err(GoldenError::Schema { golden: format!("{gg} v{vg}"), actual: format!("{ga} v{va}") });
    }
    let (a, g) = (rows(actual)?, rows(golden)?);
    let mut lines = Vec::new();
    if a.is_empty() && g.is_empty() {
        let (Some(ao), Some(go)) = (actual.as_object(), golden.as_object()) else {
            return Err(GoldenError::Malformed("top level".into()));
        };
        let mut keys: Vec<&String> = ao.keys().chain(go.keys()).collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            if ao.get(k) != go.get(k) {
                lines.push(format!("{k}: expected {}, found {}", show(go.get(k)), show(ao.get(k))));
            }
        }
        return Ok(lines);
    }
    let mut keys: Vec<&(i64, &str)> = a.keys().chain(g.keys()).collect();
    keys.sort();
    keys.dedup();
    for key @ (n, field) in keys {
        let (x, y) = (a.get(key), g.get(key));
        if x != y {
            let missing = "missing".to_string();
            lines.push(format!("s={n} {field}: expected {}, found {}", y.unwrap_or(&missing), x.unwrap_or(&missing)));
        }
    }
    Ok(lines)
}

fn show(v: Option<&Value>) -> String {
    v.map_or("missing".into(), |v| v.to_string())
}
