//! Plain-text rendering of the JSON output: one `key: value` line per leaf.

use serde_json::Value;

pub fn render(v: &Value) -> String {
    let mut lines = Vec::new();
    walk(v, "", &mut lines);
    lines.join("\n")
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Null => Some("null".into()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("({})", parts.join(", ")))
        }
        Value::Array(items) if items.iter().all(|x| x.as_array().is_some_and(|a| a.iter().all(|y| !y.is_object() && !y.is_array()))) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn walk(v: &Value, prefix: &str, out: &mut Vec<String>) {
    if let Some(s) = scalar(v) {
        out.push(if prefix.is_empty() { s } else { format!("{prefix}: {s}") });
        return;
    }
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                walk(x, &join(k), out);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                walk(x, &join(&i.to_string()), out);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}
