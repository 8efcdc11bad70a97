use serde_json::Value;

/// Pretty JSON with sorted keys and a trailing newline.
///
/// `serde_json::Map` is ordered by key unless `preserve_order` is enabled, and only integers
/// and strings appear in reports, so equal values always print identically.
pub fn to_canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

/// Aligned `key  value` lines, one per leaf; short scalar arrays stay on one line.
pub fn to_text(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten(String::new(), v, &mut rows);
    let width = rows
        .iter()
        .map(|(k, _)| k.chars().count())
        .max()
        .unwrap_or(0);
    rows.into_iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(" ")),
        other => other.to_string(),
    }
}

fn flatten(prefix: String, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(key, x, rows);
            }
        }
        Value::Array(a) if !is_flat(v) => {
            for (i, x) in a.iter().enumerate() {
                flatten(format!("{prefix}[{i}]"), x, rows);
            }
        }
        _ => rows.push((prefix, scalar(v))),
    }
}
