use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

/// Dotted-path leaves of a JSON value, in document order.
fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let join = |key: &str| if prefix.is_empty() { key.to_string() } else { format!("{prefix}.{key}") };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| flatten(&join(k), v, out)),
        Value::Array(items) if items.iter().all(|v| !v.is_object() && !v.is_array()) => {
            let cells: Vec<String> = items.iter().map(scalar).collect();
            out.push((prefix.to_string(), cells.join(" ")));
        }
        Value::Array(items) => items.iter().enumerate().for_each(|(i, v)| flatten(&join(&i.to_string()), v, out)),
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render<T: Serialize>(payload: &T, format: Format) -> anyhow::Result<String> {
    let value = serde_json::to_value(payload)?;
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&value)? + "\n",
        Format::Csv | Format::Plain => {
            let mut leaves = Vec::new();
            flatten("", &value, &mut leaves);
            let mut out = String::new();
            if format == Format::Csv {
                out.push_str("key,value\n");
            }
            for (k, v) in leaves {
                if format == Format::Csv {
                    out.push_str(&format!("{},{}\n", csv_cell(&k), csv_cell(&v)));
                } else {
                    out.push_str(&format!("{k}: {v}\n"));
                }
            }
            out
        }
    })
}
