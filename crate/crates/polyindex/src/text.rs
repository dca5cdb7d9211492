//! Plain-text rendering of report values for `--format text`.
//!
//! Objects become indented `key: value` lines; arrays of objects become
//! aligned tables with one column per key.

use serde_json::{Map, Value};

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(cell).collect();
            format!("({})", inner.join(", "))
        }
        Value::Object(m) => {
            let inner: Vec<String> = m.iter().map(|(k, v)| format!("{k}={}", cell(v))).collect();
            format!("{{{}}}", inner.join(", "))
        }
        other => other.to_string(),
    }
}

fn table(rows: &[Value], indent: &str, out: &mut String) {
    let mut columns: Vec<String> = Vec::new();
    for row in rows {
        if let Value::Object(m) = row {
            for k in m.keys() {
                if !columns.contains(k) {
                    columns.push(k.clone());
                }
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| columns.iter().map(|c| row.get(c).map_or_else(|| "-".to_string(), cell)).collect())
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let line = |items: &[String]| {
        let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        format!("{indent}{}\n", padded.join("  ").trim_end())
    };
    out.push_str(&line(&columns));
    for r in &cells {
        out.push_str(&line(r));
    }
}

fn object(m: &Map<String, Value>, indent: &str, out: &mut String) {
    let deeper = format!("{indent}  ");
    for (k, v) in m {
        match v {
            Value::Object(inner) => {
                out.push_str(&format!("{indent}{k}:\n"));
                object(inner, &deeper, out);
            }
            Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
                out.push_str(&format!("{indent}{k}:\n"));
                table(items, &deeper, out);
            }
            Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_array) => {
                out.push_str(&format!("{indent}{k}:\n"));
                for item in items {
                    out.push_str(&format!("{deeper}{}\n", cell(item)));
                }
            }
            other => out.push_str(&format!("{indent}{k}: {}\n", cell(other))),
        }
    }
}

pub fn render(value: &Value) -> String {
    let mut out = String::new();
    match value {
        Value::Object(m) => object(m, "", &mut out),
        other => {
            out.push_str(&cell(other));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn tables_are_aligned() {
        let v = json!({"rows": [{"a": "1/2", "bb": 3}, {"a": "10", "bb": [1, 2]}], "status": "tight"});
        let text = render(&v);
        assert_eq!(text, "rows:\n  a    bb\n  1/2  3\n  10   (1, 2)\nstatus: tight\n");
    }
}
