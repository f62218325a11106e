//! Plain-text rendering of the JSON reports, so both modes carry the same content.

use serde_json::Value;

pub fn text(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Array(items) if items.iter().all(is_check_item) => check_items(items, &mut out),
        Value::Array(items) => {
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push('\n');
                }
                block(item, 0, &mut out);
            }
        }
        _ => block(v, 0, &mut out),
    }
    out
}

fn is_check_item(v: &Value) -> bool {
    v.get("passed").is_some_and(Value::is_boolean) && v.get("section").is_some() && v.get("name").is_some()
}

fn check_items(items: &[Value], out: &mut String) {
    let s = |v: &Value, k: &str| v[k].as_str().unwrap_or_default().to_string();
    let sw = items.iter().map(|i| s(i, "section").len()).max().unwrap_or(0);
    let nw = items.iter().map(|i| s(i, "name").chars().count()).max().unwrap_or(0);
    let mut passed = 0;
    for i in items {
        let ok = i["passed"].as_bool().unwrap_or(false);
        passed += usize::from(ok);
        let name = s(i, "name");
        let pad = " ".repeat(nw - name.chars().count());
        let line = format!(
            "{}  {:<sw$}  {name}{pad}  {}",
            if ok { "PASS" } else { "FAIL" },
            s(i, "section"),
            s(i, "detail")
        );
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out.push_str(&format!("{passed}/{} passed\n", items.len()));
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// Rows of scalars, e.g. matrix entries.
fn grid(v: &Value) -> Option<Vec<Vec<String>>> {
    let rows = v.as_array()?;
    if rows.is_empty() {
        return None;
    }
    rows.iter()
        .map(|r| r.as_array().filter(|r| !r.is_empty())?.iter().map(scalar).collect())
        .collect()
}

/// Matrix JSON objects collapse to their entries.
fn matrix_entries(v: &Value) -> Option<Vec<Vec<String>>> {
    let obj = v.as_object()?;
    if obj.len() == 3 && obj.contains_key("n") && obj.contains_key("blocks") {
        grid(obj.get("entries")?)
    } else {
        None
    }
}

fn push_grid(g: &[Vec<String>], indent: usize, out: &mut String) {
    let cols = g.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| g.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    for row in g {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        out.push_str(&format!("{}[ {} ]\n", " ".repeat(indent), cells.join("  ")));
    }
}

fn block(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                if let Some(s) = scalar(val) {
                    out.push_str(&format!("{pad}{k}: {s}\n"));
                } else if let Some(g) = matrix_entries(val).or_else(|| grid(val)) {
                    out.push_str(&format!("{pad}{k}:\n"));
                    push_grid(&g, indent + 2, out);
                } else if let Some(list) = val.as_array().and_then(|a| a.iter().map(scalar).collect::<Option<Vec<_>>>()) {
                    out.push_str(&format!("{pad}{k}: [{}]\n", list.join(", ")));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    block(val, indent + 2, out);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                out.push_str(&format!("{pad}-\n"));
                block(item, indent + 2, out);
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
