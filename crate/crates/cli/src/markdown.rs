//! Markdown view of a JSON report. Nothing here computes; it only lays out values.

use std::fmt::Write as _;

use serde_json::{Map, Value};

pub fn render(report: &Value) -> String {
    let mut out = String::new();
    let command = report["config"]["command"].as_str().unwrap_or("report");
    let _ = writeln!(out, "# cliquespec {command}\n");
    let _ = writeln!(out, "- version: {}", scalar(&report["version"]));
    let _ = writeln!(out, "- checks pass: {}\n", scalar(&report["checks_pass"]));
    section(&mut out, 2, "Configuration", &report["config"]);
    section(&mut out, 2, "Result", &report["result"]);
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "–".into(),
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() && x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e9) => format!("{x:.4e}"),
            Some(x) if n.is_f64() => format!("{x:.10}").trim_end_matches('0').trim_end_matches('.').to_string(),
            _ => n.to_string(),
        },
        Value::Bool(b) => b.to_string(),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => serde_json::to_string(v).unwrap_or_default(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(|x| !x.is_object()),
        _ => true,
    }
}

fn cell(v: &Value) -> String {
    scalar(v).replace('|', "\\|")
}

/// Uniform arrays of objects with flat fields become tables.
fn table_columns(items: &[Value]) -> Option<Vec<String>> {
    let first: &Map<String, Value> = items.first()?.as_object()?;
    let cols: Vec<String> = first.keys().cloned().collect();
    let uniform = items.iter().all(|it| {
        it.as_object().is_some_and(|o| o.len() == cols.len() && o.iter().all(|(k, v)| cols.contains(k) && (is_flat(v) || k == "tolerances")))
    });
    uniform.then_some(cols)
}

fn section(out: &mut String, level: usize, title: &str, v: &Value) {
    let hashes = "#".repeat(level.min(6));
    match v {
        Value::Object(map) => {
            let _ = writeln!(out, "{hashes} {title}\n");
            let (flat, nested): (Vec<_>, Vec<_>) = map.iter().partition(|(_, x)| is_flat(x));
            for (k, x) in &flat {
                let _ = writeln!(out, "- {k}: {}", scalar(x));
            }
            if !flat.is_empty() {
                out.push('\n');
            }
            for (k, x) in nested {
                section(out, level + 1, k, x);
            }
        }
        Value::Array(items) if !is_flat(v) => {
            let _ = writeln!(out, "{hashes} {title}\n");
            match table_columns(items) {
                Some(cols) => {
                    let shown: Vec<&String> = cols.iter().filter(|c| *c != "tolerances").collect();
                    let _ = writeln!(out, "| {} |", shown.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(" | "));
                    let _ = writeln!(out, "|{}", "---|".repeat(shown.len()));
                    for it in items {
                        let row: Vec<String> = shown.iter().map(|c| cell(&it[c.as_str()])).collect();
                        let _ = writeln!(out, "| {} |", row.join(" | "));
                    }
                    out.push('\n');
                }
                None => {
                    for (i, it) in items.iter().enumerate() {
                        section(out, level + 1, &format!("{title} [{i}]"), it);
                    }
                }
            }
        }
        _ => {
            let _ = writeln!(out, "- {title}: {}\n", scalar(v));
        }
    }
}
