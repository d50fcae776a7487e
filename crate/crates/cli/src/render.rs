//! Plain-text rendering of JSON results.

use std::fmt::Write;

use flagcoh::rootsys::{RootSystem, Weight};
use serde_json::Value;

fn as_character(v: &Value) -> Option<Vec<(Vec<i64>, i64)>> {
    let arr = v.as_array()?;
    arr.iter()
        .map(|t| {
            let o = t.as_object()?;
            if o.len() != 2 {
                return None;
            }
            let w = o.get("weight")?.as_array()?;
            let coords = w.iter().map(Value::as_i64).collect::<Option<Vec<_>>>()?;
            Some((coords, o.get("mult")?.as_i64()?))
        })
        .collect()
}

fn root_note(rs: Option<&RootSystem>, coords: &[i64]) -> String {
    let Some(rs) = rs else { return String::new() };
    if coords.len() != rs.rank() {
        return String::new();
    }
    let k = rs.root_basis_coords(&Weight::new(coords.to_vec()));
    let parts: Vec<String> = k.iter().map(ToString::to_string).collect();
    format!("  = ({}) in simple roots", parts.join(", "))
}

fn character(out: &mut String, terms: &[(Vec<i64>, i64)], indent: usize, rs: Option<&RootSystem>) {
    let pad = " ".repeat(indent);
    if terms.is_empty() {
        let _ = writeln!(out, "{pad}0");
        return;
    }
    for (w, m) in terms {
        let coords: Vec<String> = w.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            out,
            "{pad}{m:>4} x [{}]{}",
            coords.join(","),
            root_note(rs, w)
        );
    }
}

fn dim(terms: &[(Vec<i64>, i64)]) -> i64 {
    terms.iter().map(|(_, m)| m).sum()
}

fn value(out: &mut String, key: Option<&str>, v: &Value, indent: usize, rs: Option<&RootSystem>) {
    let pad = " ".repeat(indent);
    let label = key.map(|k| format!("{k}:")).unwrap_or_default();
    if let Some(terms) = as_character(v) {
        if !terms.is_empty() || key.is_some() {
            let _ = writeln!(out, "{pad}{label} (dim {})", dim(&terms));
            character(out, &terms, indent + 2, rs);
            return;
        }
    }
    match v {
        Value::Object(o)
            if key == Some("degrees") || key == Some("lower") || key == Some("upper") =>
        {
            let _ = writeln!(out, "{pad}{label}");
            if o.is_empty() {
                let _ = writeln!(out, "{pad}  all degrees zero");
            }
            for (d, c) in o {
                value(out, Some(&format!("H^{d}")), c, indent + 2, rs);
            }
        }
        Value::Object(o) => {
            if key.is_some() {
                let _ = writeln!(out, "{pad}{label}");
            }
            let inner = if key.is_some() { indent + 2 } else { indent };
            for (k, c) in o {
                value(out, Some(k), c, inner, rs);
            }
        }
        Value::Array(a)
            if a.iter()
                .all(|x| !x.is_object() && !x.is_array() && !x.is_string()) =>
        {
            let items: Vec<String> = a.iter().map(scalar).collect();
            let _ = writeln!(out, "{pad}{label} [{}]", items.join(", "));
        }
        Value::Array(a) if a.iter().all(Value::is_string) => {
            let _ = writeln!(out, "{pad}{label}");
            for x in a {
                let _ = writeln!(out, "{pad}  - {}", scalar(x));
            }
        }
        Value::Array(a) => {
            let _ = writeln!(out, "{pad}{label}");
            for (i, c) in a.iter().enumerate() {
                value(out, Some(&format!("[{i}]")), c, indent + 2, rs);
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{label} {}", scalar(other));
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn table(v: &Value, rs: Option<&RootSystem>) -> String {
    let mut out = String::new();
    value(&mut out, None, v, 0, rs);
    out
}
