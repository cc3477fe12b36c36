//! JSON values and aligned text tables for reports.

use serde_json::{json, Value};
use syz_core::poly::format_polynomial;
use syz_core::syzygy::{BoundComparison, VerificationReport};
use syz_core::{PolyMatrix, Polynomial};

pub fn poly(p: &Polynomial, vars: &[String]) -> String {
    format_polynomial(p, vars)
}

/// Rows of polynomial strings.
pub fn matrix(m: &PolyMatrix, vars: &[String]) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|p| Value::String(poly(p, vars))).collect()))
            .collect(),
    )
}

pub fn bound(c: &BoundComparison) -> Value {
    json!({
        "formula": c.formula.id(),
        "quantity": c.quantity,
        "degree": c.degree,
        "bound": c.bound.to_string(),
        "satisfied": c.satisfied,
    })
}

pub fn verification(v: &VerificationReport) -> Value {
    json!({
        "passed": v.passed(),
        "syzygy_ok": v.syzygy_ok,
        "minors_ok": v.minors_ok,
        "unit": v.unit.as_ref().map(|u| u.to_string()),
        "degrees": v.degrees,
        "bounds": v.bound_comparisons.iter().map(bound).collect::<Vec<_>>(),
    })
}

/// Left-aligned columns separated by two spaces.
pub fn table(rows: &[Vec<String>]) -> String {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|j| rows.iter().filter_map(|r| r.get(j)).map(|c| c.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let mut line = String::new();
        for (j, cell) in r.iter().enumerate() {
            if j + 1 == r.len() {
                line.push_str(cell);
            } else {
                line.push_str(&format!("{cell:<w$}  ", w = widths[j]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}

pub fn matrix_table(m: &PolyMatrix, vars: &[String]) -> String {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|p| poly(p, vars)).collect())
        .collect();
    indent(&table(&rows))
}

pub fn bounds_table(comparisons: &[BoundComparison]) -> String {
    let mut rows = vec![vec!["formula".into(), "quantity".into(), "degree".into(), "bound".into(), "ok".into()]];
    for c in comparisons {
        rows.push(vec![
            c.formula.id().into(),
            c.quantity.clone(),
            c.degree.to_string(),
            c.bound.to_string(),
            if c.satisfied { "yes".into() } else { "NO".into() },
        ]);
    }
    indent(&table(&rows))
}

pub fn verification_lines(v: &VerificationReport) -> Vec<Vec<String>> {
    let degrees: Vec<String> = v
        .degrees
        .iter()
        .map(|d| d.map_or("-inf".to_string(), |d| d.to_string()))
        .collect();
    vec![
        vec!["syzygies".into(), yes_no(v.syzygy_ok.iter().all(|&b| b))],
        vec!["minors".into(), yes_no(v.minors_ok)],
        vec!["unit".into(), v.unit.as_ref().map_or("-".to_string(), |u| u.to_string())],
        vec!["column degrees".into(), degrees.join(" ")],
    ]
}

pub fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}
