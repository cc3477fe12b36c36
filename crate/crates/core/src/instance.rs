//! Text format for syzygy instances and matrices.
//!
//! ```text
//! # comment
//! vars: s t
//! a1: 11 - 4*s + 3*s^2 + 4*t
//! a2: 7 - 3*s + s^2 + 3*t
//! p: t - s + 2
//! q: s^2 + 1
//! M:
//!   4; 3
//!   3; 1
//! zero_dimensional: true
//! ```
//!
//! Generators are given either as `a1:`, `a2:`, ... lines or as one `a:` line
//! with `;`-separated entries (continued on indented lines). `M:` and `N:`
//! open blocks whose rows follow on indented lines with `;`-separated entries.
//! Matrix files hold rows the same way, optionally preceded by a `vars:` line.

use crate::error::ParseError;
use crate::poly::{format_polynomial, parse_polynomial, Polynomial};
use crate::polymat::{parse_matrix_lines, PolyMatrix};
use crate::syzygy::Grade2Instance;

fn is_indented(line: &str) -> bool {
    line.starts_with(' ') || line.starts_with('\t')
}

fn is_skippable(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

fn parse_vars(value: &str, line: usize, column: usize) -> Result<Vec<String>, ParseError> {
    let names: Vec<String> = value
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect();
    if names.is_empty() {
        return Err(ParseError::new(line, column, "no variables declared"));
    }
    for (i, name) in names.iter().enumerate() {
        let mut chars = name.chars();
        let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(ParseError::new(line, column, format!("invalid variable name '{name}'")));
        }
        if names[..i].contains(name) {
            return Err(ParseError::new(line, column, format!("variable '{name}' declared twice")));
        }
    }
    Ok(names)
}

fn parse_poly_at(text: &str, vars: &[String], line: usize, column: usize) -> Result<Polynomial, ParseError> {
    parse_polynomial(text, vars).map_err(|e| ParseError::new(line, column + e.column - 1, e.message))
}

/// Parses `;`-separated polynomials starting at `column` (1-based) of `line`.
fn parse_poly_list(
    text: &str,
    vars: &[String],
    line: usize,
    column: usize,
) -> Result<Vec<Polynomial>, ParseError> {
    let mut out = Vec::new();
    let mut offset = column;
    for part in text.split(';') {
        if !part.trim().is_empty() {
            out.push(parse_poly_at(part, vars, line, offset)?);
        }
        offset += part.len() + 1;
    }
    Ok(out)
}

enum Generators {
    Unset,
    Indexed(Vec<(usize, Polynomial, usize)>),
    Listed(Vec<Polynomial>),
}

/// Parses an instance file; errors carry the line and column.
pub fn parse_instance(text: &str) -> Result<Grade2Instance, ParseError> {
    let lines: Vec<&str> = text.lines().collect();
    let mut vars: Option<Vec<String>> = None;
    let mut gens = Generators::Unset;
    let mut p: Option<Polynomial> = None;
    let mut q: Option<Polynomial> = None;
    let mut m: Option<(PolyMatrix, usize)> = None;
    let mut n: Option<(PolyMatrix, usize)> = None;
    let mut zero_dimensional: Option<bool> = None;
    let mut i = 0;
    while i < lines.len() {
        let line = lines[i];
        let lineno = i + 1;
        i += 1;
        if is_skippable(line) {
            continue;
        }
        if is_indented(line) {
            return Err(ParseError::new(lineno, 1, "indented line outside a block"));
        }
        let Some(colon) = line.find(':') else {
            return Err(ParseError::new(lineno, 1, "expected 'key: value'"));
        };
        let key = line[..colon].trim();
        let value = &line[colon + 1..];
        let vcol = colon + 2;
        // Indented continuation lines belonging to this key.
        let block_start = i;
        while i < lines.len() && (is_indented(lines[i]) || lines[i].trim().is_empty()) {
            i += 1;
        }
        let block: Vec<(usize, &str)> = (block_start..i)
            .map(|k| (k + 1, lines[k]))
            .filter(|(_, l)| !is_skippable(l))
            .collect();
        if key == "vars" {
            if vars.is_some() {
                return Err(ParseError::new(lineno, 1, "duplicate 'vars'"));
            }
            vars = Some(parse_vars(value, lineno, vcol)?);
            continue;
        }
        if key == "zero_dimensional" {
            zero_dimensional = Some(match value.trim() {
                "true" => true,
                "false" => false,
                other => {
                    return Err(ParseError::new(
                        lineno,
                        vcol,
                        format!("expected true or false, found '{other}'"),
                    ))
                }
            });
            continue;
        }
        let Some(names) = vars.as_deref() else {
            return Err(ParseError::new(lineno, 1, "'vars' must be declared before polynomials"));
        };
        if key != "M" && key != "N" && key != "a" && !block.is_empty() {
            return Err(ParseError::new(block[0].0, 1, format!("unexpected indented line after '{key}'")));
        }
        match key {
            "p" | "q" => {
                let slot = if key == "p" { &mut p } else { &mut q };
                if slot.is_some() {
                    return Err(ParseError::new(lineno, 1, format!("duplicate '{key}'")));
                }
                *slot = Some(parse_poly_at(value, names, lineno, vcol)?);
            }
            "M" | "N" => {
                if !value.trim().is_empty() {
                    return Err(ParseError::new(lineno, vcol, "matrix rows go on the following indented lines"));
                }
                if block.is_empty() {
                    return Err(ParseError::new(lineno, 1, format!("empty '{key}' block")));
                }
                let mat = parse_matrix_lines(block.iter().copied(), names)?;
                let slot = if key == "M" { &mut m } else { &mut n };
                if slot.is_some() {
                    return Err(ParseError::new(lineno, 1, format!("duplicate '{key}'")));
                }
                *slot = Some((mat, lineno));
            }
            "a" => {
                if !matches!(gens, Generators::Unset) {
                    return Err(ParseError::new(lineno, 1, "generators given twice"));
                }
                let mut list = parse_poly_list(value, names, lineno, vcol)?;
                for (ln, l) in &block {
                    list.extend(parse_poly_list(l, names, *ln, 1)?);
                }
                if list.len() < 2 {
                    return Err(ParseError::new(lineno, 1, "at least two generators required"));
                }
                gens = Generators::Listed(list);
            }
            _ => {
                let index = key
                    .strip_prefix('a')
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| ParseError::new(lineno, 1, format!("unknown key '{key}'")))?;
                let poly = parse_poly_at(value, names, lineno, vcol)?;
                match &mut gens {
                    Generators::Unset => gens = Generators::Indexed(vec![(index, poly, lineno)]),
                    Generators::Indexed(v) => {
                        if v.iter().any(|(k, _, _)| *k == index) {
                            return Err(ParseError::new(lineno, 1, format!("duplicate 'a{index}'")));
                        }
                        v.push((index, poly, lineno));
                    }
                    Generators::Listed(_) => {
                        return Err(ParseError::new(lineno, 1, "generators given twice"));
                    }
                }
            }
        }
    }
    let end = lines.len().max(1);
    let vars = vars.ok_or_else(|| ParseError::new(end, 1, "missing 'vars'"))?;
    let a = match gens {
        Generators::Unset => return Err(ParseError::new(end, 1, "at least two generators required")),
        Generators::Listed(v) => v,
        Generators::Indexed(mut v) => {
            v.sort_by_key(|(k, _, _)| *k);
            for (pos, (k, _, line)) in v.iter().enumerate() {
                if *k != pos + 1 {
                    return Err(ParseError::new(*line, 1, format!("generator a{} is missing", pos + 1)));
                }
            }
            if v.len() < 2 {
                return Err(ParseError::new(v[0].2, 1, "at least two generators required"));
            }
            v.into_iter().map(|(_, p, _)| p).collect()
        }
    };
    let p = p.ok_or_else(|| ParseError::new(end, 1, "missing 'p'"))?;
    let q = q.ok_or_else(|| ParseError::new(end, 1, "missing 'q'"))?;
    let len = a.len();
    if let Some((mat, line)) = &m {
        if mat.shape() != (2, len) {
            return Err(ParseError::new(
                *line,
                1,
                format!("M must be 2x{len}, found {}x{}", mat.rows(), mat.cols()),
            ));
        }
    }
    if let Some((mat, line)) = &n {
        if mat.shape() != (len, 2) {
            return Err(ParseError::new(
                *line,
                1,
                format!("N must be {len}x2, found {}x{}", mat.rows(), mat.cols()),
            ));
        }
    }
    Ok(Grade2Instance {
        vars,
        a,
        p,
        q,
        m: m.map(|(x, _)| x),
        n: n.map(|(x, _)| x),
        zero_dimensional: zero_dimensional.unwrap_or(false),
    })
}

fn push_block(out: &mut String, key: &str, mat: &PolyMatrix, vars: &[String]) {
    out.push_str(key);
    out.push_str(":\n");
    for line in mat.to_text(vars).lines() {
        out.push_str("  ");
        out.push_str(line);
        out.push('\n');
    }
}

/// Writes an instance in the format read by [`parse_instance`].
pub fn format_instance(inst: &Grade2Instance) -> String {
    let vars = &inst.vars;
    let mut out = format!("vars: {}\n", vars.join(" "));
    for (i, a) in inst.a.iter().enumerate() {
        out.push_str(&format!("a{}: {}\n", i + 1, format_polynomial(a, vars)));
    }
    out.push_str(&format!("p: {}\n", format_polynomial(&inst.p, vars)));
    out.push_str(&format!("q: {}\n", format_polynomial(&inst.q, vars)));
    if let Some(m) = &inst.m {
        push_block(&mut out, "M", m, vars);
    }
    if let Some(n) = &inst.n {
        push_block(&mut out, "N", n, vars);
    }
    out.push_str(&format!("zero_dimensional: {}\n", inst.zero_dimensional));
    out
}

/// Parses a matrix file over `vars`. A leading `vars:` line, if present, must match.
pub fn parse_matrix_file(text: &str, vars: &[String]) -> Result<PolyMatrix, ParseError> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(rest) = line.trim_start().strip_prefix("vars:") {
            let declared = parse_vars(rest, i + 1, line.find(':').unwrap() + 2)?;
            if declared != vars {
                return Err(ParseError::new(
                    i + 1,
                    1,
                    format!("matrix declares variables '{}' but the instance uses '{}'", declared.join(" "), vars.join(" ")),
                ));
            }
            continue;
        }
        rows.push((i + 1, line));
    }
    parse_matrix_lines(rows.into_iter(), vars)
}

/// Writes a matrix file with a `vars:` header.
pub fn format_matrix_file(mat: &PolyMatrix, vars: &[String]) -> String {
    format!("vars: {}\n{}", vars.join(" "), mat.to_text(vars))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "vars: x y\na1: x\na2: y\np: x\nq: y\n";

    #[test]
    fn parses_indexed_and_listed_generators() {
        let a = parse_instance(SMALL).unwrap();
        let b = parse_instance("vars: x y\na: x; y\np: x\nq: y\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.a.len(), 2);
        assert!(!a.zero_dimensional);
    }

    #[test]
    fn empty_generator_list_is_rejected() {
        let err = parse_instance("vars: x\na:\np: x\nq: x^2\n").unwrap_err();
        assert_eq!(err.message, "at least two generators required");
        assert_eq!(err.line, 2);
    }

    #[test]
    fn matrix_shape_is_checked() {
        let text = format!("{SMALL}M:\n  1; 0; 0\n  0; 1; 0\n");
        let err = parse_instance(&text).unwrap_err();
        assert_eq!(err.line, 6);
        assert!(err.message.contains("2x2"), "{}", err.message);
    }

    #[test]
    fn errors_point_into_the_line() {
        let err = parse_instance("vars: x y\na1: x + z\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 9));
        let err = parse_instance("vars: x y\na1: x^-2\n").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn round_trips() {
        let text = format!("{SMALL}M:\n  1; 0\n  0; 1\nN:\n  1; 0\n  0; 1\nzero_dimensional: true\n");
        let inst = parse_instance(&text).unwrap();
        assert_eq!(format_instance(&inst), text);
        assert_eq!(parse_instance(&format_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn matrix_files_check_their_variables() {
        let vars = vec!["s".to_string(), "t".to_string()];
        let m = parse_matrix_file("vars: s t\ns; 1\n", &vars).unwrap();
        assert_eq!(m.shape(), (1, 2));
        assert!(parse_matrix_file("vars: x y\nx\n", &vars).is_err());
        assert_eq!(parse_matrix_file(&format_matrix_file(&m, &vars), &vars).unwrap(), m);
    }
}
