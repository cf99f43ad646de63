//! The two line-oriented input formats: structure constants (`.alg`) and
//! quivers with relations (`.quiver`).
//!
//! `.alg`:
//! ```text
//! field Q                      # or: field Fp 7
//! basis e 0
//! basis x 1
//! idempotents e
//! simples o                    # optional names for the simples
//! mult e x = x                 # omitted products are zero
//! mult x e = x
//! involution x -> x            # optional; all basis elements or none
//! ```
//!
//! `.quiver`:
//! ```text
//! vertex 1 2
//! arrow a 1 2 1                # name source target degree
//! relation a.b.a = 0           # `p.q` applies q first
//! relation a1.b1 - b2.a2 = 0
//! maxdeg 4
//! involution arrow a -> b
//! ```

use std::fmt::Write as _;
use std::path::Path;

use crate::algcore::{AlgebraBuilder, GradedAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::quiver::{build_algebra, Arrow, PathCombination, QuiverPresentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Alg,
    Quiver,
}

/// By extension, then by the first keyword that only one format uses.
pub fn detect_format(path: Option<&Path>, text: &str) -> Format {
    match path.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some("alg") => return Format::Alg,
        Some("quiver") => return Format::Quiver,
        _ => {}
    }
    for line in lines(text) {
        match line.1.split_whitespace().next() {
            Some("vertex" | "arrow" | "relation" | "maxdeg") => return Format::Quiver,
            Some("basis" | "mult" | "idempotents") => return Format::Alg,
            _ => {}
        }
    }
    Format::Alg
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn at_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => parse_err(line, other.to_string()),
    })
}

/// The field named in the text, or the override.
fn read_field(text: &str, field_override: Option<Field>) -> Result<Field> {
    let mut found = None;
    for (n, l) in lines(text) {
        if let Some(rest) = l.strip_prefix("field ") {
            if found.is_some() {
                return Err(parse_err(n, "duplicate field line"));
            }
            found = Some(at_line(n, rest.parse::<Field>())?);
        }
    }
    Ok(field_override.or(found).unwrap_or(Field::Rationals))
}

/// Splits `2*z - w + -1/2*y` into `(coefficient, label)` terms. A lone `0`
/// is the empty sum.
pub fn parse_linear(field: Field, expr: &str) -> Result<Vec<(Scalar, String)>> {
    let expr = expr.trim();
    if expr == "0" {
        return Ok(Vec::new());
    }
    let mut raw = Vec::new();
    let mut cur = String::new();
    for ch in expr.chars() {
        let t = cur.trim();
        if (ch == '+' || ch == '-') && !t.is_empty() && !t.ends_with(['*', '+', '-']) {
            raw.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    raw.push(cur);
    let mut terms = Vec::new();
    for t in raw {
        let mut s = t.trim();
        let mut negative = false;
        while let Some(c) = s.chars().next().filter(|c| *c == '+' || *c == '-') {
            negative ^= c == '-';
            s = s[1..].trim_start();
        }
        let (coeff, label) = match s.split_once('*') {
            Some((c, l)) => (field.parse_scalar(c)?, l.trim()),
            None => (field.one(), s),
        };
        if label.is_empty() || label.contains(char::is_whitespace) {
            return Err(Error::Field(format!("bad term `{}`", t.trim())));
        }
        let coeff = if negative { field.neg(&coeff) } else { coeff };
        terms.push((coeff, label.to_string()));
    }
    Ok(terms)
}

fn resolve(b: &AlgebraBuilder, line: usize, terms: Vec<(Scalar, String)>) -> Result<Vec<(usize, Scalar)>> {
    terms
        .into_iter()
        .map(|(c, l)| {
            b.index_of(&l)
                .map(|i| (i, c))
                .ok_or_else(|| parse_err(line, format!("unknown basis label `{l}`")))
        })
        .collect()
}

pub fn parse_alg(text: &str, field_override: Option<Field>) -> Result<GradedAlgebra> {
    let field = read_field(text, field_override)?;
    let mut b = AlgebraBuilder::new(field);
    let mut idempotents_seen = false;
    let mut names = None;
    for (n, l) in lines(text) {
        let (kw, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        match kw {
            "field" => {}
            "basis" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [label, deg] = parts[..] else {
                    return Err(parse_err(n, "expected `basis <label> <degree>`"));
                };
                let deg: i32 = deg.parse().map_err(|_| parse_err(n, format!("bad degree `{deg}`")))?;
                at_line(n, b.basis(label, deg))?;
            }
            "idempotents" => {
                if idempotents_seen {
                    return Err(parse_err(n, "duplicate idempotents line"));
                }
                idempotents_seen = true;
                let idx = rest
                    .split_whitespace()
                    .map(|l| b.index_of(l).ok_or_else(|| parse_err(n, format!("unknown basis label `{l}`"))))
                    .collect::<Result<Vec<_>>>()?;
                at_line(n, b.idempotents(idx))?;
            }
            "simples" => names = Some(rest.split_whitespace().map(str::to_string).collect::<Vec<_>>()),
            "mult" => {
                let (lhs, rhs) = rest.split_once('=').ok_or_else(|| parse_err(n, "expected `mult <x> <y> = <expr>`"))?;
                let parts: Vec<&str> = lhs.split_whitespace().collect();
                let [x, y] = parts[..] else {
                    return Err(parse_err(n, "expected two factors"));
                };
                let find = |l: &str| b.index_of(l).ok_or_else(|| parse_err(n, format!("unknown basis label `{l}`")));
                let (i, j) = (find(x)?, find(y)?);
                let terms = resolve(&b, n, at_line(n, parse_linear(field, rhs))?)?;
                at_line(n, b.product(i, j, terms))?;
            }
            "involution" => {
                let (x, rhs) = rest.split_once("->").ok_or_else(|| parse_err(n, "expected `involution <x> -> <expr>`"))?;
                let i = b.index_of(x.trim()).ok_or_else(|| parse_err(n, format!("unknown basis label `{}`", x.trim())))?;
                let terms = resolve(&b, n, at_line(n, parse_linear(field, rhs))?)?;
                at_line(n, b.involution(i, terms))?;
            }
            other => return Err(parse_err(n, format!("unknown keyword `{other}`"))),
        }
    }
    if !idempotents_seen {
        return Err(parse_err(0, "missing idempotents line"));
    }
    if let Some(names) = names {
        b.lambda_names(names);
    }
    b.build()
}

fn parse_path_combination(q: &QuiverPresentation, line: usize, expr: &str) -> Result<PathCombination> {
    at_line(line, parse_linear(q.field, expr))?
        .into_iter()
        .map(|(c, p)| {
            let names: Vec<&str> = p.split('.').collect();
            at_line(line, q.path(&names)).map(|path| (c, path))
        })
        .collect()
}

pub fn parse_quiver(text: &str, field_override: Option<Field>) -> Result<QuiverPresentation> {
    let field = read_field(text, field_override)?;
    let mut q = QuiverPresentation::new(field);
    let mut deferred = Vec::new();
    let mut maxdeg_seen = false;
    for (n, l) in lines(text) {
        let (kw, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        match kw {
            "field" => {}
            "vertex" => {
                if rest.is_empty() {
                    return Err(parse_err(n, "expected `vertex <name>...`"));
                }
                for v in rest.split_whitespace() {
                    if q.vertex_index(v).is_some() {
                        return Err(parse_err(n, format!("duplicate vertex `{v}`")));
                    }
                    q.vertices.push(v.to_string());
                }
            }
            "arrow" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [name, s, t, deg] = parts[..] else {
                    return Err(parse_err(n, "expected `arrow <name> <source> <target> <degree>`"));
                };
                if q.arrow_index(name).is_some() {
                    return Err(parse_err(n, format!("duplicate arrow `{name}`")));
                }
                if name.contains(['.', '*', '+', '-']) {
                    return Err(parse_err(n, format!("bad arrow name `{name}`")));
                }
                let vertex = |v: &str| q.vertex_index(v).ok_or_else(|| parse_err(n, format!("dangling endpoint `{v}` of arrow {name}")));
                let degree: u32 = deg.parse().map_err(|_| parse_err(n, format!("bad degree `{deg}`")))?;
                q.arrows.push(Arrow { name: name.to_string(), source: vertex(s)?, target: vertex(t)?, degree });
            }
            "maxdeg" => {
                if maxdeg_seen {
                    return Err(parse_err(n, "duplicate maxdeg line"));
                }
                maxdeg_seen = true;
                q.max_degree = rest.parse().map_err(|_| parse_err(n, format!("bad maxdeg `{rest}`")))?;
            }
            "relation" | "involution" => deferred.push((n, kw, rest)),
            other => return Err(parse_err(n, format!("unknown keyword `{other}`"))),
        }
    }
    if !maxdeg_seen {
        return Err(parse_err(0, "missing maxdeg line"));
    }
    for (n, kw, rest) in deferred {
        if kw == "relation" {
            let (lhs, rhs) = rest.split_once('=').ok_or_else(|| parse_err(n, "expected `relation <expr> = 0`"))?;
            if rhs.trim() != "0" {
                return Err(parse_err(n, "relations must have right-hand side 0"));
            }
            let comb = parse_path_combination(&q, n, lhs)?;
            if comb.is_empty() {
                return Err(parse_err(n, "empty relation"));
            }
            q.relations.push(comb);
        } else {
            let body = rest
                .strip_prefix("arrow")
                .ok_or_else(|| parse_err(n, "expected `involution arrow <a> -> <expr>`"))?;
            let (a, rhs) = body.split_once("->").ok_or_else(|| parse_err(n, "expected `->`"))?;
            let ai = q.arrow_index(a.trim()).ok_or_else(|| parse_err(n, format!("unknown arrow `{}`", a.trim())))?;
            if q.involution.iter().any(|(x, _)| *x == ai) {
                return Err(parse_err(n, format!("duplicate involution for `{}`", a.trim())));
            }
            let comb = parse_path_combination(&q, n, rhs)?;
            q.involution.push((ai, comb));
        }
    }
    Ok(q)
}

/// Reads and compiles an input of either format.
pub fn parse_input(path: Option<&Path>, text: &str, field_override: Option<Field>) -> Result<GradedAlgebra> {
    match detect_format(path, text) {
        Format::Alg => parse_alg(text, field_override),
        Format::Quiver => build_algebra(&parse_quiver(text, field_override)?),
    }
}

pub fn load(path: &Path, field_override: Option<Field>) -> Result<GradedAlgebra> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_input(Some(path), &text, field_override)
}

fn format_linear(a: &GradedAlgebra, v: &[Scalar]) -> String {
    let k = a.field();
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if k.is_zero(c) {
            continue;
        }
        let neg = k.is_negative_literal(c);
        let mag = if neg { k.neg(c) } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if k.is_one(&mag) {
            out.push_str(a.label(i));
        } else {
            let _ = write!(out, "{}*{}", k.format(&mag), a.label(i));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Serializes in the `.alg` format; `parse_alg` reads it back unchanged.
pub fn write_alg(a: &GradedAlgebra) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "field {}", a.field());
    for i in 0..a.dim() {
        let _ = writeln!(out, "basis {} {}", a.label(i), a.degree(i));
    }
    let idem: Vec<&str> = a.idempotents().iter().map(|&i| a.label(i)).collect();
    let _ = writeln!(out, "idempotents {}", idem.join(" "));
    let _ = writeln!(out, "simples {}", a.lambda_names().join(" "));
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let p = a.product(i, j);
            if p.iter().any(|c| !a.field().is_zero(c)) {
                let _ = writeln!(out, "mult {} {} = {}", a.label(i), a.label(j), format_linear(a, p));
            }
        }
    }
    if a.has_involution() {
        for i in 0..a.dim() {
            let s = a.star(i).expect("involution present");
            let _ = writeln!(out, "involution {} -> {}", a.label(i), format_linear(a, s));
        }
    }
    out
}
