//! Deterministic text and JSON rendering of matrices and predicates.
//!
//! The same document always produces byte-identical output: label order
//! comes from the declared types, map iteration is sorted, and scalar
//! rendering is canonical (exact rationals, `inf`, lattice element names,
//! `{word,word}` languages).

use num::ToPrimitive;
use serde_json::{json, Value};

use quantrel::{Comonoid, Mat, Nat, QElem, Quantale, Trop};

/// `title : Src -> Dst` followed by an aligned entry grid.
pub fn mat_block(title: &str, m: &Mat) -> String {
    format!(
        "{title} : {} -> {}\n{}",
        m.src().name(),
        m.dst().name(),
        grid(m)
    )
}

/// Right-aligned grid with row labels down the side and column labels
/// across the top, two spaces between columns.
pub fn grid(m: &Mat) -> String {
    let q = m.quantale();
    let rows = m.src().size();
    let cols = m.dst().size();

    let row_width = m
        .src()
        .labels()
        .iter()
        .map(|l| l.chars().count())
        .max()
        .unwrap_or(0);
    let mut col_widths: Vec<usize> = (0..cols)
        .map(|x| m.dst().label(x).chars().count())
        .collect();
    let mut cells: Vec<Vec<String>> = Vec::with_capacity(rows);
    for y in 0..rows {
        let mut row = Vec::with_capacity(cols);
        for x in 0..cols {
            let cell = q.render(m.get(y, x));
            col_widths[x] = col_widths[x].max(cell.chars().count());
            row.push(cell);
        }
        cells.push(row);
    }

    let pad = |s: &str, w: usize| {
        let len = s.chars().count();
        format!("{}{s}", " ".repeat(w.saturating_sub(len)))
    };

    let mut out = String::new();
    out.push_str(&" ".repeat(row_width));
    for x in 0..cols {
        out.push_str("  ");
        out.push_str(&pad(m.dst().label(x), col_widths[x]));
    }
    out.push('\n');
    for y in 0..rows {
        out.push_str(&pad(m.src().label(y), row_width));
        for x in 0..cols {
            out.push_str("  ");
            out.push_str(&pad(&cells[y][x], col_widths[x]));
        }
        out.push('\n');
    }
    out
}

/// Crisp predicates print as member lists, `{s0, s1}`; general ones list
/// the whole diagonal, `{s0: m, s1: 1}`.
pub fn pred_line(p: &Comonoid) -> String {
    if p.is_crisp() {
        format!("{{{}}}", p.members().join(", "))
    } else {
        let q = p.quantale();
        let parts: Vec<String> = p
            .typ()
            .labels()
            .iter()
            .enumerate()
            .map(|(i, label)| format!("{label}: {}", q.render(p.entry(i))))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// One scalar in document syntax, so printed JSON can be pasted back
/// into a document: booleans as `true`/`false`, small whole costs as
/// numbers, everything else as the canonical string or word array.
pub fn entry_json(q: &Quantale, e: &QElem) -> Value {
    match e {
        QElem::Bool(b) => Value::Bool(*b),
        QElem::Trop(Trop::Fin(r)) => {
            if r.is_integer() {
                if let Some(k) = r.to_integer().to_u64() {
                    return json!(k);
                }
            }
            Value::String(q.render(e))
        }
        QElem::Trop(Trop::Inf) => Value::String("inf".into()),
        QElem::Nat(Nat::Fin(n)) => match n.to_u64() {
            Some(k) => json!(k),
            None => Value::String(q.render(e)),
        },
        QElem::Nat(Nat::Inf) => Value::String("inf".into()),
        QElem::Heyt(_) => Value::String(q.render(e)),
        QElem::Lang(words) => {
            Value::Array(words.iter().map(|w| Value::String(w.clone())).collect())
        }
    }
}

/// Matrix as a document-shaped object: `{"name", "src", "dst", "rows"}`.
pub fn mat_json(title: &str, m: &Mat) -> Value {
    let q = m.quantale();
    let rows: Vec<Value> = (0..m.src().size())
        .map(|y| {
            Value::Array(
                (0..m.dst().size())
                    .map(|x| entry_json(q, m.get(y, x)))
                    .collect(),
            )
        })
        .collect();
    json!({
        "name": title,
        "src": m.src().name(),
        "dst": m.dst().name(),
        "rows": rows,
    })
}

/// Predicate as a document-shaped object: members when crisp, the full
/// diagonal otherwise.
pub fn pred_json(p: &Comonoid) -> Value {
    if p.is_crisp() {
        json!({
            "type": p.typ().name(),
            "members": p.members(),
        })
    } else {
        let q = p.quantale();
        let diag: Vec<Value> = p.diag().iter().map(|e| entry_json(q, e)).collect();
        json!({
            "type": p.typ().name(),
            "diag": diag,
        })
    }
}
