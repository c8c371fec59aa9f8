//! Loading verification documents.
//!
//! A document is a single JSON object with up to six sections:
//!
//! ```json
//! {
//!   "quantale":   "boolean",
//!   "types":      { "S": ["s0", "s1"], "Two": {"sum": ["S", "T"]} },
//!   "matrices":   { "step": {"src": "S", "dst": "S", "rows": [[0, 1], [0, 0]]} },
//!   "predicates": { "b": {"type": "S", "members": ["s0"]},
//!                   "w": {"type": "S", "diag": [0, "inf"]} },
//!   "programs":   { "loop": {"while": {"cond": "b", "body": {"atom": "step"}}} },
//!   "assertions": [ {"pre": "b", "prog": "loop", "post": "u"},
//!                   {"pre": "b", "term": "step", "post": "u"} ]
//! }
//! ```
//!
//! Only `"quantale"` is required; the other sections default to empty.
//! The quantale selector is one of the strings `"boolean"`, `"tropical"`,
//! `"natural"`, or a table `{"heyting": {"elements": [...], "below":
//! [[lo, hi], ...]}}`, or an alphabet `{"language": ["a", "b"]}`.
//!
//! Matrix and predicate entries are written per carrier:
//!
//! * boolean — `true`/`false` or `0`/`1`;
//! * tropical — nonnegative integers, or strings `"inf"`, `"3/2"`, `"1.5"`
//!   (decimals parse to exact rationals);
//! * natural — nonnegative integers or `"inf"` (integer strings accepted);
//! * heyting — element names as strings;
//! * language — arrays of words over the alphabet, e.g. `["", "ab"]`.
//!
//! Every diagnostic names the document key it is complaining about, so a
//! failed load can be traced to one line of the input.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num::{BigInt, BigRational, BigUint, Signed, Zero};
use serde_json::Value;

use quantrel::sums::make_sum;
use quantrel::{Comonoid, Env, FinType, HeytingTable, Mat, Nat, Program, QElem, Quantale, Trop};

/// A load-time failure: malformed JSON, a dangling name, a shape mismatch.
/// The message always names the offending document key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocError(pub String);

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for DocError {}

type DocResult<T> = Result<T, DocError>;

fn fail<T>(at: &str, msg: impl fmt::Display) -> DocResult<T> {
    Err(DocError(format!("{at}: {msg}")))
}

/// One assertion to check: a precondition name, a body, a postcondition name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assertion {
    pub pre: String,
    pub body: AssertionBody,
    pub post: String,
}

/// What sits between the pre- and postcondition: a named program or a
/// named matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AssertionBody {
    Prog(String),
    Term(String),
}

/// A fully resolved verification document. All names referenced anywhere
/// in it are guaranteed to resolve, and every matrix and predicate
/// type-checks against the declared types.
#[derive(Debug, Clone)]
pub struct Document {
    pub quantale: Quantale,
    pub matrices: BTreeMap<String, Mat>,
    pub predicates: BTreeMap<String, Comonoid>,
    pub programs: BTreeMap<String, Program>,
    pub assertions: Vec<Assertion>,
    /// Compilation environment over the inferred program state type;
    /// present whenever the document declares at least one program.
    pub env: Option<Env>,
}

/// Read and resolve the document at `path`. `override_quantale`, when
/// given, replaces the document's own selector before any entries are
/// parsed (the command-line flag accepts `boolean`, `tropical`, or
/// `natural` — table-based carriers can only be declared in the file).
pub fn load_document(path: &Path, override_quantale: Option<&str>) -> DocResult<Document> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DocError(format!("cannot read `{}`: {e}", path.display())))?;
    let root: Value = serde_json::from_str(&text)
        .map_err(|e| DocError(format!("`{}` is not valid JSON: {e}", path.display())))?;
    parse_document(&root, override_quantale)
}

/// Resolve an already-parsed JSON value into a document.
pub fn parse_document(root: &Value, override_quantale: Option<&str>) -> DocResult<Document> {
    let obj = as_object(root, "document")?;
    check_keys(
        obj,
        "document",
        &[
            "quantale",
            "types",
            "matrices",
            "predicates",
            "programs",
            "assertions",
        ],
    )?;

    let quantale = match override_quantale {
        Some(name) => named_quantale(name)
            .ok_or_else(|| DocError(format!("unknown quantale override `{name}`")))?,
        None => {
            let sel = obj
                .get("quantale")
                .ok_or_else(|| DocError("document: missing required key `quantale`".into()))?;
            parse_quantale(sel)?
        }
    };

    let types = parse_types(obj.get("types"), &quantale)?;
    let matrices = parse_matrices(obj.get("matrices"), &types, &quantale)?;
    let predicates = parse_predicates(obj.get("predicates"), &types, &quantale)?;
    let programs = parse_programs(obj.get("programs"))?;
    let assertions = parse_assertions(obj.get("assertions"), &matrices, &predicates, &programs)?;

    let env = build_env(
        &types,
        &matrices,
        &predicates,
        &programs,
        &assertions,
        &quantale,
    )?;

    Ok(Document {
        quantale,
        matrices,
        predicates,
        programs,
        assertions,
        env,
    })
}

// ---------------------------------------------------------------------------
// JSON plumbing

fn as_object<'v>(v: &'v Value, at: &str) -> DocResult<&'v serde_json::Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| DocError(format!("{at}: expected a JSON object")))
}

fn as_array<'v>(v: &'v Value, at: &str) -> DocResult<&'v Vec<Value>> {
    v.as_array()
        .ok_or_else(|| DocError(format!("{at}: expected a JSON array")))
}

fn as_str<'v>(v: &'v Value, at: &str) -> DocResult<&'v str> {
    v.as_str()
        .ok_or_else(|| DocError(format!("{at}: expected a JSON string")))
}

/// Reject unknown keys so typos surface as diagnostics instead of being
/// silently ignored.
fn check_keys(obj: &serde_json::Map<String, Value>, at: &str, allowed: &[&str]) -> DocResult<()> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return fail(
                at,
                format!(
                    "unknown key `{key}` (expected one of: {})",
                    allowed.join(", ")
                ),
            );
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Quantale selector

fn named_quantale(name: &str) -> Option<Quantale> {
    match name {
        "boolean" => Some(Quantale::boolean()),
        "tropical" => Some(Quantale::tropical()),
        "natural" => Some(Quantale::natural()),
        _ => None,
    }
}

fn parse_quantale(sel: &Value) -> DocResult<Quantale> {
    let at = "quantale";
    match sel {
        Value::String(name) => named_quantale(name).ok_or_else(|| {
            DocError(format!(
                "{at}: unknown quantale `{name}` (expected boolean, tropical, natural, \
                 or a heyting/language object)"
            ))
        }),
        Value::Object(obj) => {
            check_keys(obj, at, &["heyting", "language"])?;
            match (obj.get("heyting"), obj.get("language")) {
                (Some(table), None) => parse_heyting(table),
                (None, Some(letters)) => {
                    let arr = as_array(letters, "quantale.language")?;
                    let mut names = Vec::with_capacity(arr.len());
                    for (i, v) in arr.iter().enumerate() {
                        names.push(as_str(v, &format!("quantale.language[{i}]"))?);
                    }
                    Quantale::language(names.iter().copied())
                        .map_err(|e| DocError(format!("quantale.language: {e}")))
                }
                _ => fail(at, "expected exactly one of `heyting` or `language`"),
            }
        }
        _ => fail(at, "expected a string or an object"),
    }
}

fn parse_heyting(table: &Value) -> DocResult<Quantale> {
    let at = "quantale.heyting";
    let obj = as_object(table, at)?;
    check_keys(obj, at, &["elements", "below"])?;
    let elements = as_array(
        obj.get("elements")
            .ok_or_else(|| DocError(format!("{at}: missing key `elements`")))?,
        &format!("{at}.elements"),
    )?;
    let mut names = Vec::with_capacity(elements.len());
    for (i, v) in elements.iter().enumerate() {
        names.push(as_str(v, &format!("{at}.elements[{i}]"))?.to_string());
    }
    let below_val = obj
        .get("below")
        .ok_or_else(|| DocError(format!("{at}: missing key `below`")))?;
    let mut below: Vec<(String, String)> = Vec::new();
    for (i, pair) in as_array(below_val, &format!("{at}.below"))?
        .iter()
        .enumerate()
    {
        let at_pair = format!("{at}.below[{i}]");
        let arr = as_array(pair, &at_pair)?;
        if arr.len() != 2 {
            return fail(&at_pair, "expected a [lower, upper] pair");
        }
        below.push((
            as_str(&arr[0], &at_pair)?.to_string(),
            as_str(&arr[1], &at_pair)?.to_string(),
        ));
    }
    let table = HeytingTable::new(&names, &below).map_err(|e| DocError(format!("{at}: {e}")))?;
    Ok(Quantale::heyting(table))
}

// ---------------------------------------------------------------------------
// Types

fn parse_types(section: Option<&Value>, q: &Quantale) -> DocResult<BTreeMap<String, FinType>> {
    let Some(section) = section else {
        return Ok(BTreeMap::new());
    };
    let obj = as_object(section, "types")?;

    // First pass: plain label lists. Sum declarations wait until their
    // components exist.
    let mut resolved: BTreeMap<String, FinType> = BTreeMap::new();
    let mut sums: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (name, decl) in obj {
        let at = format!("types.{name}");
        match decl {
            Value::Array(labels) => {
                let mut names = Vec::with_capacity(labels.len());
                for (i, v) in labels.iter().enumerate() {
                    names.push(as_str(v, &format!("{at}[{i}]"))?);
                }
                let t = FinType::new(name, &names).map_err(|e| DocError(format!("{at}: {e}")))?;
                resolved.insert(name.clone(), t);
            }
            Value::Object(sum) => {
                check_keys(sum, &at, &["sum"])?;
                let comps = as_array(
                    sum.get("sum")
                        .ok_or_else(|| DocError(format!("{at}: missing key `sum`")))?,
                    &format!("{at}.sum"),
                )?;
                let mut comp_names = Vec::with_capacity(comps.len());
                for (i, v) in comps.iter().enumerate() {
                    comp_names.push(as_str(v, &format!("{at}.sum[{i}]"))?.to_string());
                }
                sums.insert(name.clone(), comp_names);
            }
            _ => return fail(&at, "expected a label array or {\"sum\": [...]}"),
        }
    }

    // Sum declarations may reference other sums; resolve in passes until
    // nothing new lands, then anything left is dangling or cyclic.
    while !sums.is_empty() {
        let ready: Vec<String> = sums
            .iter()
            .filter(|(_, comps)| comps.iter().all(|c| resolved.contains_key(c)))
            .map(|(name, _)| name.clone())
            .collect();
        if ready.is_empty() {
            let (name, comps) = sums.iter().next().expect("nonempty");
            let missing = comps
                .iter()
                .find(|c| !resolved.contains_key(*c))
                .expect("an unresolved component exists");
            return fail(
                &format!("types.{name}"),
                format!("component `{missing}` does not resolve (undeclared or cyclic)"),
            );
        }
        for name in ready {
            let comps = sums.remove(&name).expect("just listed");
            let parts: Vec<FinType> = comps.iter().map(|c| resolved[c].clone()).collect();
            let sum =
                make_sum(&name, &parts, q).map_err(|e| DocError(format!("types.{name}: {e}")))?;
            resolved.insert(name, sum.total().clone());
        }
    }
    Ok(resolved)
}

// ---------------------------------------------------------------------------
// Scalar entries

/// Parse one matrix/predicate entry in the carrier's document syntax.
pub fn parse_entry(q: &Quantale, v: &Value, at: &str) -> DocResult<QElem> {
    let elem = match q {
        Quantale::Boolean => match v {
            Value::Bool(b) => QElem::Bool(*b),
            Value::Number(n) if n.as_u64() == Some(0) => QElem::Bool(false),
            Value::Number(n) if n.as_u64() == Some(1) => QElem::Bool(true),
            _ => return fail(at, "expected true/false or 0/1"),
        },
        Quantale::Tropical => match v {
            Value::Number(n) => match n.as_u64() {
                Some(k) => QElem::trop_int(k),
                None => {
                    return fail(
                        at,
                        "expected a nonnegative integer (write other costs as strings: \
                         \"inf\", \"3/2\", \"1.5\")",
                    )
                }
            },
            Value::String(s) => QElem::Trop(parse_trop_string(s, at)?),
            _ => return fail(at, "expected a cost: integer, \"inf\", \"3/2\", or \"1.5\""),
        },
        Quantale::Natural => match v {
            Value::Number(n) => match n.as_u64() {
                Some(k) => QElem::nat_int(k),
                None => return fail(at, "expected a nonnegative integer or \"inf\""),
            },
            Value::String(s) if s == "inf" => QElem::nat_inf(),
            Value::String(s) => match BigUint::from_str(s) {
                Ok(n) => QElem::Nat(Nat::Fin(n)),
                Err(_) => return fail(at, format!("`{s}` is not a natural number or \"inf\"")),
            },
            _ => return fail(at, "expected a nonnegative integer or \"inf\""),
        },
        Quantale::FiniteHeyting(table) => {
            let name = as_str(v, at)?;
            match table.index_of(name) {
                Some(i) => QElem::Heyt(i),
                None => return fail(at, format!("`{name}` is not a lattice element")),
            }
        }
        Quantale::Language(_) => {
            let words = as_array(v, at)?;
            let mut set = Vec::with_capacity(words.len());
            for (i, w) in words.iter().enumerate() {
                set.push(as_str(w, &format!("{at}[{i}]"))?);
            }
            QElem::lang(set)
        }
    };
    if !q.contains(&elem) {
        return fail(
            at,
            format!("`{}` is outside the {} carrier", q.render(&elem), q.kind()),
        );
    }
    Ok(elem)
}

fn parse_trop_string(s: &str, at: &str) -> DocResult<Trop> {
    if s == "inf" {
        return Ok(Trop::Inf);
    }
    let ratio = if let Some((num, den)) = s.split_once('/') {
        let num = parse_bigint(num.trim(), at, s)?;
        let den = parse_bigint(den.trim(), at, s)?;
        if den.is_zero() {
            return fail(at, format!("`{s}` has a zero denominator"));
        }
        BigRational::new(num, den)
    } else if let Some((whole, frac)) = s.split_once('.') {
        let digits = format!("{whole}{frac}");
        let num = parse_bigint(&digits, at, s)?;
        let den = num::pow(BigInt::from(10), frac.len());
        BigRational::new(num, den)
    } else {
        BigRational::from(parse_bigint(s, at, s)?)
    };
    if ratio.is_negative() {
        return fail(at, format!("`{s}` is negative; costs are nonnegative"));
    }
    Ok(Trop::Fin(ratio))
}

fn parse_bigint(digits: &str, at: &str, whole: &str) -> DocResult<BigInt> {
    BigInt::from_str(digits).map_err(|_| {
        DocError(format!(
            "{at}: `{whole}` is not a cost (integer, a/b, or a.b)"
        ))
    })
}

// ---------------------------------------------------------------------------
// Matrices

fn parse_matrices(
    section: Option<&Value>,
    types: &BTreeMap<String, FinType>,
    q: &Quantale,
) -> DocResult<BTreeMap<String, Mat>> {
    let Some(section) = section else {
        return Ok(BTreeMap::new());
    };
    let obj = as_object(section, "matrices")?;
    let mut out = BTreeMap::new();
    for (name, decl) in obj {
        let at = format!("matrices.{name}");
        let m = as_object(decl, &at)?;
        check_keys(m, &at, &["src", "dst", "rows"])?;
        let src = lookup_type(m.get("src"), types, &format!("{at}.src"))?;
        let dst = lookup_type(m.get("dst"), types, &format!("{at}.dst"))?;
        let rows_val = m
            .get("rows")
            .ok_or_else(|| DocError(format!("{at}: missing key `rows`")))?;
        let rows_json = as_array(rows_val, &format!("{at}.rows"))?;
        let mut rows = Vec::with_capacity(rows_json.len());
        for (y, row) in rows_json.iter().enumerate() {
            let at_row = format!("{at}.rows[{y}]");
            let cells = as_array(row, &at_row)?;
            let mut parsed = Vec::with_capacity(cells.len());
            for (x, cell) in cells.iter().enumerate() {
                parsed.push(parse_entry(q, cell, &format!("{at_row}[{x}]"))?);
            }
            rows.push(parsed);
        }
        let mat = Mat::new(&src, &dst, q, rows).map_err(|e| DocError(format!("{at}: {e}")))?;
        out.insert(name.clone(), mat);
    }
    Ok(out)
}

fn lookup_type(
    v: Option<&Value>,
    types: &BTreeMap<String, FinType>,
    at: &str,
) -> DocResult<FinType> {
    let v = v.ok_or_else(|| DocError(format!("{at}: missing")))?;
    let name = as_str(v, at)?;
    types
        .get(name)
        .cloned()
        .ok_or_else(|| DocError(format!("{at}: unknown type `{name}`")))
}

// ---------------------------------------------------------------------------
// Predicates

fn parse_predicates(
    section: Option<&Value>,
    types: &BTreeMap<String, FinType>,
    q: &Quantale,
) -> DocResult<BTreeMap<String, Comonoid>> {
    let Some(section) = section else {
        return Ok(BTreeMap::new());
    };
    let obj = as_object(section, "predicates")?;
    let mut out = BTreeMap::new();
    for (name, decl) in obj {
        let at = format!("predicates.{name}");
        let p = as_object(decl, &at)?;
        check_keys(p, &at, &["type", "members", "diag"])?;
        let typ = lookup_type(p.get("type"), types, &format!("{at}.type"))?;
        let pred = match (p.get("members"), p.get("diag")) {
            (Some(members), None) => {
                let arr = as_array(members, &format!("{at}.members"))?;
                let mut labels = Vec::with_capacity(arr.len());
                for (i, v) in arr.iter().enumerate() {
                    labels.push(as_str(v, &format!("{at}.members[{i}]"))?);
                }
                Comonoid::from_members(&typ, q, &labels)
                    .map_err(|e| DocError(format!("{at}: {e}")))?
            }
            (None, Some(diag)) => {
                let arr = as_array(diag, &format!("{at}.diag"))?;
                let mut entries = Vec::with_capacity(arr.len());
                for (i, v) in arr.iter().enumerate() {
                    entries.push(parse_entry(q, v, &format!("{at}.diag[{i}]"))?);
                }
                Comonoid::new(&typ, q, entries).map_err(|e| DocError(format!("{at}: {e}")))?
            }
            _ => return fail(&at, "expected exactly one of `members` or `diag`"),
        };
        out.insert(name.clone(), pred);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Programs

fn parse_programs(section: Option<&Value>) -> DocResult<BTreeMap<String, Program>> {
    let Some(section) = section else {
        return Ok(BTreeMap::new());
    };
    let obj = as_object(section, "programs")?;
    let mut out = BTreeMap::new();
    for (name, decl) in obj {
        out.insert(
            name.clone(),
            parse_program(decl, &format!("programs.{name}"))?,
        );
    }
    Ok(out)
}

fn parse_program(v: &Value, at: &str) -> DocResult<Program> {
    let obj = as_object(v, at)?;
    if obj.len() != 1 {
        return fail(
            at,
            "expected exactly one of: skip, abort, atom, seq, choice, cond, while",
        );
    }
    let (kind, body) = obj.iter().next().expect("one entry");
    match kind.as_str() {
        "skip" => {
            as_object(body, &format!("{at}.skip"))?;
            Ok(Program::Skip)
        }
        "abort" => {
            as_object(body, &format!("{at}.abort"))?;
            Ok(Program::Abort)
        }
        "atom" => Ok(Program::Atom(
            as_str(body, &format!("{at}.atom"))?.to_string(),
        )),
        "seq" => {
            let parts = as_array(body, &format!("{at}.seq"))?;
            let mut programs = Vec::with_capacity(parts.len());
            for (i, part) in parts.iter().enumerate() {
                programs.push(parse_program(part, &format!("{at}.seq[{i}]"))?);
            }
            Ok(Program::Seq(programs))
        }
        "choice" => {
            let parts = as_array(body, &format!("{at}.choice"))?;
            let mut programs = Vec::with_capacity(parts.len());
            for (i, part) in parts.iter().enumerate() {
                programs.push(parse_program(part, &format!("{at}.choice[{i}]"))?);
            }
            Ok(Program::Choice(programs))
        }
        "cond" => {
            let at_cond = format!("{at}.cond");
            let c = as_object(body, &at_cond)?;
            check_keys(c, &at_cond, &["if", "then", "else"])?;
            let guard = as_str(
                c.get("if")
                    .ok_or_else(|| DocError(format!("{at_cond}: missing key `if`")))?,
                &format!("{at_cond}.if"),
            )?;
            let then = parse_program(
                c.get("then")
                    .ok_or_else(|| DocError(format!("{at_cond}: missing key `then`")))?,
                &format!("{at_cond}.then"),
            )?;
            let els = parse_program(
                c.get("else")
                    .ok_or_else(|| DocError(format!("{at_cond}: missing key `else`")))?,
                &format!("{at_cond}.else"),
            )?;
            Ok(Program::Cond(guard.to_string(), Box::new(then), Box::new(els)))
        }
        "while" => {
            let at_while = format!("{at}.while");
            let w = as_object(body, &at_while)?;
            check_keys(w, &at_while, &["cond", "body"])?;
            let guard = as_str(
                w.get("cond")
                    .ok_or_else(|| DocError(format!("{at_while}: missing key `cond`")))?,
                &format!("{at_while}.cond"),
            )?;
            let body = parse_program(
                w.get("body")
                    .ok_or_else(|| DocError(format!("{at_while}: missing key `body`")))?,
                &format!("{at_while}.body"),
            )?;
            Ok(Program::While(guard.to_string(), Box::new(body)))
        }
        other => fail(
            at,
            format!("unknown program kind `{other}` (expected skip, abort, atom, seq, choice, cond, while)"),
        ),
    }
}

// ---------------------------------------------------------------------------
// Assertions

fn parse_assertions(
    section: Option<&Value>,
    matrices: &BTreeMap<String, Mat>,
    predicates: &BTreeMap<String, Comonoid>,
    programs: &BTreeMap<String, Program>,
) -> DocResult<Vec<Assertion>> {
    let Some(section) = section else {
        return Ok(Vec::new());
    };
    let arr = as_array(section, "assertions")?;
    let mut out = Vec::with_capacity(arr.len());
    for (i, entry) in arr.iter().enumerate() {
        let at = format!("assertions[{i}]");
        let a = as_object(entry, &at)?;
        check_keys(a, &at, &["pre", "prog", "term", "post"])?;
        let pre = as_str(
            a.get("pre")
                .ok_or_else(|| DocError(format!("{at}: missing key `pre`")))?,
            &format!("{at}.pre"),
        )?
        .to_string();
        let post = as_str(
            a.get("post")
                .ok_or_else(|| DocError(format!("{at}: missing key `post`")))?,
            &format!("{at}.post"),
        )?
        .to_string();
        for (name, role) in [(&pre, "pre"), (&post, "post")] {
            if !predicates.contains_key(name.as_str()) {
                return fail(&at, format!("{role} names unknown predicate `{name}`"));
            }
        }
        let body = match (a.get("prog"), a.get("term")) {
            (Some(p), None) => {
                let name = as_str(p, &format!("{at}.prog"))?;
                if !programs.contains_key(name) {
                    return fail(&at, format!("prog names unknown program `{name}`"));
                }
                AssertionBody::Prog(name.to_string())
            }
            (None, Some(t)) => {
                let name = as_str(t, &format!("{at}.term"))?;
                let Some(mat) = matrices.get(name) else {
                    return fail(&at, format!("term names unknown matrix `{name}`"));
                };
                let v = &predicates[&pre];
                let u = &predicates[&post];
                if v.typ() != mat.src() {
                    return fail(
                        &at,
                        format!(
                            "pre `{pre}` is over type `{}` but matrix `{name}` starts at `{}`",
                            v.typ().name(),
                            mat.src().name()
                        ),
                    );
                }
                if u.typ() != mat.dst() {
                    return fail(
                        &at,
                        format!(
                            "post `{post}` is over type `{}` but matrix `{name}` ends at `{}`",
                            u.typ().name(),
                            mat.dst().name()
                        ),
                    );
                }
                AssertionBody::Term(name.to_string())
            }
            _ => return fail(&at, "expected exactly one of `prog` or `term`"),
        };
        out.push(Assertion { pre, body, post });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Program environment

/// Walk a program collecting the names it references, in reading order.
fn referenced_names(p: &Program, atoms: &mut Vec<String>, preds: &mut Vec<String>) {
    match p {
        Program::Skip | Program::Abort => {}
        Program::Atom(name) => atoms.push(name.clone()),
        Program::Seq(parts) | Program::Choice(parts) => {
            for part in parts {
                referenced_names(part, atoms, preds);
            }
        }
        Program::Cond(guard, then, els) => {
            preds.push(guard.clone());
            referenced_names(then, atoms, preds);
            referenced_names(els, atoms, preds);
        }
        Program::While(guard, body) => {
            preds.push(guard.clone());
            referenced_names(body, atoms, preds);
        }
    }
}

/// Programs share one state type per document. Infer it from the names
/// programs reference; fall back to assertion preconditions, then to the
/// document's sole declared type.
fn build_env(
    types: &BTreeMap<String, FinType>,
    matrices: &BTreeMap<String, Mat>,
    predicates: &BTreeMap<String, Comonoid>,
    programs: &BTreeMap<String, Program>,
    assertions: &[Assertion],
    q: &Quantale,
) -> DocResult<Option<Env>> {
    if programs.is_empty() {
        return Ok(None);
    }

    // Resolve every referenced name and pin the state type from the first.
    let mut state: Option<(FinType, String)> = None;
    fn note_type(
        t: &FinType,
        owner: String,
        state: &mut Option<(FinType, String)>,
    ) -> DocResult<()> {
        match state {
            None => {
                *state = Some((t.clone(), owner));
                Ok(())
            }
            Some((existing, _)) if *existing == *t => Ok(()),
            Some((existing, first)) => Err(DocError(format!(
                "programs: {owner} is over type `{}` but {first} fixed the state type to `{}` \
                 (all programs in a document share one state type)",
                t.name(),
                existing.name()
            ))),
        }
    }

    for (pname, program) in programs {
        let at = format!("programs.{pname}");
        let mut atoms = Vec::new();
        let mut preds = Vec::new();
        referenced_names(program, &mut atoms, &mut preds);
        for atom in atoms {
            let Some(mat) = matrices.get(&atom) else {
                // Every environment ships the zero term under the name
                // `magic`; a document may shadow it with its own matrix
                // but does not have to declare it.
                if atom == "magic" {
                    continue;
                }
                return fail(&at, format!("unknown atom `{atom}`"));
            };
            if mat.src() != mat.dst() {
                return fail(
                    &at,
                    format!(
                        "atom `{atom}` is not square: `{}` -> `{}`",
                        mat.src().name(),
                        mat.dst().name()
                    ),
                );
            }
            note_type(mat.src(), format!("atom `{atom}` in {at}"), &mut state)?;
        }
        for pred in preds {
            let Some(p) = predicates.get(&pred) else {
                return fail(&at, format!("unknown predicate `{pred}`"));
            };
            note_type(p.typ(), format!("predicate `{pred}` in {at}"), &mut state)?;
        }
    }

    // Name-free programs (all skip/abort): borrow the type of an assertion
    // precondition, else the sole declared type.
    let state = match state {
        Some((t, _)) => t,
        None => {
            let from_assertion = assertions.iter().find_map(|a| match &a.body {
                AssertionBody::Prog(_) => Some(predicates[&a.pre].typ().clone()),
                AssertionBody::Term(_) => None,
            });
            match from_assertion {
                Some(t) => t,
                None if types.len() == 1 => types.values().next().expect("one type").clone(),
                None => {
                    return fail(
                        "programs",
                        "cannot infer the program state type: no program references an atom \
                         or predicate, no assertion uses a program, and the document declares \
                         more than one type (or none)",
                    )
                }
            }
        }
    };

    let mut env = Env::new(&state, q);
    for (name, mat) in matrices {
        if mat.src() == &state && mat.dst() == &state {
            env.add_atom(name, mat.clone())
                .map_err(|e| DocError(format!("matrices.{name}: {e}")))?;
        }
    }
    for (name, pred) in predicates {
        if pred.typ() == &state {
            env.add_pred(name, pred.clone())
                .map_err(|e| DocError(format!("predicates.{name}: {e}")))?;
        }
    }
    Ok(Some(env))
}
