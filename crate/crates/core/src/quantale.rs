//! Scalar carriers: the value algebras that matrix entries live in.
//!
//! A quantale here is a complete lattice carrying a monotone monoid
//! structure (`tensor`, `unit`) that distributes over joins, together with
//! the right residual it induces: `residual(a, b)` is the largest `t` with
//! `t ⊗ b ⪯ a`, so that `t ⊗ b ⪯ a  ⟺  t ⪯ residual(a, b)`.
//! `scalar_interior(a)` is the largest idempotent below `a`.
//!
//! Five carriers ship:
//!
//! * `boolean` — `{0, 1}` with tensor = and, unit = 1, join = or.
//! * `tropical` — exact nonnegative rationals plus `inf`, under the
//!   **reversed** order (a smaller cost is a *larger* element), tensor = +,
//!   unit = 0, bottom = `inf`, join = numeric min, meet = numeric max.
//! * `natural` — naturals plus `inf`, ordered and combined like tropical.
//! * `heyting` — a finite distributive lattice given by a table,
//!   tensor = meet, unit = top.
//! * `language` — finite sets of words over a fixed alphabet,
//!   tensor = elementwise concatenation, unit = `{ε}`, join = union.
//!   Residuals, the top element, and empty meets have no finite
//!   representation here and signal [`Error::Unsupported`].

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, BigUint, Signed, Zero};

use crate::error::{Error, Result};

/// Extended nonnegative rational: a cost, or the unreachable cost `inf`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Trop {
    Fin(BigRational),
    Inf,
}

/// Extended natural number.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Nat {
    Fin(BigUint),
    Inf,
}

/// A scalar value of one of the five carriers.
///
/// The variant says which carrier the value belongs to; every operation on
/// [`Quantale`] checks that its arguments match its own carrier and returns
/// [`Error::Domain`] otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QElem {
    Bool(bool),
    Trop(Trop),
    Nat(Nat),
    /// Index into the element table of a finite Heyting lattice.
    Heyt(usize),
    /// Finite set of words over the language alphabet.
    Lang(BTreeSet<String>),
}

impl QElem {
    /// Integer tropical cost.
    pub fn trop_int(n: u64) -> QElem {
        QElem::Trop(Trop::Fin(BigRational::from_integer(BigInt::from(n))))
    }

    /// Exact tropical cost `num/den` (`den > 0`).
    pub fn trop_ratio(num: i64, den: i64) -> QElem {
        QElem::Trop(Trop::Fin(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn trop_inf() -> QElem {
        QElem::Trop(Trop::Inf)
    }

    pub fn nat_int(n: u64) -> QElem {
        QElem::Nat(Nat::Fin(BigUint::from(n)))
    }

    pub fn nat_inf() -> QElem {
        QElem::Nat(Nat::Inf)
    }

    /// Finite language from a word list.
    pub fn lang<'a, I: IntoIterator<Item = &'a str>>(words: I) -> QElem {
        QElem::Lang(words.into_iter().map(|w| w.to_string()).collect())
    }
}

/// A finite distributive lattice presented by an element table.
///
/// Built from element names and a set of generating `a ≤ b` pairs; the
/// constructor closes the pairs reflexively and transitively, then checks
/// antisymmetry, existence of all binary joins/meets, and distributivity
/// (a finite lattice has relative pseudo-complements exactly when it is
/// distributive). Join/meet/implication tables are precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeytingTable {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    /// `imp[a][b]` is the relative pseudo-complement `a → b`:
    /// the largest `t` with `t ∧ a ≤ b`.
    imp: Vec<Vec<usize>>,
    top: usize,
    bottom: usize,
}

impl HeytingTable {
    /// Build and validate a table from element names and generating
    /// `below = (lower, upper)` pairs.
    pub fn new<S: AsRef<str>>(names: &[S], below: &[(S, S)]) -> Result<Arc<HeytingTable>> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let n = names.len();
        if n == 0 {
            return Err(Error::Lattice("empty element list".into()));
        }
        {
            let mut seen = BTreeSet::new();
            for name in &names {
                if !seen.insert(name.clone()) {
                    return Err(Error::Lattice(format!("duplicate element name `{name}`")));
                }
            }
        }
        let index = |name: &str| -> Result<usize> {
            names
                .iter()
                .position(|m| m == name)
                .ok_or_else(|| Error::Lattice(format!("unknown element `{name}` in order pair")))
        };

        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (lo, hi) in below {
            leq[index(lo.as_ref())?][index(hi.as_ref())?] = true;
        }
        // Transitive closure of the generating pairs.
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::Lattice(format!(
                        "not a partial order: `{}` and `{}` are mutually below each other",
                        names[i], names[j]
                    )));
                }
            }
        }

        // Binary joins and meets must exist and be unique.
        let least_of = |candidates: &[usize], leq: &[Vec<bool>]| -> Option<usize> {
            candidates
                .iter()
                .copied()
                .find(|&c| candidates.iter().all(|&d| leq[c][d]))
        };
        let mut join = vec![vec![0usize; n]; n];
        let mut meet = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                let uppers: Vec<usize> = (0..n).filter(|&k| leq[i][k] && leq[j][k]).collect();
                let lowers: Vec<usize> = (0..n).filter(|&k| leq[k][i] && leq[k][j]).collect();
                join[i][j] = least_of(&uppers, &leq).ok_or_else(|| {
                    Error::Lattice(format!("`{}` and `{}` have no join", names[i], names[j]))
                })?;
                meet[i][j] = lowers
                    .iter()
                    .copied()
                    .find(|&c| lowers.iter().all(|&d| leq[d][c]))
                    .ok_or_else(|| {
                        Error::Lattice(format!("`{}` and `{}` have no meet", names[i], names[j]))
                    })?;
            }
        }

        // Distributivity gives the implication its universal property.
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]] {
                        return Err(Error::Lattice(format!(
                            "not distributive at `{}`, `{}`, `{}`",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }

        let top = (0..n)
            .find(|&t| (0..n).all(|i| leq[i][t]))
            .ok_or_else(|| Error::Lattice("no top element".into()))?;
        let bottom = (0..n)
            .find(|&b| (0..n).all(|i| leq[b][i]))
            .ok_or_else(|| Error::Lattice("no bottom element".into()))?;

        let mut imp = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                // Largest t with t ∧ a ≤ b; the join of all such t still
                // satisfies the bound because the lattice is distributive.
                let t = (0..n)
                    .filter(|&t| leq[meet[t][a]][b])
                    .fold(bottom, |acc, t| join[acc][t]);
                imp[a][b] = t;
            }
        }

        Ok(Arc::new(HeytingTable {
            names,
            leq,
            join,
            meet,
            imp,
            top,
            bottom,
        }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|m| m == name)
    }
}

/// One of the five scalar carriers, with its full operation set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quantale {
    Boolean,
    Tropical,
    Natural,
    FiniteHeyting(Arc<HeytingTable>),
    /// Alphabet of single-character letters words are made of.
    Language(Arc<BTreeSet<char>>),
}

impl Quantale {
    pub fn boolean() -> Quantale {
        Quantale::Boolean
    }

    pub fn tropical() -> Quantale {
        Quantale::Tropical
    }

    pub fn natural() -> Quantale {
        Quantale::Natural
    }

    pub fn heyting(table: Arc<HeytingTable>) -> Quantale {
        Quantale::FiniteHeyting(table)
    }

    /// Language quantale over the given letters (each must be one character).
    pub fn language<'a, I: IntoIterator<Item = &'a str>>(letters: I) -> Result<Quantale> {
        let mut alphabet = BTreeSet::new();
        for letter in letters {
            let mut chars = letter.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => {
                    alphabet.insert(c);
                }
                _ => {
                    return Err(Error::Lattice(format!(
                        "alphabet letter `{letter}` is not a single character"
                    )))
                }
            }
        }
        Ok(Quantale::Language(Arc::new(alphabet)))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Quantale::Boolean => "boolean",
            Quantale::Tropical => "tropical",
            Quantale::Natural => "natural",
            Quantale::FiniteHeyting(_) => "heyting",
            Quantale::Language(_) => "language",
        }
    }

    fn unsupported(&self, op: &'static str) -> Error {
        Error::Unsupported {
            op,
            quantale: self.kind().to_string(),
        }
    }

    fn domain_error(&self, value: &QElem) -> Error {
        Error::Domain {
            quantale: self.kind().to_string(),
            value: format!("{value:?}"),
        }
    }

    /// Carrier membership, including value-level constraints
    /// (nonnegative costs, in-table indices, in-alphabet words).
    pub fn contains(&self, a: &QElem) -> bool {
        match (self, a) {
            (Quantale::Boolean, QElem::Bool(_)) => true,
            (Quantale::Tropical, QElem::Trop(Trop::Inf)) => true,
            (Quantale::Tropical, QElem::Trop(Trop::Fin(r))) => !r.is_negative(),
            (Quantale::Natural, QElem::Nat(_)) => true,
            (Quantale::FiniteHeyting(t), QElem::Heyt(i)) => *i < t.len(),
            (Quantale::Language(alphabet), QElem::Lang(words)) => words
                .iter()
                .all(|w| w.chars().all(|c| alphabet.contains(&c))),
            _ => false,
        }
    }

    fn check(&self, a: &QElem) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(self.domain_error(a))
        }
    }

    /// Monoid unit of the tensor.
    pub fn unit(&self) -> QElem {
        match self {
            Quantale::Boolean => QElem::Bool(true),
            Quantale::Tropical => QElem::Trop(Trop::Fin(BigRational::zero())),
            Quantale::Natural => QElem::Nat(Nat::Fin(BigUint::zero())),
            Quantale::FiniteHeyting(t) => QElem::Heyt(t.top),
            Quantale::Language(_) => QElem::Lang([String::new()].into_iter().collect()),
        }
    }

    /// Least element of the order.
    pub fn bottom(&self) -> QElem {
        match self {
            Quantale::Boolean => QElem::Bool(false),
            Quantale::Tropical => QElem::Trop(Trop::Inf),
            Quantale::Natural => QElem::Nat(Nat::Inf),
            Quantale::FiniteHeyting(t) => QElem::Heyt(t.bottom),
            Quantale::Language(_) => QElem::Lang(BTreeSet::new()),
        }
    }

    /// Greatest element, where one is finitely representable.
    pub fn top(&self) -> Result<QElem> {
        match self {
            Quantale::Boolean => Ok(QElem::Bool(true)),
            // Reversed order: the cheapest cost 0 is the greatest element.
            Quantale::Tropical => Ok(QElem::Trop(Trop::Fin(BigRational::zero()))),
            Quantale::Natural => Ok(QElem::Nat(Nat::Fin(BigUint::zero()))),
            Quantale::FiniteHeyting(t) => Ok(QElem::Heyt(t.top)),
            Quantale::Language(_) => Err(self.unsupported("top")),
        }
    }

    pub fn supports_top(&self) -> bool {
        !matches!(self, Quantale::Language(_))
    }

    pub fn supports_residual(&self) -> bool {
        !matches!(self, Quantale::Language(_))
    }

    /// The lattice order `a ⪯ b`. For tropical/natural carriers this is the
    /// reversed numeric order: `inf` is the least element, `0` the greatest.
    pub fn leq(&self, a: &QElem, b: &QElem) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (QElem::Bool(x), QElem::Bool(y)) => !*x || *y,
            (QElem::Trop(x), QElem::Trop(y)) => match (x, y) {
                (Trop::Inf, _) => true,
                (Trop::Fin(_), Trop::Inf) => false,
                (Trop::Fin(p), Trop::Fin(q)) => p >= q,
            },
            (QElem::Nat(x), QElem::Nat(y)) => match (x, y) {
                (Nat::Inf, _) => true,
                (Nat::Fin(_), Nat::Inf) => false,
                (Nat::Fin(p), Nat::Fin(q)) => p >= q,
            },
            (QElem::Heyt(i), QElem::Heyt(j)) => match self {
                Quantale::FiniteHeyting(t) => t.leq[*i][*j],
                _ => unreachable!("checked above"),
            },
            (QElem::Lang(x), QElem::Lang(y)) => x.is_subset(y),
            _ => unreachable!("checked above"),
        })
    }

    /// Binary join (least upper bound).
    pub fn join(&self, a: &QElem, b: &QElem) -> Result<QElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (QElem::Bool(x), QElem::Bool(y)) => QElem::Bool(*x || *y),
            (QElem::Trop(x), QElem::Trop(y)) => QElem::Trop(match (x, y) {
                (Trop::Inf, _) => y.clone(),
                (_, Trop::Inf) => x.clone(),
                (Trop::Fin(p), Trop::Fin(q)) => Trop::Fin(p.min(q).clone()),
            }),
            (QElem::Nat(x), QElem::Nat(y)) => QElem::Nat(match (x, y) {
                (Nat::Inf, _) => y.clone(),
                (_, Nat::Inf) => x.clone(),
                (Nat::Fin(p), Nat::Fin(q)) => Nat::Fin(p.min(q).clone()),
            }),
            (QElem::Heyt(i), QElem::Heyt(j)) => match self {
                Quantale::FiniteHeyting(t) => QElem::Heyt(t.join[*i][*j]),
                _ => unreachable!(),
            },
            (QElem::Lang(x), QElem::Lang(y)) => QElem::Lang(x.union(y).cloned().collect()),
            _ => unreachable!("checked above"),
        })
    }

    /// Binary meet (greatest lower bound).
    pub fn meet(&self, a: &QElem, b: &QElem) -> Result<QElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (QElem::Bool(x), QElem::Bool(y)) => QElem::Bool(*x && *y),
            (QElem::Trop(x), QElem::Trop(y)) => QElem::Trop(match (x, y) {
                (Trop::Inf, _) | (_, Trop::Inf) => Trop::Inf,
                (Trop::Fin(p), Trop::Fin(q)) => Trop::Fin(p.max(q).clone()),
            }),
            (QElem::Nat(x), QElem::Nat(y)) => QElem::Nat(match (x, y) {
                (Nat::Inf, _) | (_, Nat::Inf) => Nat::Inf,
                (Nat::Fin(p), Nat::Fin(q)) => Nat::Fin(p.max(q).clone()),
            }),
            (QElem::Heyt(i), QElem::Heyt(j)) => match self {
                Quantale::FiniteHeyting(t) => QElem::Heyt(t.meet[*i][*j]),
                _ => unreachable!(),
            },
            (QElem::Lang(x), QElem::Lang(y)) => QElem::Lang(x.intersection(y).cloned().collect()),
            _ => unreachable!("checked above"),
        })
    }

    /// Join of any finite family; the empty join is the bottom element.
    pub fn join_all<'a, I: IntoIterator<Item = &'a QElem>>(&self, items: I) -> Result<QElem> {
        let mut acc = self.bottom();
        for item in items {
            acc = self.join(&acc, item)?;
        }
        Ok(acc)
    }

    /// Meet of any finite family; the empty meet is the top element
    /// (unsupported in the language quantale, which has no top).
    pub fn meet_all<'a, I: IntoIterator<Item = &'a QElem>>(&self, items: I) -> Result<QElem> {
        let mut iter = items.into_iter();
        let mut acc = match iter.next() {
            Some(first) => {
                self.check(first)?;
                first.clone()
            }
            None => return self.top().map_err(|_| self.unsupported("meet_all(empty)")),
        };
        for item in iter {
            acc = self.meet(&acc, item)?;
        }
        Ok(acc)
    }

    /// Monoid multiplication. Distributes over joins in both arguments.
    pub fn tensor(&self, a: &QElem, b: &QElem) -> Result<QElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (QElem::Bool(x), QElem::Bool(y)) => QElem::Bool(*x && *y),
            (QElem::Trop(x), QElem::Trop(y)) => QElem::Trop(match (x, y) {
                (Trop::Inf, _) | (_, Trop::Inf) => Trop::Inf,
                (Trop::Fin(p), Trop::Fin(q)) => Trop::Fin(p + q),
            }),
            (QElem::Nat(x), QElem::Nat(y)) => QElem::Nat(match (x, y) {
                (Nat::Inf, _) | (_, Nat::Inf) => Nat::Inf,
                (Nat::Fin(p), Nat::Fin(q)) => Nat::Fin(p + q),
            }),
            (QElem::Heyt(i), QElem::Heyt(j)) => match self {
                Quantale::FiniteHeyting(t) => QElem::Heyt(t.meet[*i][*j]),
                _ => unreachable!(),
            },
            (QElem::Lang(x), QElem::Lang(y)) => {
                let mut out = BTreeSet::new();
                for u in x {
                    for v in y {
                        out.insert(format!("{u}{v}"));
                    }
                }
                QElem::Lang(out)
            }
            _ => unreachable!("checked above"),
        })
    }

    /// Right residual: the largest `t` with `t ⊗ b ⪯ a`, so that
    /// `t ⊗ b ⪯ a ⟺ t ⪯ residual(a, b)`.
    ///
    /// Boolean: `¬b ∨ a`. Tropical/natural: truncated subtraction
    /// `max(a - b, 0)` with `residual(a, inf) = 0` (anything reaches an
    /// unreachable bound) and `residual(inf, finite) = inf`.
    /// Heyting: the implication `b → a`. Language: unsupported.
    pub fn residual(&self, a: &QElem, b: &QElem) -> Result<QElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (QElem::Bool(x), QElem::Bool(y)) => QElem::Bool(!*y || *x),
            (QElem::Trop(x), QElem::Trop(y)) => QElem::Trop(match (x, y) {
                (_, Trop::Inf) => Trop::Fin(BigRational::zero()),
                (Trop::Inf, Trop::Fin(_)) => Trop::Inf,
                (Trop::Fin(p), Trop::Fin(q)) => {
                    if p <= q {
                        Trop::Fin(BigRational::zero())
                    } else {
                        Trop::Fin(p - q)
                    }
                }
            }),
            (QElem::Nat(x), QElem::Nat(y)) => QElem::Nat(match (x, y) {
                (_, Nat::Inf) => Nat::Fin(BigUint::zero()),
                (Nat::Inf, Nat::Fin(_)) => Nat::Inf,
                (Nat::Fin(p), Nat::Fin(q)) => {
                    if p <= q {
                        Nat::Fin(BigUint::zero())
                    } else {
                        Nat::Fin(p - q)
                    }
                }
            }),
            (QElem::Heyt(i), QElem::Heyt(j)) => match self {
                Quantale::FiniteHeyting(t) => QElem::Heyt(t.imp[*j][*i]),
                _ => unreachable!(),
            },
            (QElem::Lang(_), QElem::Lang(_)) => return Err(self.unsupported("residual")),
            _ => unreachable!("checked above"),
        })
    }

    /// The largest idempotent `e ⪯ a` (with `e ⊗ e = e`, `e ⪯ unit`).
    pub fn scalar_interior(&self, a: &QElem) -> Result<QElem> {
        self.check(a)?;
        Ok(match (self, a) {
            (Quantale::Boolean, _) | (Quantale::FiniteHeyting(_), _) => a.clone(),
            (Quantale::Tropical, QElem::Trop(t)) => {
                if matches!(t, Trop::Fin(r) if r.is_zero()) {
                    QElem::Trop(Trop::Fin(BigRational::zero()))
                } else {
                    QElem::Trop(Trop::Inf)
                }
            }
            (Quantale::Natural, QElem::Nat(t)) => {
                if matches!(t, Nat::Fin(n) if n.is_zero()) {
                    QElem::Nat(Nat::Fin(BigUint::zero()))
                } else {
                    QElem::Nat(Nat::Inf)
                }
            }
            (Quantale::Language(_), QElem::Lang(words)) => {
                if words.contains("") {
                    self.unit()
                } else {
                    self.bottom()
                }
            }
            _ => unreachable!("checked above"),
        })
    }

    /// The declared idempotent elements, bottom first in the lattice order
    /// where that order is total. Comonoid diagonals draw from this list.
    pub fn idempotents(&self) -> Vec<QElem> {
        match self {
            Quantale::Boolean => vec![QElem::Bool(false), QElem::Bool(true)],
            Quantale::Tropical => vec![
                QElem::Trop(Trop::Inf),
                QElem::Trop(Trop::Fin(BigRational::zero())),
            ],
            Quantale::Natural => vec![QElem::Nat(Nat::Inf), QElem::Nat(Nat::Fin(BigUint::zero()))],
            Quantale::FiniteHeyting(t) => (0..t.len()).map(QElem::Heyt).collect(),
            Quantale::Language(_) => vec![self.bottom(), self.unit()],
        }
    }

    /// `true` when `e ⊗ e = e` and `e ⪯ unit`.
    pub fn is_idempotent(&self, e: &QElem) -> Result<bool> {
        Ok(self.tensor(e, e)? == *e && self.leq(e, &self.unit())?)
    }

    /// Printable form of a scalar: `0`/`1`, exact rationals, `inf`,
    /// lattice element names, `{word,word}` languages.
    pub fn render(&self, e: &QElem) -> String {
        match e {
            QElem::Bool(false) => "0".to_string(),
            QElem::Bool(true) => "1".to_string(),
            QElem::Trop(Trop::Fin(r)) => r.to_string(),
            QElem::Trop(Trop::Inf) => "inf".to_string(),
            QElem::Nat(Nat::Fin(n)) => n.to_string(),
            QElem::Nat(Nat::Inf) => "inf".to_string(),
            QElem::Heyt(i) => match self {
                Quantale::FiniteHeyting(t) if *i < t.len() => t.name(*i).to_string(),
                _ => format!("#{i}"),
            },
            QElem::Lang(words) => {
                let mut out = String::from("{");
                for (k, w) in words.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    // Keep the empty word visible so the unit `{ε}` and the
                    // empty language `{}` stay distinguishable.
                    if w.is_empty() {
                        out.push('ε');
                    } else {
                        out.push_str(w);
                    }
                }
                out.push('}');
                out
            }
        }
    }
}

impl fmt::Display for Trop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Trop::Fin(r) => write!(f, "{r}"),
            Trop::Inf => write!(f, "inf"),
        }
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nat::Fin(n) => write!(f, "{n}"),
            Nat::Inf => write!(f, "inf"),
        }
    }
}
