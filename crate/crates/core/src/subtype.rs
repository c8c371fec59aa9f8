//! Predicates over a type, represented as comonoids: diagonal matrices
//! whose entries are idempotents below the unit.
//!
//! The comonoids on a type form a lattice under the entrywise order, with
//! `comeet` (entrywise tensor) and `cojoin` (entrywise join). Around that
//! lattice this module provides:
//!
//! * [`interior`] — the largest comonoid below an arbitrary endoterm
//!   (the coreflection of endoterms onto comonoids),
//! * [`closure`] — the least reflexive-transitive monoid above an endoterm
//!   (iterated squaring from `identity ⊕ p`),
//! * [`negation`] — the largest comonoid disjoint from a given one, with
//!   the double-negation (regular) fragment and its Glivenko join,
//! * [`std_implication`] — the Heyting implication of the comonoid lattice.

use crate::error::{Error, Result};
use crate::quantale::{QElem, Quantale};
use crate::relmat::{compose, identity, mjoin, mleq, FinType, Mat};

/// A predicate on a type: a diagonal of idempotents `⪯ unit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comonoid {
    typ: FinType,
    q: Quantale,
    diag: Vec<QElem>,
}

impl Comonoid {
    /// Build from a diagonal, validating `e ⊗ e = e` and `e ⪯ unit`
    /// for every entry.
    pub fn new(typ: &FinType, q: &Quantale, diag: Vec<QElem>) -> Result<Comonoid> {
        if diag.len() != typ.size() {
            return Err(Error::Shape(format!(
                "diagonal of length {} for type `{}` of size {}",
                diag.len(),
                typ.name(),
                typ.size()
            )));
        }
        for (i, e) in diag.iter().enumerate() {
            if !q.contains(e) {
                return Err(Error::Domain {
                    quantale: q.kind().to_string(),
                    value: format!("{e:?}"),
                });
            }
            if !q.is_idempotent(e)? {
                return Err(Error::NotComonoid(format!(
                    "entry {} at `{}` is not an idempotent below the unit",
                    q.render(e),
                    typ.label(i)
                )));
            }
        }
        Ok(Comonoid {
            typ: typ.clone(),
            q: q.clone(),
            diag,
        })
    }

    /// The identity comonoid: the whole type, diag = unit.
    pub fn identity(typ: &FinType, q: &Quantale) -> Comonoid {
        Comonoid {
            typ: typ.clone(),
            q: q.clone(),
            diag: vec![q.unit(); typ.size()],
        }
    }

    /// The empty predicate: diag = bottom.
    pub fn bottom(typ: &FinType, q: &Quantale) -> Comonoid {
        Comonoid {
            typ: typ.clone(),
            q: q.clone(),
            diag: vec![q.bottom(); typ.size()],
        }
    }

    /// Crisp predicate from a member list: unit on members, bottom elsewhere.
    pub fn from_members<S: AsRef<str>>(
        typ: &FinType,
        q: &Quantale,
        members: &[S],
    ) -> Result<Comonoid> {
        let mut diag = vec![q.bottom(); typ.size()];
        for m in members {
            let i = typ.index_of(m.as_ref()).ok_or_else(|| {
                Error::Unresolved(format!(
                    "`{}` is not a label of type `{}`",
                    m.as_ref(),
                    typ.name()
                ))
            })?;
            diag[i] = q.unit();
        }
        Comonoid::new(typ, q, diag)
    }

    /// Reinterpret a matrix as a comonoid, rejecting anything that is not
    /// a diagonal of idempotents.
    pub fn from_mat(m: &Mat) -> Result<Comonoid> {
        if !is_comonoid(m)? {
            return Err(Error::NotComonoid(format!(
                "matrix on `{}` has off-diagonal mass or a non-idempotent diagonal",
                m.src().name()
            )));
        }
        let diag = (0..m.src().size()).map(|i| m.get(i, i).clone()).collect();
        Comonoid::new(m.src(), m.quantale(), diag)
    }

    /// The diagonal matrix this predicate stands for.
    pub fn as_mat(&self) -> Mat {
        let bottom = self.q.bottom();
        Mat::build(&self.typ, &self.typ, &self.q, |y, x| {
            Ok(if y == x {
                self.diag[y].clone()
            } else {
                bottom.clone()
            })
        })
        .expect("diagonal build cannot fail")
    }

    pub fn typ(&self) -> &FinType {
        &self.typ
    }

    pub fn quantale(&self) -> &Quantale {
        &self.q
    }

    pub fn diag(&self) -> &[QElem] {
        &self.diag
    }

    pub fn entry(&self, i: usize) -> &QElem {
        &self.diag[i]
    }

    /// All entries are unit or bottom.
    pub fn is_crisp(&self) -> bool {
        let unit = self.q.unit();
        let bottom = self.q.bottom();
        self.diag.iter().all(|e| *e == unit || *e == bottom)
    }

    /// Labels carrying a non-bottom entry.
    pub fn members(&self) -> Vec<&str> {
        let bottom = self.q.bottom();
        self.diag
            .iter()
            .enumerate()
            .filter(|(_, e)| **e != bottom)
            .map(|(i, _)| self.typ.label(i))
            .collect()
    }

    /// Entrywise order between predicates on the same type.
    pub fn leq(&self, other: &Comonoid) -> Result<bool> {
        same_context(self, other)?;
        for (a, b) in self.diag.iter().zip(&other.diag) {
            if !self.q.leq(a, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A reflexive-transitive endoterm, as produced by [`closure`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidTerm {
    mat: Mat,
}

impl MonoidTerm {
    /// Validate reflexivity (`identity ⪯ m`) and transitivity
    /// (`m ⊗ m = m`).
    pub fn from_mat(m: &Mat) -> Result<MonoidTerm> {
        if !is_monoid(m)? {
            return Err(Error::Term(format!(
                "matrix on `{}` is not reflexive-transitive",
                m.src().name()
            )));
        }
        Ok(MonoidTerm { mat: m.clone() })
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn typ(&self) -> &FinType {
        self.mat.src()
    }

    pub fn into_mat(self) -> Mat {
        self.mat
    }
}

fn same_context(u: &Comonoid, v: &Comonoid) -> Result<()> {
    if u.q != v.q {
        return Err(Error::QuantaleMismatch(
            u.q.kind().to_string(),
            v.q.kind().to_string(),
        ));
    }
    if u.typ != v.typ {
        return Err(Error::Type(format!(
            "predicates on `{}` and `{}`",
            u.typ.name(),
            v.typ.name()
        )));
    }
    Ok(())
}

fn require_endo(m: &Mat, op: &str) -> Result<()> {
    if m.src() == m.dst() {
        Ok(())
    } else {
        Err(Error::Term(format!(
            "{op}: expected an endoterm, got `{}`→`{}`",
            m.src().name(),
            m.dst().name()
        )))
    }
}

/// The largest declared idempotent satisfying a join-closed predicate.
/// Every use site has a predicate of the form `tensor-with-fixed-values ⪯
/// bound`, which distributes over joins, so the join of all satisfying
/// idempotents still satisfies it; this is verified and reported as a
/// term error if a carrier ever violates it.
pub(crate) fn largest_idempotent_where(
    q: &Quantale,
    mut pred: impl FnMut(&QElem) -> Result<bool>,
) -> Result<QElem> {
    let mut best = q.bottom();
    let mut any = false;
    for e in q.idempotents() {
        if pred(&e)? {
            best = q.join(&best, &e)?;
            any = true;
        }
    }
    if !any {
        // The bottom element satisfies every tensor bound; reaching this
        // means the predicate itself rejected bottom.
        return Err(Error::Term(
            "no idempotent satisfies the requested bound".into(),
        ));
    }
    if !q.is_idempotent(&best)? || !pred(&best)? {
        return Err(Error::Term(
            "idempotents of this carrier have no largest element under the bound".into(),
        ));
    }
    Ok(best)
}

/// The least declared idempotent satisfying a meet-closed predicate.
pub(crate) fn least_idempotent_where(
    q: &Quantale,
    mut pred: impl FnMut(&QElem) -> Result<bool>,
) -> Result<QElem> {
    let mut best: Option<QElem> = None;
    for e in q.idempotents() {
        if pred(&e)? {
            best = Some(match best {
                None => e,
                Some(b) => q.meet(&b, &e)?,
            });
        }
    }
    let best =
        best.ok_or_else(|| Error::Term("no idempotent satisfies the requested condition".into()))?;
    if !q.is_idempotent(&best)? || !pred(&best)? {
        return Err(Error::Term(
            "idempotents of this carrier have no least element under the condition".into(),
        ));
    }
    Ok(best)
}

/// Is the matrix a diagonal of idempotents below the unit?
pub fn is_comonoid(p: &Mat) -> Result<bool> {
    require_endo(p, "is_comonoid")?;
    let q = p.quantale();
    let bottom = q.bottom();
    for y in 0..p.src().size() {
        for x in 0..p.dst().size() {
            let e = p.get(y, x);
            if y != x {
                if *e != bottom {
                    return Ok(false);
                }
            } else if !q.is_idempotent(e)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Is the matrix reflexive (`identity ⪯ p`) and transitive (`p ⊗ p = p`)?
pub fn is_monoid(p: &Mat) -> Result<bool> {
    require_endo(p, "is_monoid")?;
    if !mleq(&identity(p.src(), p.quantale()), p)? {
        return Ok(false);
    }
    Ok(compose(p, p)? == *p)
}

/// The largest comonoid below an endoterm: only the diagonal matters,
/// and each entry is its scalar interior. Coreflection:
/// `w ⪯ p ⟺ w ⪯ interior(p)` for every comonoid `w`.
pub fn interior(p: &Mat) -> Result<Comonoid> {
    require_endo(p, "interior")?;
    let q = p.quantale();
    let diag = (0..p.src().size())
        .map(|i| q.scalar_interior(p.get(i, i)))
        .collect::<Result<Vec<_>>>()?;
    Comonoid::new(p.src(), q, diag)
}

/// The least reflexive-transitive term above `p`: the join of all powers
/// of `identity ⊕ p`, computed by repeated squaring. Squaring is monotone
/// here, so the iteration stabilizes once the matrix stops changing;
/// `max_iters` bounds the number of squarings defensively.
pub fn closure(p: &Mat, max_iters: usize) -> Result<MonoidTerm> {
    require_endo(p, "closure")?;
    let q = p.quantale();
    if matches!(q, Quantale::Language(_)) {
        return Err(Error::Unsupported {
            op: "closure",
            quantale: q.kind().to_string(),
        });
    }
    let mut m = mjoin(&identity(p.src(), q), p)?;
    for _ in 0..max_iters {
        let next = compose(&m, &m)?;
        if next == m {
            return Ok(MonoidTerm { mat: m });
        }
        m = next;
    }
    if compose(&m, &m)? == m {
        Ok(MonoidTerm { mat: m })
    } else {
        Err(Error::Divergence(max_iters))
    }
}

/// Meet in the comonoid lattice: entrywise tensor of the diagonals.
pub fn comeet(u: &Comonoid, v: &Comonoid) -> Result<Comonoid> {
    same_context(u, v)?;
    let diag = u
        .diag
        .iter()
        .zip(&v.diag)
        .map(|(a, b)| u.q.tensor(a, b))
        .collect::<Result<Vec<_>>>()?;
    Comonoid::new(&u.typ, &u.q, diag)
}

/// Join in the comonoid lattice: entrywise join of the diagonals.
pub fn cojoin(u: &Comonoid, v: &Comonoid) -> Result<Comonoid> {
    same_context(u, v)?;
    let diag = u
        .diag
        .iter()
        .zip(&v.diag)
        .map(|(a, b)| u.q.join(a, b))
        .collect::<Result<Vec<_>>>()?;
    Comonoid::new(&u.typ, &u.q, diag)
}

/// The largest comonoid disjoint from `u`: entrywise, the largest
/// idempotent `e` with `e ⊗ u_x = bottom`. Adjunction:
/// `comeet(v, u) = bottom ⟺ v ⪯ negation(u)`.
pub fn negation(u: &Comonoid) -> Result<Comonoid> {
    let q = &u.q;
    let bottom = q.bottom();
    let diag = u
        .diag
        .iter()
        .map(|a| largest_idempotent_where(q, |e| Ok(q.tensor(e, a)? == bottom)))
        .collect::<Result<Vec<_>>>()?;
    Comonoid::new(&u.typ, q, diag)
}

/// `negation(negation(u))`: a closure operator on the comonoid lattice.
pub fn double_negation(u: &Comonoid) -> Result<Comonoid> {
    negation(&negation(u)?)
}

/// A predicate is regular when it is double-negation closed.
pub fn is_regular(u: &Comonoid) -> Result<bool> {
    Ok(double_negation(u)? == *u)
}

/// Join in the regular fragment: the double negation of the plain join.
pub fn regular_join(u: &Comonoid, v: &Comonoid) -> Result<Comonoid> {
    double_negation(&cojoin(u, v)?)
}

/// Heyting implication of the comonoid lattice: entrywise, the largest
/// idempotent below `residual(v_x, u_x)`. Adjunction:
/// `comeet(u, w) ⪯ v ⟺ w ⪯ std_implication(u, v)`.
pub fn std_implication(u: &Comonoid, v: &Comonoid) -> Result<Comonoid> {
    same_context(u, v)?;
    let q = &u.q;
    let diag = u
        .diag
        .iter()
        .zip(&v.diag)
        .map(|(a, b)| q.scalar_interior(&q.residual(b, a)?))
        .collect::<Result<Vec<_>>>()?;
    Comonoid::new(&u.typ, q, diag)
}
