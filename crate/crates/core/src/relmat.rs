//! Typed matrices over a quantale: the arrows of the relation calculus.
//!
//! A [`Mat`] is a `|src| × |dst|` grid of scalars from one quantale,
//! read as a weighted relation from the row type to the column type.
//! Composition joins tensor products along the shared middle type;
//! both residuals invert composition on one side:
//!
//! * `residual_right(s, r)` is the largest `t` with `compose(t, r) ⪯ s`,
//! * `residual_left(r, t)` is the largest `s` with `compose(r, s) ⪯ t`,
//!
//! and transposition is the order-preserving involution that swaps the
//! two endpoints. Objects of a type `X` are rows `1 × X` over the
//! one-element separator type `"1"`, and flow forward along a term by
//! composition and backward by the right residual.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quantale::{QElem, Quantale};

/// A finite labelled set: the endpoint of a matrix.
///
/// Two types are interchangeable only when both the name and the ordered
/// label list agree; every binary matrix operation checks endpoint equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinType {
    inner: Arc<FinTypeInner>,
}

#[derive(Debug, PartialEq, Eq)]
struct FinTypeInner {
    name: String,
    labels: Vec<String>,
}

impl FinType {
    /// Build a type from a name and distinct labels. Empty label lists are
    /// allowed (the null type arising as the empty sum).
    pub fn new<S: AsRef<str>>(name: &str, labels: &[S]) -> Result<FinType> {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let mut seen = std::collections::BTreeSet::new();
        for label in &labels {
            if !seen.insert(label.clone()) {
                return Err(Error::Type(format!(
                    "type `{name}` declares the label `{label}` twice"
                )));
            }
        }
        Ok(FinType {
            inner: Arc::new(FinTypeInner {
                name: name.to_string(),
                labels,
            }),
        })
    }

    /// The distinguished one-element type objects are rows over.
    pub fn separator() -> FinType {
        FinType::new("1", &["*"]).expect("separator labels are distinct")
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn size(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.inner.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.inner.labels.iter().position(|l| l == label)
    }

    /// Same labels under a new name (used when a document names a sum).
    pub fn renamed(&self, name: &str) -> FinType {
        FinType::new(name, self.labels()).expect("labels were already distinct")
    }
}

/// A quantale-valued matrix from `src` (rows) to `dst` (columns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    src: FinType,
    dst: FinType,
    q: Quantale,
    /// Row-major, `src.size() * dst.size()` entries.
    entries: Vec<QElem>,
}

impl Mat {
    /// Build from explicit rows, validating shape and carrier membership.
    pub fn new(src: &FinType, dst: &FinType, q: &Quantale, rows: Vec<Vec<QElem>>) -> Result<Mat> {
        if rows.len() != src.size() {
            return Err(Error::Shape(format!(
                "expected {} rows for type `{}`, got {}",
                src.size(),
                src.name(),
                rows.len()
            )));
        }
        let mut entries = Vec::with_capacity(src.size() * dst.size());
        for (y, row) in rows.into_iter().enumerate() {
            if row.len() != dst.size() {
                return Err(Error::Shape(format!(
                    "row {} has {} entries, expected {} for type `{}`",
                    y,
                    row.len(),
                    dst.size(),
                    dst.name()
                )));
            }
            for entry in row {
                if !q.contains(&entry) {
                    return Err(Error::Domain {
                        quantale: q.kind().to_string(),
                        value: format!("{entry:?}"),
                    });
                }
                entries.push(entry);
            }
        }
        Ok(Mat {
            src: src.clone(),
            dst: dst.clone(),
            q: q.clone(),
            entries,
        })
    }

    /// Build entrywise from a fallible generator.
    pub fn build(
        src: &FinType,
        dst: &FinType,
        q: &Quantale,
        mut f: impl FnMut(usize, usize) -> Result<QElem>,
    ) -> Result<Mat> {
        let mut entries = Vec::with_capacity(src.size() * dst.size());
        for y in 0..src.size() {
            for x in 0..dst.size() {
                entries.push(f(y, x)?);
            }
        }
        Ok(Mat {
            src: src.clone(),
            dst: dst.clone(),
            q: q.clone(),
            entries,
        })
    }

    /// Boolean matrix from 0/1 rows.
    pub fn from_bits(src: &FinType, dst: &FinType, rows: &[&[u8]]) -> Result<Mat> {
        let q = Quantale::boolean();
        let rows: Vec<Vec<QElem>> = rows
            .iter()
            .map(|row| row.iter().map(|b| QElem::Bool(*b != 0)).collect())
            .collect();
        Mat::new(src, dst, &q, rows)
    }

    pub fn src(&self) -> &FinType {
        &self.src
    }

    pub fn dst(&self) -> &FinType {
        &self.dst
    }

    pub fn quantale(&self) -> &Quantale {
        &self.q
    }

    pub fn get(&self, y: usize, x: usize) -> &QElem {
        &self.entries[y * self.dst.size() + x]
    }

    pub fn is_endo(&self) -> bool {
        self.src == self.dst
    }

    /// `true` for a `1 × X` object row.
    pub fn is_object_row(&self) -> bool {
        self.src.size() == 1
    }
}

fn same_quantale(a: &Mat, b: &Mat) -> Result<()> {
    if a.q == b.q {
        Ok(())
    } else {
        Err(Error::QuantaleMismatch(
            a.q.kind().to_string(),
            b.q.kind().to_string(),
        ))
    }
}

fn same_shape(a: &Mat, b: &Mat, op: &str) -> Result<()> {
    same_quantale(a, b)?;
    if a.src != b.src || a.dst != b.dst {
        return Err(Error::Shape(format!(
            "{op}: `{}`→`{}` vs `{}`→`{}`",
            a.src.name(),
            a.dst.name(),
            b.src.name(),
            b.dst.name()
        )));
    }
    Ok(())
}

/// Identity on a type: unit diagonal, bottom elsewhere.
pub fn identity(t: &FinType, q: &Quantale) -> Mat {
    let unit = q.unit();
    let bottom = q.bottom();
    Mat::build(t, t, q, |y, x| {
        Ok(if y == x { unit.clone() } else { bottom.clone() })
    })
    .expect("constant generator cannot fail")
}

/// The all-bottom matrix: the least term of its shape.
pub fn mzero(src: &FinType, dst: &FinType, q: &Quantale) -> Mat {
    let bottom = q.bottom();
    Mat::build(src, dst, q, |_, _| Ok(bottom.clone())).expect("constant generator cannot fail")
}

/// The all-top matrix, where the quantale has a top.
pub fn mtop(src: &FinType, dst: &FinType, q: &Quantale) -> Result<Mat> {
    let top = q.top()?;
    Mat::build(src, dst, q, |_, _| Ok(top.clone()))
}

/// Entrywise order: `a ⪯ b` in every position.
pub fn mleq(a: &Mat, b: &Mat) -> Result<bool> {
    same_shape(a, b, "mleq")?;
    for y in 0..a.src.size() {
        for x in 0..a.dst.size() {
            if !a.q.leq(a.get(y, x), b.get(y, x))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Entrywise join.
pub fn mjoin(a: &Mat, b: &Mat) -> Result<Mat> {
    same_shape(a, b, "mjoin")?;
    Mat::build(&a.src, &a.dst, &a.q, |y, x| {
        a.q.join(a.get(y, x), b.get(y, x))
    })
}

/// Entrywise meet.
pub fn mmeet(a: &Mat, b: &Mat) -> Result<Mat> {
    same_shape(a, b, "mmeet")?;
    Mat::build(&a.src, &a.dst, &a.q, |y, x| {
        a.q.meet(a.get(y, x), b.get(y, x))
    })
}

/// Relational composition: `compose(s, r)` of `s: Z→Y` and `r: Y→X` is the
/// `Z→X` matrix with entry `(z, x) = ⋁_y s[z,y] ⊗ r[y,x]`.
pub fn compose(s: &Mat, r: &Mat) -> Result<Mat> {
    same_quantale(s, r)?;
    if s.dst != r.src {
        return Err(Error::Type(format!(
            "compose: left term targets `{}` but right term starts at `{}`",
            s.dst.name(),
            r.src.name()
        )));
    }
    let q = &s.q;
    Mat::build(&s.src, &r.dst, q, |z, x| {
        let mut acc = q.bottom();
        for y in 0..s.dst.size() {
            let prod = q.tensor(s.get(z, y), r.get(y, x))?;
            acc = q.join(&acc, &prod)?;
        }
        Ok(acc)
    })
}

/// Right residual: for `s: Z→X` and `r: Y→X`, the largest `t: Z→Y` with
/// `compose(t, r) ⪯ s`; entrywise `(z, y) = ⋀_x residual(s[z,x], r[y,x])`.
pub fn residual_right(s: &Mat, r: &Mat) -> Result<Mat> {
    same_quantale(s, r)?;
    if s.dst != r.dst {
        return Err(Error::Type(format!(
            "residual_right: terms target `{}` and `{}`, which differ",
            s.dst.name(),
            r.dst.name()
        )));
    }
    let q = &s.q;
    Mat::build(&s.src, &r.src, q, |z, y| {
        let mut acc = q.top()?;
        for x in 0..s.dst.size() {
            let step = q.residual(s.get(z, x), r.get(y, x))?;
            acc = q.meet(&acc, &step)?;
        }
        Ok(acc)
    })
}

/// Left residual: for `r: Y→X` and `t: Y→Z`, the largest `s: X→Z` with
/// `compose(r, s) ⪯ t`; entrywise `(x, z) = ⋀_y residual(t[y,z], r[y,x])`.
pub fn residual_left(r: &Mat, t: &Mat) -> Result<Mat> {
    same_quantale(r, t)?;
    if r.src != t.src {
        return Err(Error::Type(format!(
            "residual_left: terms start at `{}` and `{}`, which differ",
            r.src.name(),
            t.src.name()
        )));
    }
    let q = &r.q;
    Mat::build(&r.dst, &t.dst, q, |x, z| {
        let mut acc = q.top()?;
        for y in 0..r.src.size() {
            let step = q.residual(t.get(y, z), r.get(y, x))?;
            acc = q.meet(&acc, &step)?;
        }
        Ok(acc)
    })
}

/// Transposition: swap the endpoints, flip the grid. Always a
/// self-inverse order-embedding; over the commutative carriers it is
/// moreover contravariant, `transpose(s ⊗ r) = transpose(r) ⊗
/// transpose(s)`. Word concatenation is not commutative, so over the
/// word-set carrier the index swap alone does not reverse composition.
pub fn transpose(r: &Mat) -> Mat {
    Mat::build(&r.dst, &r.src, &r.q, |x, y| Ok(r.get(y, x).clone()))
        .expect("entry clone cannot fail")
}

/// `r ⊣ s`: the unit `identity ⪯ compose(r, s)` and counit
/// `compose(s, r) ⪯ identity` both hold.
pub fn is_adjoint_pair(r: &Mat, s: &Mat) -> Result<bool> {
    same_quantale(r, s)?;
    if s.src != r.dst || s.dst != r.src {
        return Err(Error::Shape(format!(
            "is_adjoint_pair: `{}`→`{}` needs a candidate `{}`→`{}`, got `{}`→`{}`",
            r.src.name(),
            r.dst.name(),
            r.dst.name(),
            r.src.name(),
            s.src.name(),
            s.dst.name()
        )));
    }
    let unit = mleq(&identity(&r.src, &r.q), &compose(r, s)?)?;
    if !unit {
        return Ok(false);
    }
    mleq(&compose(s, r)?, &identity(&r.dst, &r.q))
}

/// A term is functional when it is left adjoint to its own transpose —
/// over the boolean quantale, exactly the graphs of total functions.
pub fn is_functional(r: &Mat) -> Result<bool> {
    is_adjoint_pair(r, &transpose(r))
}

/// Adjoint pair whose unit is an equality: `identity = compose(r, s)`.
pub fn is_coreflection(r: &Mat, s: &Mat) -> Result<bool> {
    Ok(is_adjoint_pair(r, s)? && compose(r, s)? == identity(&r.src, &r.q))
}

/// Adjoint pair whose counit is an equality: `compose(s, r) = identity`.
pub fn is_reflection(r: &Mat, s: &Mat) -> Result<bool> {
    Ok(is_adjoint_pair(r, s)? && compose(s, r)? == identity(&r.dst, &r.q))
}

/// Adjoint pair where both triangle inequalities are equalities.
pub fn is_inversion(r: &Mat, s: &Mat) -> Result<bool> {
    Ok(is_coreflection(r, s)? && is_reflection(r, s)?)
}

/// Direct image on endoterms: `H^r(q) = r ▷ (q ⊗ r)`, the largest
/// `s: X→X` with `compose(r, s) ⪯ compose(q, r)`.
pub fn heyting_direct_image(r: &Mat, endo: &Mat) -> Result<Mat> {
    require_endo(endo, "heyting_direct_image")?;
    if endo.src != r.src {
        return Err(Error::Type(format!(
            "heyting_direct_image: endoterm lives on `{}`, term starts at `{}`",
            endo.src.name(),
            r.src.name()
        )));
    }
    residual_left(r, &compose(endo, r)?)
}

/// Inverse image on endoterms: `H_r(p) = (r ⊗ p) ⊘ r`, the largest
/// `v: Y→Y` with `compose(v, r) ⪯ compose(r, p)`.
pub fn heyting_inverse_image(r: &Mat, endo: &Mat) -> Result<Mat> {
    require_endo(endo, "heyting_inverse_image")?;
    if endo.src != r.dst {
        return Err(Error::Type(format!(
            "heyting_inverse_image: endoterm lives on `{}`, term targets `{}`",
            endo.src.name(),
            r.dst.name()
        )));
    }
    residual_right(&compose(r, endo)?, r)
}

fn require_endo(m: &Mat, op: &str) -> Result<()> {
    if m.is_endo() {
        Ok(())
    } else {
        Err(Error::Term(format!(
            "{op}: expected an endoterm, got `{}`→`{}`",
            m.src.name(),
            m.dst.name()
        )))
    }
}

fn require_object_row(m: &Mat, op: &str) -> Result<()> {
    if m.is_object_row() {
        Ok(())
    } else {
        Err(Error::Term(format!(
            "{op}: expected a 1-row object, got {} rows over `{}`",
            m.src.size(),
            m.src.name()
        )))
    }
}

/// An object of type `dst`: a `1 × dst` row over the separator type.
pub fn object(dst: &FinType, q: &Quantale, entries: Vec<QElem>) -> Result<Mat> {
    Mat::new(&FinType::separator(), dst, q, vec![entries])
}

/// Direct object flow: push an object of `Y` forward along `r: Y→X`.
pub fn obj_direct(phi: &Mat, r: &Mat) -> Result<Mat> {
    require_object_row(phi, "obj_direct")?;
    compose(phi, r)
}

/// Inverse object flow: pull an object of `X` back along `r: Y→X`; right
/// adjoint to [`obj_direct`], i.e. `obj_direct(ψ, r) ⪯ φ ⟺ ψ ⪯ obj_inverse(φ, r)`.
pub fn obj_inverse(phi: &Mat, r: &Mat) -> Result<Mat> {
    require_object_row(phi, "obj_inverse")?;
    residual_right(phi, r)
}
