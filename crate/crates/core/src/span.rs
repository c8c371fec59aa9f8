//! Spans of finite sets: pullback composition, the mediator preorder,
//! Yoneda graphs, functionality, equalizer interiors, epi-mono domains,
//! and flattening down to boolean relation matrices.
//!
//! A span `Y ← apex → X` is a pair of total functions out of a common
//! apex, stored as index arrays. Composition pulls back along the shared
//! middle type; the apex of the composite enumerates matching pairs in
//! lexicographic `(left apex index, right apex index)` order so results
//! are deterministic. Spans are compared by [`span_leq`] — existence of
//! a mediating function commuting with both legs — which is a preorder,
//! and by the equivalence [`span_equiv`] it generates; most laws hold up
//! to equivalence rather than equality.

use crate::error::{Error, Result};
use crate::quantale::{QElem, Quantale};
use crate::relmat::{obj_direct, obj_inverse, object, FinType, Mat};
use crate::subtype::Comonoid;

/// A total function between finite types, stored as an index array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalFn {
    src: FinType,
    dst: FinType,
    map: Vec<usize>,
}

impl TotalFn {
    pub fn new(src: &FinType, dst: &FinType, map: Vec<usize>) -> Result<TotalFn> {
        if map.len() != src.size() {
            return Err(Error::Type(format!(
                "function table has {} entries for `{}` of size {}",
                map.len(),
                src.name(),
                src.size()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= dst.size()) {
            return Err(Error::Type(format!(
                "function value {} out of range for `{}` of size {}",
                bad,
                dst.name(),
                dst.size()
            )));
        }
        Ok(TotalFn {
            src: src.clone(),
            dst: dst.clone(),
            map,
        })
    }

    pub fn identity(t: &FinType) -> TotalFn {
        TotalFn {
            src: t.clone(),
            dst: t.clone(),
            map: (0..t.size()).collect(),
        }
    }

    pub fn src(&self) -> &FinType {
        &self.src
    }

    pub fn dst(&self) -> &FinType {
        &self.dst
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }
}

/// A span `src ← apex → dst` of finite sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanT {
    src: FinType,
    dst: FinType,
    apex: FinType,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl SpanT {
    pub fn new(
        src: &FinType,
        dst: &FinType,
        apex: &FinType,
        left: Vec<usize>,
        right: Vec<usize>,
    ) -> Result<SpanT> {
        let l = TotalFn::new(apex, src, left)?;
        let r = TotalFn::new(apex, dst, right)?;
        Ok(SpanT {
            src: src.clone(),
            dst: dst.clone(),
            apex: apex.clone(),
            left: l.map,
            right: r.map,
        })
    }

    pub fn src(&self) -> &FinType {
        &self.src
    }

    pub fn dst(&self) -> &FinType {
        &self.dst
    }

    pub fn apex(&self) -> &FinType {
        &self.apex
    }

    /// Left leg as an index array `apex → src`.
    pub fn left(&self) -> &[usize] {
        &self.left
    }

    /// Right leg as an index array `apex → dst`.
    pub fn right(&self) -> &[usize] {
        &self.right
    }

    /// Swap the legs: the involution `(Y ← apex → X) ↦ (X ← apex → Y)`.
    pub fn op(&self) -> SpanT {
        SpanT {
            src: self.dst.clone(),
            dst: self.src.clone(),
            apex: self.apex.clone(),
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }
}

/// Result of a [`span_leq`] search: the commuting mediator between the
/// apexes when one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanOrderWitness {
    /// `mediator[i]` is the apex element of the larger span that the
    /// `i`-th apex element of the smaller one maps to; `None` when no
    /// commuting function exists.
    pub mediator: Option<Vec<usize>>,
}

impl SpanOrderWitness {
    pub fn holds(&self) -> bool {
        self.mediator.is_some()
    }
}

/// The identity span on `t`: both legs the identity on apex `t`.
pub fn identity_span(t: &FinType) -> SpanT {
    let idx: Vec<usize> = (0..t.size()).collect();
    SpanT {
        src: t.clone(),
        dst: t.clone(),
        apex: t.clone(),
        left: idx.clone(),
        right: idx,
    }
}

/// The bottom span: empty apex, below every parallel span.
pub fn bottom_span(src: &FinType, dst: &FinType) -> SpanT {
    let apex = FinType::new("0", &[] as &[&str]).expect("empty type is valid");
    SpanT {
        src: src.clone(),
        dst: dst.clone(),
        apex,
        left: Vec::new(),
        right: Vec::new(),
    }
}

/// The top span: product apex with the two projections as legs.
pub fn top_span(src: &FinType, dst: &FinType) -> Result<SpanT> {
    let mut labels = Vec::with_capacity(src.size() * dst.size());
    let mut left = Vec::with_capacity(labels.capacity());
    let mut right = Vec::with_capacity(labels.capacity());
    for y in 0..src.size() {
        for x in 0..dst.size() {
            labels.push(format!("({},{})", src.label(y), dst.label(x)));
            left.push(y);
            right.push(x);
        }
    }
    let apex = FinType::new(&format!("({}x{})", src.name(), dst.name()), &labels)?;
    SpanT::new(src, dst, &apex, left, right)
}

/// Boolean sum of parallel spans: disjoint union of the apexes with the
/// legs inherited componentwise.
pub fn span_sum(a: &SpanT, b: &SpanT) -> Result<SpanT> {
    if a.src != b.src || a.dst != b.dst {
        return Err(Error::Type(format!(
            "span sum needs parallel spans, got `{}`→`{}` and `{}`→`{}`",
            a.src.name(),
            a.dst.name(),
            b.src.name(),
            b.dst.name()
        )));
    }
    let mut labels = Vec::with_capacity(a.apex.size() + b.apex.size());
    for l in a.apex.labels() {
        labels.push(format!("0.{l}"));
    }
    for l in b.apex.labels() {
        labels.push(format!("1.{l}"));
    }
    let apex = FinType::new(&format!("({}+{})", a.apex.name(), b.apex.name()), &labels)?;
    let left = a.left.iter().chain(b.left.iter()).copied().collect();
    let right = a.right.iter().chain(b.right.iter()).copied().collect();
    SpanT::new(&a.src, &a.dst, &apex, left, right)
}

/// Pullback composition: the apex of `span_compose(s: Z→Y, r: Y→X)` is
/// `{(e,f) | s.right(e) = r.left(f)}` in lexicographic `(e,f)` order,
/// with outer legs projected through.
pub fn span_compose(s: &SpanT, r: &SpanT) -> Result<SpanT> {
    if s.dst != r.src {
        return Err(Error::Type(format!(
            "span composition mismatch: `{}`→`{}` then `{}`→`{}`",
            s.src.name(),
            s.dst.name(),
            r.src.name(),
            r.dst.name()
        )));
    }
    let mut labels = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for e in 0..s.apex.size() {
        for f in 0..r.apex.size() {
            if s.right[e] == r.left[f] {
                labels.push(format!("({},{})", s.apex.label(e), r.apex.label(f)));
                left.push(s.left[e]);
                right.push(r.right[f]);
            }
        }
    }
    let apex = FinType::new(&format!("({}*{})", s.apex.name(), r.apex.name()), &labels)?;
    SpanT::new(&s.src, &r.dst, &apex, left, right)
}

/// Search for a mediator witnessing `s ⪯ r`: a function between apexes
/// commuting with both legs. Each apex element of `s` constrains its
/// image independently. The witness is canonical: the same-index target
/// when it commutes (so a span compared with itself yields the identity
/// mediator), otherwise the first commuting target.
pub fn span_leq(s: &SpanT, r: &SpanT) -> Result<SpanOrderWitness> {
    if s.src != r.src || s.dst != r.dst {
        return Err(Error::Type(format!(
            "span order compares parallel spans, got `{}`→`{}` and `{}`→`{}`",
            s.src.name(),
            s.dst.name(),
            r.src.name(),
            r.dst.name()
        )));
    }
    let commutes = |e: usize, f: usize| r.left[f] == s.left[e] && r.right[f] == s.right[e];
    let mut mediator = Vec::with_capacity(s.apex.size());
    for e in 0..s.apex.size() {
        let same_index = (e < r.apex.size() && commutes(e, e)).then_some(e);
        match same_index.or_else(|| (0..r.apex.size()).find(|&f| commutes(e, f))) {
            Some(f) => mediator.push(f),
            None => return Ok(SpanOrderWitness { mediator: None }),
        }
    }
    Ok(SpanOrderWitness {
        mediator: Some(mediator),
    })
}

/// Spans below each other in both directions — the equivalence the span
/// laws are stated up to.
pub fn span_equiv(s: &SpanT, r: &SpanT) -> Result<bool> {
    Ok(span_leq(s, r)?.holds() && span_leq(r, s)?.holds())
}

/// The graph span of a total function: `Y ← Y → X` with identity left leg.
pub fn yoneda(f: &TotalFn) -> SpanT {
    SpanT {
        src: f.src.clone(),
        dst: f.dst.clone(),
        apex: f.src.clone(),
        left: (0..f.src.size()).collect(),
        right: f.map.clone(),
    }
}

/// Functionality at the span level: the unit `id ⪯ r ∘ rᵒᵖ` and counit
/// `rᵒᵖ ∘ r ⪯ id` both hold in the mediator order.
pub fn is_functional_span(r: &SpanT) -> Result<bool> {
    let unit = span_leq(&identity_span(&r.src), &span_compose(r, &r.op())?)?;
    if !unit.holds() {
        return Ok(false);
    }
    let counit = span_leq(&span_compose(&r.op(), r)?, &identity_span(&r.dst))?;
    Ok(counit.holds())
}

/// Equalizer interior of an endospan: keep the apex elements on which
/// the two legs agree, yielding a diagonal span.
pub fn span_interior(p: &SpanT) -> Result<SpanT> {
    if p.src != p.dst {
        return Err(Error::Type(format!(
            "interior needs an endospan, got `{}`→`{}`",
            p.src.name(),
            p.dst.name()
        )));
    }
    let keep: Vec<usize> = (0..p.apex.size())
        .filter(|&e| p.left[e] == p.right[e])
        .collect();
    let labels: Vec<&str> = keep.iter().map(|&e| p.apex.label(e)).collect();
    let apex = FinType::new(&format!("eq({})", p.apex.name()), &labels)?;
    let legs: Vec<usize> = keep.iter().map(|&e| p.left[e]).collect();
    SpanT::new(&p.src, &p.dst, &apex, legs.clone(), legs)
}

/// Epi-mono factorization of the left leg: the image of `src` it covers
/// (as a boolean comonoid) together with the same span totalized over
/// that image type.
pub fn span_domain(r: &SpanT) -> Result<(Comonoid, SpanT)> {
    let q = Quantale::boolean();
    let mut hit = vec![false; r.src.size()];
    for &y in &r.left {
        hit[y] = true;
    }
    let members = Comonoid::new(&r.src, &q, hit.iter().map(|&b| QElem::Bool(b)).collect())?;
    let image_labels: Vec<&str> = (0..r.src.size())
        .filter(|&y| hit[y])
        .map(|y| r.src.label(y))
        .collect();
    let image = FinType::new(&format!("dom({})", r.src.name()), &image_labels)?;
    let mut reindex = vec![usize::MAX; r.src.size()];
    let mut next = 0;
    for (y, &h) in hit.iter().enumerate() {
        if h {
            reindex[y] = next;
            next += 1;
        }
    }
    let left = r.left.iter().map(|&y| reindex[y]).collect();
    let totalized = SpanT::new(&image, &r.dst, &r.apex, left, r.right.clone())?;
    Ok((members, totalized))
}

/// The underlying boolean relation: entry `(y,x)` is true iff some apex
/// element has legs `(y,x)`.
pub fn flatten(r: &SpanT) -> Mat {
    let q = Quantale::boolean();
    let mut bits = vec![false; r.src.size() * r.dst.size()];
    for e in 0..r.apex.size() {
        bits[r.left[e] * r.dst.size() + r.right[e]] = true;
    }
    Mat::build(&r.src, &r.dst, &q, |y, x| {
        Ok(QElem::Bool(bits[y * r.dst.size() + x]))
    })
    .expect("shape is consistent by construction")
}

/// Verify the Beck condition for the cospan `f: Y→X ← Z :g`: pulling
/// back then pushing forward along the pullback legs agrees with pushing
/// forward along `f` then pulling back along `g`, on every subset of `Y`.
/// All four operators run at the flattened relation level.
pub fn beck_check(f: &TotalFn, g: &TotalFn) -> Result<bool> {
    if f.dst != g.dst {
        return Err(Error::Type(format!(
            "cospan legs must share a codomain, got `{}` and `{}`",
            f.dst.name(),
            g.dst.name()
        )));
    }
    let q = Quantale::boolean();
    let graph_f = flatten(&yoneda(f));
    let graph_g = flatten(&yoneda(g));
    let pullback = span_compose(&yoneda(f), &yoneda(g).op())?;
    let ghat = TotalFn::new(&pullback.apex, &f.src, pullback.left.clone())?;
    let fhat = TotalFn::new(&pullback.apex, &g.src, pullback.right.clone())?;
    let graph_ghat = flatten(&yoneda(&ghat));
    let graph_fhat = flatten(&yoneda(&fhat));
    for bits in 0..1u64 << f.src.size() {
        let phi = object(
            &f.src,
            &q,
            (0..f.src.size())
                .map(|y| QElem::Bool(bits >> y & 1 == 1))
                .collect(),
        )?;
        let via_cospan = obj_inverse(&obj_direct(&phi, &graph_f)?, &graph_g)?;
        let via_pullback = obj_direct(&obj_inverse(&phi, &graph_ghat)?, &graph_fhat)?;
        if via_cospan != via_pullback {
            return Ok(false);
        }
    }
    Ok(true)
}
