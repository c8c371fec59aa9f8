//! Finite type sums (biproducts) and the equivalence between block
//! matrices and terms over the summed types.
//!
//! A [`SumType`] bundles an ordered list of component types with a total
//! type whose labels are the tagged disjoint union `"<component>.<label>"`,
//! plus the injection and projection matrices. By construction these
//! satisfy the covering equation `⋁_i π_i ⊗ ι_i = id_total` and the
//! disjointness equations `ι_i ⊗ π_j = δ_ij`.
//!
//! On top of the sum structure the module provides the two pairings
//! ([`copair`] out of a sum, [`pair`] into a sum), the block-diagonal
//! [`term_sum`], and the mutually inverse [`partition`] / [`sum_flatten`]
//! between flat matrices over totals and [`BlockMat`] grids.

use crate::error::{Error, Result};
use crate::quantale::Quantale;
use crate::relmat::{compose, mjoin, mzero, FinType, Mat};

/// A finite biproduct of component types with its injections and
/// projections.
#[derive(Debug, Clone, PartialEq)]
pub struct SumType {
    components: Vec<FinType>,
    total: FinType,
    q: Quantale,
    injections: Vec<Mat>,
    projections: Vec<Mat>,
}

impl SumType {
    pub fn components(&self) -> &[FinType] {
        &self.components
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn total(&self) -> &FinType {
        &self.total
    }

    pub fn quantale(&self) -> &Quantale {
        &self.q
    }

    /// The injection `components[i] → total`.
    pub fn injection(&self, i: usize) -> &Mat {
        &self.injections[i]
    }

    /// The projection `total → components[i]`.
    pub fn projection(&self, i: usize) -> &Mat {
        &self.projections[i]
    }
}

/// Build the sum of `components` over `q`, named `name`.
///
/// Total labels are tagged `"<component>.<label>"`, so component names
/// must be distinct for the union to stay syntactically disjoint. The
/// empty list yields the null type with zero labels.
pub fn make_sum(name: &str, components: &[FinType], q: &Quantale) -> Result<SumType> {
    for (i, a) in components.iter().enumerate() {
        for b in &components[i + 1..] {
            if a.name() == b.name() {
                return Err(Error::Sum(format!(
                    "duplicate component name `{}` would collide in the tagged union",
                    a.name()
                )));
            }
        }
    }
    let mut labels = Vec::new();
    let mut offsets = Vec::with_capacity(components.len());
    for c in components {
        offsets.push(labels.len());
        for l in c.labels() {
            labels.push(format!("{}.{}", c.name(), l));
        }
    }
    let total = FinType::new(name, &labels)?;
    let unit = q.unit();
    let bottom = q.bottom();
    let mut injections = Vec::with_capacity(components.len());
    let mut projections = Vec::with_capacity(components.len());
    for (i, c) in components.iter().enumerate() {
        let off = offsets[i];
        let inj = Mat::build(c, &total, q, |y, x| {
            Ok(if x == off + y {
                unit.clone()
            } else {
                bottom.clone()
            })
        })?;
        projections.push(crate::relmat::transpose(&inj));
        injections.push(inj);
    }
    Ok(SumType {
        components: components.to_vec(),
        total,
        q: q.clone(),
        injections,
        projections,
    })
}

fn check_sum_quantale(sum: &SumType, m: &Mat, op: &str) -> Result<()> {
    if m.quantale() != &sum.q {
        return Err(Error::Sum(format!(
            "{op}: term carrier `{}` differs from the sum's `{}`",
            m.quantale().kind(),
            sum.q.kind()
        )));
    }
    Ok(())
}

/// The mediating matrix `total → X` out of a sum: joins `π_i ⊗ terms[i]`
/// so that `ι_i ⊗ copair(...) = terms[i]`.
///
/// With no components the common target cannot be inferred, so the empty
/// pairing is rejected.
pub fn copair(sum: &SumType, terms: &[Mat]) -> Result<Mat> {
    if terms.len() != sum.arity() {
        return Err(Error::Sum(format!(
            "copair: {} terms for a {}-component sum",
            terms.len(),
            sum.arity()
        )));
    }
    let first = terms.first().ok_or_else(|| {
        Error::Sum("copair: cannot infer the target of an empty pairing".to_string())
    })?;
    let dst = first.dst().clone();
    let mut acc = mzero(&sum.total, &dst, &sum.q);
    for (i, t) in terms.iter().enumerate() {
        check_sum_quantale(sum, t, "copair")?;
        if t.src() != &sum.components[i] {
            return Err(Error::Sum(format!(
                "copair: term {i} starts at `{}`, component {i} is `{}`",
                t.src().name(),
                sum.components[i].name()
            )));
        }
        if t.dst() != &dst {
            return Err(Error::Sum(format!(
                "copair: term {i} targets `{}`, expected the common `{}`",
                t.dst().name(),
                dst.name()
            )));
        }
        acc = mjoin(&acc, &compose(sum.projection(i), t)?)?;
    }
    Ok(acc)
}

/// The mediating matrix `X → total` into a sum: joins `terms[i] ⊗ ι_i`
/// so that `pair(...) ⊗ π_i = terms[i]`.
pub fn pair(sum: &SumType, terms: &[Mat]) -> Result<Mat> {
    if terms.len() != sum.arity() {
        return Err(Error::Sum(format!(
            "pair: {} terms for a {}-component sum",
            terms.len(),
            sum.arity()
        )));
    }
    let first = terms.first().ok_or_else(|| {
        Error::Sum("pair: cannot infer the source of an empty pairing".to_string())
    })?;
    let src = first.src().clone();
    let mut acc = mzero(&src, &sum.total, &sum.q);
    for (i, t) in terms.iter().enumerate() {
        check_sum_quantale(sum, t, "pair")?;
        if t.dst() != &sum.components[i] {
            return Err(Error::Sum(format!(
                "pair: term {i} targets `{}`, component {i} is `{}`",
                t.dst().name(),
                sum.components[i].name()
            )));
        }
        if t.src() != &src {
            return Err(Error::Sum(format!(
                "pair: term {i} starts at `{}`, expected the common `{}`",
                t.src().name(),
                src.name()
            )));
        }
        acc = mjoin(&acc, &compose(t, sum.injection(i))?)?;
    }
    Ok(acc)
}

/// The block-diagonal superposition of two terms over binary sums:
/// `(π_0 ⊗ s ⊗ ι_0) ⊕ (π_1 ⊗ r ⊗ ι_1)`, running both in parallel.
pub fn term_sum(sum_src: &SumType, sum_dst: &SumType, s: &Mat, r: &Mat) -> Result<Mat> {
    if sum_src.arity() != 2 || sum_dst.arity() != 2 {
        return Err(Error::Sum(format!(
            "term_sum expects binary sums, got {} and {} components",
            sum_src.arity(),
            sum_dst.arity()
        )));
    }
    for (i, t) in [s, r].into_iter().enumerate() {
        check_sum_quantale(sum_src, t, "term_sum")?;
        if t.src() != &sum_src.components[i] || t.dst() != &sum_dst.components[i] {
            return Err(Error::Sum(format!(
                "term_sum: block {i} is `{}`→`{}`, components are `{}`→`{}`",
                t.src().name(),
                t.dst().name(),
                sum_src.components[i].name(),
                sum_dst.components[i].name()
            )));
        }
    }
    let left = compose(&compose(sum_src.projection(0), s)?, sum_dst.injection(0))?;
    let right = compose(&compose(sum_src.projection(1), r)?, sum_dst.injection(1))?;
    mjoin(&left, &right)
}

/// A matrix over summed types presented as a grid of component blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockMat {
    rows: SumType,
    cols: SumType,
    blocks: Vec<Vec<Mat>>,
}

impl BlockMat {
    pub fn new(rows: &SumType, cols: &SumType, blocks: Vec<Vec<Mat>>) -> Result<BlockMat> {
        if blocks.len() != rows.arity() {
            return Err(Error::Sum(format!(
                "block grid has {} rows, row sum has {} components",
                blocks.len(),
                rows.arity()
            )));
        }
        for (i, row) in blocks.iter().enumerate() {
            if row.len() != cols.arity() {
                return Err(Error::Sum(format!(
                    "block row {i} has {} entries, column sum has {} components",
                    row.len(),
                    cols.arity()
                )));
            }
            for (j, b) in row.iter().enumerate() {
                if b.quantale() != rows.quantale() {
                    return Err(Error::Sum(format!(
                        "block ({i},{j}) carrier `{}` differs from the sum's `{}`",
                        b.quantale().kind(),
                        rows.quantale().kind()
                    )));
                }
                if b.src() != &rows.components[i] || b.dst() != &cols.components[j] {
                    return Err(Error::Sum(format!(
                        "block ({i},{j}) is `{}`→`{}`, expected `{}`→`{}`",
                        b.src().name(),
                        b.dst().name(),
                        rows.components[i].name(),
                        cols.components[j].name()
                    )));
                }
            }
        }
        Ok(BlockMat {
            rows: rows.clone(),
            cols: cols.clone(),
            blocks,
        })
    }

    pub fn rows(&self) -> &SumType {
        &self.rows
    }

    pub fn cols(&self) -> &SumType {
        &self.cols
    }

    pub fn block(&self, i: usize, j: usize) -> &Mat {
        &self.blocks[i][j]
    }
}

/// Slice a matrix over two totals into its component blocks
/// `block(i,j) = ι_i ⊗ r ⊗ π_j`.
pub fn partition(r: &Mat, rows: &SumType, cols: &SumType) -> Result<BlockMat> {
    if r.src() != rows.total() || r.dst() != cols.total() {
        return Err(Error::Sum(format!(
            "partition: matrix is `{}`→`{}`, sums total `{}`→`{}`",
            r.src().name(),
            r.dst().name(),
            rows.total().name(),
            cols.total().name()
        )));
    }
    if r.quantale() != rows.quantale() || r.quantale() != cols.quantale() {
        return Err(Error::Sum(
            "partition: matrix and sums must share one carrier".to_string(),
        ));
    }
    let blocks = (0..rows.arity())
        .map(|i| {
            (0..cols.arity())
                .map(|j| compose(&compose(rows.injection(i), r)?, cols.projection(j)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    BlockMat::new(rows, cols, blocks)
}

/// Reassemble a flat matrix from blocks: `⋁_{i,j} π_i ⊗ block(i,j) ⊗ ι_j`.
/// Mutually inverse with [`partition`].
pub fn sum_flatten(b: &BlockMat) -> Result<Mat> {
    let mut acc = mzero(b.rows.total(), b.cols.total(), b.rows.quantale());
    for i in 0..b.rows.arity() {
        for j in 0..b.cols.arity() {
            let lifted = compose(
                &compose(b.rows.projection(i), b.block(i, j))?,
                b.cols.injection(j),
            )?;
            acc = mjoin(&acc, &lifted)?;
        }
    }
    Ok(acc)
}

/// Compose block matrices blockwise: `(B ∘ C)(i,k) = ⋁_j B(i,j) ⊗ C(j,k)`.
pub fn block_compose(b: &BlockMat, c: &BlockMat) -> Result<BlockMat> {
    if b.cols != c.rows {
        return Err(Error::Sum(format!(
            "block composition: middle sums `{}` and `{}` differ",
            b.cols.total().name(),
            c.rows.total().name()
        )));
    }
    let blocks = (0..b.rows.arity())
        .map(|i| {
            (0..c.cols.arity())
                .map(|k| {
                    let mut acc = mzero(
                        &b.rows.components[i],
                        &c.cols.components[k],
                        b.rows.quantale(),
                    );
                    for j in 0..b.cols.arity() {
                        acc = mjoin(&acc, &compose(b.block(i, j), c.block(j, k))?)?;
                    }
                    Ok(acc)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    BlockMat::new(&b.rows, &c.cols, blocks)
}
