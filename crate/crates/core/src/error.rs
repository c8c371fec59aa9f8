//! Error type shared by every module in the crate.

/// Everything that can go wrong when building or combining terms.
///
/// Operations are total on well-formed inputs of matching shape and carrier;
/// each variant names one way the inputs can fail to line up, plus the two
/// runtime conditions (`Unsupported`, `Divergence`) that depend on the
/// quantale rather than on shapes.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A scalar value does not belong to the carrier it is used with
    /// (wrong variant, negative cost, out-of-table index, foreign letter).
    #[error("value {value} is not in the {quantale} carrier")]
    Domain { quantale: String, value: String },

    /// The operation has no finite representation in this quantale
    /// (residuals, tops, and closures over the language quantale).
    #[error("operation `{op}` is unsupported in the {quantale} quantale")]
    Unsupported { op: &'static str, quantale: String },

    /// A lattice table failed validation (not a poset, not a lattice,
    /// or not distributive).
    #[error("invalid lattice table: {0}")]
    Lattice(String),

    /// Two matrices disagree on row/column dimensions.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Two terms disagree on their finite types (composition endpoints,
    /// predicate types, block layouts).
    #[error("type mismatch: {0}")]
    Type(String),

    /// Two terms live over different quantales.
    #[error("quantale mismatch: {0} vs {1}")]
    QuantaleMismatch(String, String),

    /// A matrix claimed to be a predicate is not a comonoid
    /// (off-diagonal mass, non-idempotent diagonal).
    #[error("not a comonoid: {0}")]
    NotComonoid(String),

    /// A pre/post pair does not bound the given term.
    #[error("not a valid triple: {0}")]
    NotTriple(String),

    /// An iteration (closure, fixpoint) failed to stabilize within its
    /// step bound.
    #[error("iteration did not stabilize within {0} steps")]
    Divergence(usize),

    /// A sum type could not be built or indexed.
    #[error("invalid sum: {0}")]
    Sum(String),

    /// A program referred to an atom or predicate the environment
    /// does not define.
    #[error("unresolved name: {0}")]
    Unresolved(String),

    /// A term is malformed for the requested operation
    /// (non-square where an endoterm is needed, not an object row, ...).
    #[error("invalid term: {0}")]
    Term(String),
}

pub type Result<T> = std::result::Result<T, Error>;
