//! Quantale-valued relation matrices and the program logic they carry.
//!
//! The crate models relations between finite labelled sets as matrices with
//! entries drawn from a scalar quantale (boolean truth values, tropical
//! costs, extended naturals, finite Heyting lattices, or finite languages).
//! On top of the matrix algebra it builds:
//!
//! * [`quantale`] — the scalar carriers: order, join/meet, tensor, residual.
//! * [`relmat`] — typed matrices: composition, identities, both residuals,
//!   transposition, adjoint/functionality tests, object and image flows.
//! * [`subtype`] — predicates as comonoids (idempotent sub-identity
//!   diagonals): interior, reflexive-transitive closure, negation, the
//!   regular (double-negation-closed) fragment, standard implication.
//! * [`flow`] — Hoare triples, domains/ranges/kernels/cokernels, strongest
//!   postconditions, weakest liberal preconditions, dual flows, and
//!   fixpoints of inverse-then-direct flow along a parallel pair.
//! * [`sums`] — biproducts of types: injections/projections, pairing and
//!   copairing, block decomposition and flattening.
//! * [`span`] — spans of functions between finite sets, their pullback
//!   composition, the mediator order, and the boolean flattening functor.
//! * [`gcl`] — guarded commands (skip, abort, atoms, sequencing, choice,
//!   conditionals, loops) compiled to matrices and checked against
//!   pre/post specifications.

pub mod error;
pub mod flow;
pub mod gcl;
pub mod quantale;
pub mod relmat;
pub mod span;
pub mod subtype;
pub mod sums;

pub use error::{Error, Result};
pub use flow::{FlowReport, HoareTriple};
pub use gcl::{Env, Program, Verdict};
pub use quantale::{HeytingTable, Nat, QElem, Quantale, Trop};
pub use relmat::{FinType, Mat};
pub use span::{SpanOrderWitness, SpanT, TotalFn};
pub use subtype::{Comonoid, MonoidTerm};
pub use sums::{BlockMat, SumType};
