//! Guarded-command programs over a finite state type, compiled to
//! relation matrices.
//!
//! The interpretation table:
//!
//! | construct          | matrix                                  |
//! |--------------------|-----------------------------------------|
//! | `Skip`             | identity                                |
//! | `Abort`            | top (most nondeterministic)             |
//! | `Atom(name)`       | looked up in the [`Env`]                |
//! | `Seq[p…]`          | tensor of the parts (empty = identity)  |
//! | `Choice[p…]`       | join of the parts (empty = zero)        |
//! | `Cond(b, p, q)`    | `(b ⊗ p) ⊕ (¬b ⊗ q)`                    |
//! | `While(b, p)`      | `closure(b ⊗ p) ⊗ ¬b`                   |
//!
//! `Abort` is the *top* matrix, not the empty relation: the zero term is
//! deliberately not a program construct and is exposed instead as the
//! built-in atom `"magic"`, registered by every [`Env`].
//!
//! [`verify`] checks a named pre/post pair against a program via the
//! triple inequality and reports a [`Verdict`] — on failure, a
//! counterexample state (boolean carrier) or the first violated entry
//! pair (other carriers).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::flow::{is_triple, sp, wlp};
use crate::quantale::Quantale;
use crate::relmat::{compose, identity, mjoin, mtop, mzero, FinType, Mat};
use crate::subtype::{closure, negation, Comonoid};

/// Iteration budget for the closure inside `While`; each step squares
/// the accumulated matrix, so the bound is effectively unreachable for
/// carriers whose closures stabilize.
const CLOSURE_BUDGET: usize = 64;

/// Program syntax. Predicates are names of comonoids registered in the
/// environment; atoms are names of square matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Program {
    Skip,
    Abort,
    Atom(String),
    Seq(Vec<Program>),
    Choice(Vec<Program>),
    Cond(String, Box<Program>, Box<Program>),
    While(String, Box<Program>),
}

/// Compilation environment: one state type, one carrier, and the named
/// atoms and predicates programs may reference.
#[derive(Debug, Clone)]
pub struct Env {
    state: FinType,
    q: Quantale,
    atoms: BTreeMap<String, Mat>,
    preds: BTreeMap<String, Comonoid>,
}

impl Env {
    /// A fresh environment; the atom `"magic"` (the zero term, which is
    /// below every program) is pre-registered.
    pub fn new(state: &FinType, q: &Quantale) -> Env {
        let mut atoms = BTreeMap::new();
        atoms.insert("magic".to_string(), mzero(state, state, q));
        Env {
            state: state.clone(),
            q: q.clone(),
            atoms,
            preds: BTreeMap::new(),
        }
    }

    pub fn state_type(&self) -> &FinType {
        &self.state
    }

    pub fn quantale(&self) -> &Quantale {
        &self.q
    }

    /// Register a named atom; it must be square over the state type.
    /// Re-registering a name (including `"magic"`) replaces it.
    pub fn add_atom(&mut self, name: &str, m: Mat) -> Result<()> {
        if m.quantale() != &self.q {
            return Err(Error::QuantaleMismatch(
                m.quantale().kind().to_string(),
                self.q.kind().to_string(),
            ));
        }
        if m.src() != &self.state || m.dst() != &self.state {
            return Err(Error::Type(format!(
                "atom `{name}` is `{}`→`{}`, expected square over `{}`",
                m.src().name(),
                m.dst().name(),
                self.state.name()
            )));
        }
        self.atoms.insert(name.to_string(), m);
        Ok(())
    }

    /// Register a named predicate over the state type.
    pub fn add_pred(&mut self, name: &str, p: Comonoid) -> Result<()> {
        if p.quantale() != &self.q {
            return Err(Error::QuantaleMismatch(
                p.quantale().kind().to_string(),
                self.q.kind().to_string(),
            ));
        }
        if p.typ() != &self.state {
            return Err(Error::Type(format!(
                "predicate `{name}` is over `{}`, expected `{}`",
                p.typ().name(),
                self.state.name()
            )));
        }
        self.preds.insert(name.to_string(), p);
        Ok(())
    }

    pub fn atom(&self, name: &str) -> Result<&Mat> {
        self.atoms
            .get(name)
            .ok_or_else(|| Error::Unresolved(format!("atom `{name}`")))
    }

    pub fn pred(&self, name: &str) -> Result<&Comonoid> {
        self.preds
            .get(name)
            .ok_or_else(|| Error::Unresolved(format!("predicate `{name}`")))
    }

    pub fn atom_names(&self) -> impl Iterator<Item = &str> {
        self.atoms.keys().map(|s| s.as_str())
    }

    pub fn pred_names(&self) -> impl Iterator<Item = &str> {
        self.preds.keys().map(|s| s.as_str())
    }
}

/// Compile a program to its square matrix over the environment's state
/// type.
pub fn compile(p: &Program, env: &Env) -> Result<Mat> {
    match p {
        Program::Skip => Ok(identity(&env.state, &env.q)),
        Program::Abort => mtop(&env.state, &env.state, &env.q),
        Program::Atom(name) => Ok(env.atom(name)?.clone()),
        Program::Seq(parts) => {
            let mut acc = identity(&env.state, &env.q);
            for part in parts {
                acc = compose(&acc, &compile(part, env)?)?;
            }
            Ok(acc)
        }
        Program::Choice(parts) => {
            let mut acc = mzero(&env.state, &env.state, &env.q);
            for part in parts {
                acc = mjoin(&acc, &compile(part, env)?)?;
            }
            Ok(acc)
        }
        Program::Cond(b, then_p, else_p) => {
            let guard = env.pred(b)?;
            let taken = compose(&guard.as_mat(), &compile(then_p, env)?)?;
            let skipped = compose(&negation(guard)?.as_mat(), &compile(else_p, env)?)?;
            mjoin(&taken, &skipped)
        }
        Program::While(b, body) => {
            let guard = env.pred(b)?;
            let stepped = compose(&guard.as_mat(), &compile(body, env)?)?;
            let looped = closure(&stepped, CLOSURE_BUDGET)?.into_mat();
            compose(&looped, &negation(guard)?.as_mat())
        }
    }
}

/// Outcome of a verification query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails { witness: String },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

/// Check `{v} r {u}` and, on failure, produce a witness: over the
/// boolean carrier, a state in `v` with a successor outside `u`;
/// elsewhere, the first entry pair where the inequality breaks.
pub fn verify_term(v: &Comonoid, r: &Mat, u: &Comonoid) -> Result<Verdict> {
    if is_triple(v, r, u)? {
        return Ok(Verdict::Holds);
    }
    let q = r.quantale();
    let lhs = compose(&v.as_mat(), r)?;
    let rhs = compose(r, &u.as_mat())?;
    for y in 0..r.src().size() {
        for x in 0..r.dst().size() {
            if !q.leq(lhs.get(y, x), rhs.get(y, x))? {
                let witness = if q.kind() == "boolean" {
                    r.src().label(y).to_string()
                } else {
                    format!("{}->{}", r.src().label(y), r.dst().label(x))
                };
                return Ok(Verdict::Fails { witness });
            }
        }
    }
    Err(Error::Lattice(
        "triple reported false but no violated entry found".to_string(),
    ))
}

/// Compile `p` and check the triple named by `pre`/`post`.
pub fn verify(pre: &str, p: &Program, post: &str, env: &Env) -> Result<Verdict> {
    let v = env.pred(pre)?;
    let u = env.pred(post)?;
    let r = compile(p, env)?;
    verify_term(v, &r, u)
}

/// Strongest postcondition of a compiled program from the named
/// precondition.
pub fn program_sp(p: &Program, pre: &str, env: &Env) -> Result<Comonoid> {
    let v = env.pred(pre)?;
    sp(&compile(p, env)?, v)
}

/// Weakest liberal precondition of a compiled program for the named
/// postcondition.
pub fn program_wlp(p: &Program, post: &str, env: &Env) -> Result<Comonoid> {
    let u = env.pred(post)?;
    wlp(&compile(p, env)?, u)
}
