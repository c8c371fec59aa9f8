//! Independent reference implementations used to cross-check the main
//! library from the outside.
//!
//! Everything here works on plain data — `Vec<Vec<bool>>` relations,
//! `Option<BigRational>` distances (`None` = unreachable), index-based
//! rules — and deliberately uses different algorithms than the library
//! (per-source BFS instead of matrix squaring, Floyd–Warshall instead of
//! join-of-tensors closure, chaotic rule application instead of object
//! flow), so agreement between the two is meaningful evidence.

pub mod paths {
    use num::rational::BigRational;
    use num::Zero;

    /// All-pairs shortest distances of a weighted digraph, including the
    /// empty path (each node reaches itself at distance 0). `None` means
    /// unreachable. Weights must be non-negative for the usual
    /// Floyd–Warshall correctness argument to apply.
    pub fn floyd_warshall(w: &[Vec<Option<BigRational>>]) -> Vec<Vec<Option<BigRational>>> {
        let n = w.len();
        let mut dist = w.to_vec();
        let zero = BigRational::zero();
        for (i, row) in dist.iter_mut().enumerate() {
            assert_eq!(row.len(), n, "weight matrix must be square");
            let self_dist = &mut row[i];
            if self_dist.as_ref().map_or(true, |d| *d > zero) {
                *self_dist = Some(zero.clone());
            }
        }
        for k in 0..n {
            for i in 0..n {
                let via_k = match &dist[i][k] {
                    Some(d) => d.clone(),
                    None => continue,
                };
                for j in 0..n {
                    if let Some(kj) = &dist[k][j] {
                        let alt = &via_k + kj;
                        if dist[i][j].as_ref().map_or(true, |cur| alt < *cur) {
                            dist[i][j] = Some(alt);
                        }
                    }
                }
            }
        }
        dist
    }

    /// Reflexive-transitive reachability by per-source breadth-first
    /// search.
    pub fn reachability_closure(adj: &[Vec<bool>]) -> Vec<Vec<bool>> {
        let n = adj.len();
        let mut out = vec![vec![false; n]; n];
        for start in 0..n {
            let mut queue = vec![start];
            out[start][start] = true;
            while let Some(v) = queue.pop() {
                for w in 0..n {
                    if adj[v][w] && !out[start][w] {
                        out[start][w] = true;
                        queue.push(w);
                    }
                }
            }
        }
        out
    }
}

pub mod relations {
    /// Relational composition of boolean matrices.
    pub fn bool_compose(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
        let rows = a.len();
        let mid = b.len();
        let cols = if mid == 0 { 0 } else { b[0].len() };
        let mut out = vec![vec![false; cols]; rows];
        for (y, arow) in a.iter().enumerate() {
            for (z, &hit) in arow.iter().enumerate() {
                if hit {
                    for (x, &edge) in b[z].iter().enumerate() {
                        if edge {
                            out[y][x] = true;
                        }
                    }
                }
            }
        }
        out
    }

    /// Entrywise union.
    pub fn bool_union(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
        a.iter()
            .zip(b)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(&x, &y)| x || y).collect())
            .collect()
    }

    /// Is the relation the graph of a total function, i.e. does every
    /// row contain exactly one `true`?
    pub fn is_graph_of_total_function(r: &[Vec<bool>]) -> bool {
        r.iter().all(|row| row.iter().filter(|&&b| b).count() == 1)
    }
}

pub mod datalog {
    /// Minimal model of a propositional Datalog program by chaotic
    /// iteration: rules are `(body, heads)` index lists over
    /// `0..num_atoms`; facts are rules with empty bodies. Every rule
    /// whose body is satisfied contributes its heads, until nothing
    /// changes.
    pub fn minimal_model(num_atoms: usize, rules: &[(Vec<usize>, Vec<usize>)]) -> Vec<bool> {
        let mut model = vec![false; num_atoms];
        loop {
            let mut changed = false;
            for (body, heads) in rules {
                if body.iter().all(|&a| model[a]) {
                    for &h in heads {
                        if !model[h] {
                            model[h] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return model;
            }
        }
    }
}

pub mod gclsim {
    use std::collections::BTreeMap;

    use crate::relations::{bool_compose, bool_union};

    /// Mirror of the guarded-command syntax, interpreted by direct
    /// state-space simulation rather than matrix algebra.
    #[derive(Debug, Clone)]
    pub enum SimProg {
        Skip,
        Abort,
        Atom(String),
        Seq(Vec<SimProg>),
        Choice(Vec<SimProg>),
        Cond(String, Box<SimProg>, Box<SimProg>),
        While(String, Box<SimProg>),
    }

    /// Simulation environment over `n` states.
    #[derive(Debug, Clone, Default)]
    pub struct SimEnv {
        pub n: usize,
        pub atoms: BTreeMap<String, Vec<Vec<bool>>>,
        pub preds: BTreeMap<String, Vec<bool>>,
    }

    fn id(n: usize) -> Vec<Vec<bool>> {
        (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect()
    }

    /// The input/output relation of a program: while-loops run each
    /// start state forward until the guard fails, collecting every exit
    /// state reachable through guarded body steps.
    pub fn simulate(p: &SimProg, env: &SimEnv) -> Vec<Vec<bool>> {
        let n = env.n;
        match p {
            SimProg::Skip => id(n),
            SimProg::Abort => vec![vec![true; n]; n],
            SimProg::Atom(name) => env.atoms[name].clone(),
            SimProg::Seq(parts) => parts
                .iter()
                .fold(id(n), |acc, part| bool_compose(&acc, &simulate(part, env))),
            SimProg::Choice(parts) => parts.iter().fold(vec![vec![false; n]; n], |acc, part| {
                bool_union(&acc, &simulate(part, env))
            }),
            SimProg::Cond(b, then_p, else_p) => {
                let guard = &env.preds[b];
                let t = simulate(then_p, env);
                let e = simulate(else_p, env);
                (0..n)
                    .map(|y| if guard[y] { t[y].clone() } else { e[y].clone() })
                    .collect()
            }
            SimProg::While(b, body) => {
                let guard = &env.preds[b];
                let step = simulate(body, env);
                let mut out = vec![vec![false; n]; n];
                for start in 0..n {
                    let mut seen = vec![false; n];
                    seen[start] = true;
                    let mut queue = vec![start];
                    while let Some(v) = queue.pop() {
                        if !guard[v] {
                            out[start][v] = true;
                            continue;
                        }
                        for (w, &edge) in step[v].iter().enumerate() {
                            if edge && !seen[w] {
                                seen[w] = true;
                                queue.push(w);
                            }
                        }
                    }
                }
                out
            }
        }
    }

    /// Does every state in `pre` only step into `post` under `rel`?
    pub fn holds_triple(pre: &[bool], rel: &[Vec<bool>], post: &[bool]) -> bool {
        pre.iter().enumerate().all(|(y, &in_pre)| {
            !in_pre || rel[y].iter().enumerate().all(|(x, &edge)| !edge || post[x])
        })
    }
}
