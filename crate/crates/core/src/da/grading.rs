//! Bidegree inference.
//!
//! A term `a ⊗ (b_1, ..., b_m)` in cell `(y, x)` forces
//! `gr(y) - gr(x) = (Σ deg b_j - deg a, m - 1)` in (intrinsic, homological)
//! degree. The generators form a graph with one edge per term; each connected
//! component is pinned at `(0, 0)` and solved by breadth-first search.

use std::collections::VecDeque;

use serde::Serialize;

use super::bimodule::{DABimodule, TermSource};
use super::schema::ConcreteTerm;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingWitness {
    pub reason: String,
    /// Edges `row <- col : (di, dh)` closing an inconsistent cycle.
    pub cycle: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Grading {
    Consistent(Vec<(i64, i64)>),
    Inconsistent(GradingWitness),
}

impl Grading {
    pub fn assignment(&self) -> Option<&[(i64, i64)]> {
        match self {
            Grading::Consistent(a) => Some(a),
            Grading::Inconsistent(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
struct Edge {
    row: usize,
    col: usize,
    shift: (i64, i64),
    label: String,
}

fn concrete_shift(t: &ConcreteTerm) -> (i64, i64) {
    (
        i64::from(t.input_degree()) - i64::from(t.degree()),
        t.inputs.len() as i64 - 1,
    )
}

fn solve(names: &[String], edges: &[Edge]) -> Grading {
    let n = names.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in edges.iter().enumerate() {
        adj[e.row].push(i);
        adj[e.col].push(i);
    }
    let mut value: Vec<Option<(i64, i64)>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let describe = |e: &Edge| {
        format!(
            "{} <- {} : ({}, {}) via {}",
            names[e.row], names[e.col], e.shift.0, e.shift.1, e.label
        )
    };
    let path_to_root = |mut v: usize, parent: &[Option<usize>]| {
        let mut path = Vec::new();
        while let Some(e) = parent[v] {
            path.push(describe(&edges[e]));
            let edge = &edges[e];
            v = if edge.row == v { edge.col } else { edge.row };
        }
        path
    };
    for root in 0..n {
        if value[root].is_some() {
            continue;
        }
        value[root] = Some((0, 0));
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let (vi, vh) = value[v].unwrap();
            for &ei in &adj[v] {
                let e = &edges[ei];
                let (other, expected) = if e.col == v {
                    (e.row, (vi + e.shift.0, vh + e.shift.1))
                } else {
                    (e.col, (vi - e.shift.0, vh - e.shift.1))
                };
                match value[other] {
                    None => {
                        value[other] = Some(expected);
                        parent[other] = Some(ei);
                        queue.push_back(other);
                    }
                    Some(found) if found != expected => {
                        let mut cycle = path_to_root(v, &parent);
                        cycle.reverse();
                        cycle.push(describe(e));
                        cycle.extend(path_to_root(other, &parent));
                        return Grading::Inconsistent(GradingWitness {
                            reason: format!(
                                "{} would need bidegree {:?} but already has {:?}",
                                names[other], expected, found
                            ),
                            cycle,
                        });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Grading::Consistent(value.into_iter().map(Option::unwrap).collect())
}

/// Infers bidegrees from the schemas themselves, so the answer covers every degree.
pub fn infer_bidegrees(module: &DABimodule) -> Grading {
    let names: Vec<String> = module.generators.iter().map(|g| g.name.clone()).collect();
    let mut edges = Vec::new();
    for (&(row, col), schemas) in &module.cells {
        for s in schemas {
            let (c, form) = s.degree_shift_form();
            if !form.is_empty() {
                return Grading::Inconsistent(GradingWitness {
                    reason: format!(
                        "intrinsic shift of `{s}` in cell ({}, {}) depends on its indices",
                        names[row], names[col]
                    ),
                    cycle: vec![],
                });
            }
            edges.push(Edge {
                row,
                col,
                shift: (c, s.arity() as i64 - 1),
                label: s.to_string(),
            });
        }
    }
    solve(&names, &edges)
}

/// Infers bidegrees from the concrete terms of output degree at most `bound`.
pub fn infer_concrete_bidegrees<M: TermSource + ?Sized>(module: &M, bound: u32) -> Result<Grading> {
    let names: Vec<String> = module.generators().iter().map(|g| g.name.clone()).collect();
    let edges: Vec<Edge> = module
        .terms_up_to(bound)?
        .into_iter()
        .map(|(row, col, t)| Edge {
            row,
            col,
            shift: concrete_shift(&t),
            label: t.to_string(),
        })
        .collect();
    Ok(solve(&names, &edges))
}

/// Terms of output degree at most `bound` that do not preserve the given bidegrees.
pub fn scan_bidegrees<M: TermSource + ?Sized>(
    module: &M,
    bidegrees: &[(i64, i64)],
    bound: u32,
) -> Result<Vec<String>> {
    let gens = module.generators();
    let mut bad = Vec::new();
    for (row, col, t) in module.terms_up_to(bound)? {
        let (di, dh) = concrete_shift(&t);
        let (ri, rh) = bidegrees[row];
        let (ci, ch) = bidegrees[col];
        if ri - ci != di || rh - ch != dh {
            bad.push(format!("({}, {}): {t}", gens[row].name, gens[col].name));
        }
    }
    Ok(bad)
}
