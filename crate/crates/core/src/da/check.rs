//! The DA bimodule relations, checked one output degree at a time.
//!
//! For every cell `(z, x)` the squared secondary matrix (two δ's composed, outputs
//! multiplied) plus the multiplication matrix (one input factored as `b'b''`)
//! must sum to zero. Both kinds of term keep or add output degree, so all keys
//! with output degree at most the bound are complete once every term with output
//! degree at most the bound is instantiated.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::bimodule::TermSource;
use super::schema::ConcreteTerm;
use crate::algebra::{factorizations, multiply_monomials, Monomial};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct RelationFailure {
    pub row: String,
    pub col: String,
    pub degree: u32,
    pub output: String,
    pub inputs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub module: String,
    pub bound: u32,
    pub terms_checked: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type Key = (usize, usize, Monomial, Vec<Monomial>);

fn flip(acc: &mut HashMap<Key, bool>, key: Key) {
    let v = acc.entry(key).or_insert(false);
    *v = !*v;
}

pub fn check_da_relations<M: TermSource + ?Sized>(
    module: &M,
    bound: u32,
) -> Result<RelationReport> {
    let gens = module.generators();
    let mut terms = module.terms_up_to(bound)?;
    let terms_checked = terms.len();
    for (i, g) in gens.iter().enumerate() {
        terms.push((i, i, ConcreteTerm::unital(g)));
    }
    let mut by_col: Vec<Vec<(usize, &ConcreteTerm)>> = vec![Vec::new(); gens.len()];
    for (row, col, t) in &terms {
        by_col[*col].push((*row, t));
    }

    let mut acc: HashMap<Key, bool> = HashMap::new();
    // squared secondary matrix: x --t1--> y --t2--> z
    for (y, x, t1) in &terms {
        for &(z, t2) in &by_col[*y] {
            let Some(out) = multiply_monomials(&t1.output, &t2.output) else {
                continue;
            };
            if out.degree() > bound {
                continue;
            }
            let mut inputs = t1.inputs.clone();
            inputs.extend_from_slice(&t2.inputs);
            flip(&mut acc, (*x, z, out, inputs));
        }
    }
    // multiplication matrix
    let mut cache: HashMap<Monomial, Vec<(Monomial, Monomial)>> = HashMap::new();
    for (z, x, t) in &terms {
        for (j, b) in t.inputs.iter().enumerate() {
            let splits = cache.entry(*b).or_insert_with(|| factorizations(b));
            for (b1, b2) in splits.iter() {
                let mut inputs = Vec::with_capacity(t.inputs.len() + 1);
                inputs.extend_from_slice(&t.inputs[..j]);
                inputs.push(*b1);
                inputs.push(*b2);
                inputs.extend_from_slice(&t.inputs[j + 1..]);
                flip(&mut acc, (*x, *z, t.output, inputs));
            }
        }
    }

    let failures: BTreeSet<RelationFailure> = acc
        .into_iter()
        .filter(|(_, odd)| *odd)
        .map(|((x, z, out, inputs), _)| RelationFailure {
            row: gens[z].name.clone(),
            col: gens[x].name.clone(),
            degree: out.degree(),
            output: out.to_string(),
            inputs: inputs.iter().map(Monomial::to_string).collect(),
        })
        .collect();
    Ok(RelationReport {
        module: module.name().to_string(),
        bound,
        terms_checked,
        failures: failures.into_iter().collect(),
    })
}
