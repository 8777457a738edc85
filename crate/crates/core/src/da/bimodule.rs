use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::schema::{ConcreteTerm, DegreeCap, TermSchema};
use crate::algebra::{Idempotent, Monomial};
use crate::error::{Error, Result};

pub const B2: &str = "B(2)";

/// A generator of a DA bimodule: one entry of the primary matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DAGenerator {
    pub name: String,
    pub left: Idempotent,
    pub right: Idempotent,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bidegree: Option<(i64, i64)>,
}

impl DAGenerator {
    pub fn new(name: &str, left: Idempotent, right: Idempotent) -> Self {
        DAGenerator {
            name: name.to_string(),
            left,
            right,
            bidegree: None,
        }
    }
}

/// Anything that can list its concrete secondary-matrix terms by output degree.
pub trait TermSource {
    fn name(&self) -> &str;
    fn generators(&self) -> &[DAGenerator];
    fn left_algebra(&self) -> &str;
    fn right_algebra(&self) -> &str;

    /// Every displayed term `(row, col, term)` with output degree at most
    /// `max_degree`. Unital terms `Id ⊗ Id` are not included.
    fn terms_up_to(&self, max_degree: u32) -> Result<Vec<(usize, usize, ConcreteTerm)>>;

    fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators()
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }
}

/// A DA bimodule whose secondary matrix is given by parameterized schemas.
/// Cells are keyed `(row, col)` by generator index: a schema in cell
/// `(y, x)` contributes `a ⊗ y` to `δ(x, b_1, ..., b_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DABimodule {
    pub name: String,
    pub left_algebra: String,
    pub right_algebra: String,
    pub generators: Vec<DAGenerator>,
    pub cells: BTreeMap<(usize, usize), BTreeSet<TermSchema>>,
    pub strictly_unital: bool,
    pub notes: Vec<String>,
}

impl DABimodule {
    pub fn new(name: &str, generators: Vec<DAGenerator>) -> Self {
        DABimodule {
            name: name.to_string(),
            left_algebra: B2.to_string(),
            right_algebra: B2.to_string(),
            generators,
            cells: BTreeMap::new(),
            strictly_unital: true,
            notes: Vec::new(),
        }
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.generator_index(name)
    }

    /// Adds one schema, written in the text syntax, to the cell (row, col).
    /// The schema is test-instantiated so that chaining mistakes surface here.
    pub fn add(&mut self, row: &str, col: &str, schema: &str) -> Result<()> {
        let schema: TermSchema = schema.parse()?;
        self.insert(self.index_of(row)?, self.index_of(col)?, schema)
    }

    pub fn insert(&mut self, row: usize, col: usize, schema: TermSchema) -> Result<()> {
        schema.instantiate(
            &self.generators[row],
            &self.generators[col],
            DegreeCap::Output(8),
        )?;
        self.cells.entry((row, col)).or_default().insert(schema);
        Ok(())
    }

    /// Removes one schema; returns whether it was present.
    pub fn remove(&mut self, row: &str, col: &str, schema: &str) -> Result<bool> {
        let schema: TermSchema = schema.parse()?;
        let key = (self.index_of(row)?, self.index_of(col)?);
        let Some(cell) = self.cells.get_mut(&key) else {
            return Ok(false);
        };
        let removed = cell.remove(&schema);
        if cell.is_empty() {
            self.cells.remove(&key);
        }
        Ok(removed)
    }

    pub fn cell(&self, row: usize, col: usize) -> impl Iterator<Item = &TermSchema> {
        self.cells.get(&(row, col)).into_iter().flatten()
    }

    pub fn schema_count(&self) -> usize {
        self.cells.values().map(BTreeSet::len).sum()
    }

    /// Instances of one cell with output degree at most `bound`.
    pub fn instantiate_cell(
        &self,
        row: usize,
        col: usize,
        bound: u32,
    ) -> Result<BTreeSet<ConcreteTerm>> {
        let mut out = BTreeSet::new();
        for schema in self.cell(row, col) {
            for t in schema.instantiate(
                &self.generators[row],
                &self.generators[col],
                DegreeCap::Output(bound),
            )? {
                toggle(&mut out, t);
            }
        }
        Ok(out)
    }

    pub fn instantiate(&self, bound: u32) -> Result<ConcreteDABimodule> {
        let mut cells = BTreeMap::new();
        for &(row, col) in self.cells.keys() {
            let terms = self.instantiate_cell(row, col, bound)?;
            if !terms.is_empty() {
                cells.insert((row, col), terms);
            }
        }
        Ok(ConcreteDABimodule {
            name: self.name.clone(),
            left_algebra: self.left_algebra.clone(),
            right_algebra: self.right_algebra.clone(),
            generators: self.generators.clone(),
            cells,
            bound,
        })
    }
}

impl TermSource for DABimodule {
    fn name(&self) -> &str {
        &self.name
    }

    fn generators(&self) -> &[DAGenerator] {
        &self.generators
    }

    fn left_algebra(&self) -> &str {
        &self.left_algebra
    }

    fn right_algebra(&self) -> &str {
        &self.right_algebra
    }

    fn terms_up_to(&self, max_degree: u32) -> Result<Vec<(usize, usize, ConcreteTerm)>> {
        let mut out = Vec::new();
        for &(row, col) in self.cells.keys() {
            for t in self.instantiate_cell(row, col, max_degree)? {
                out.push((row, col, t));
            }
        }
        Ok(out)
    }
}

/// A DA bimodule with finitely many explicit terms, valid up to output degree `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteDABimodule {
    pub name: String,
    pub left_algebra: String,
    pub right_algebra: String,
    pub generators: Vec<DAGenerator>,
    pub cells: BTreeMap<(usize, usize), BTreeSet<ConcreteTerm>>,
    pub bound: u32,
}

impl ConcreteDABimodule {
    pub fn term_count(&self) -> usize {
        self.cells.values().map(BTreeSet::len).sum()
    }

    /// Cells keyed by generator names, for comparisons that ignore generator order.
    pub fn named_cells(&self) -> BTreeMap<(String, String), BTreeSet<ConcreteTerm>> {
        self.cells
            .iter()
            .map(|(&(r, c), terms)| {
                (
                    (
                        self.generators[r].name.clone(),
                        self.generators[c].name.clone(),
                    ),
                    terms.clone(),
                )
            })
            .collect()
    }

    /// The same module with every term of output degree above `bound` dropped.
    pub fn truncate(&self, bound: u32) -> ConcreteDABimodule {
        let mut out = self.clone();
        out.bound = bound.min(self.bound);
        for terms in out.cells.values_mut() {
            terms.retain(|t| t.degree() <= bound);
        }
        out.cells.retain(|_, t| !t.is_empty());
        out
    }
}

impl TermSource for ConcreteDABimodule {
    fn name(&self) -> &str {
        &self.name
    }

    fn generators(&self) -> &[DAGenerator] {
        &self.generators
    }

    fn left_algebra(&self) -> &str {
        &self.left_algebra
    }

    fn right_algebra(&self) -> &str {
        &self.right_algebra
    }

    fn terms_up_to(&self, max_degree: u32) -> Result<Vec<(usize, usize, ConcreteTerm)>> {
        if max_degree > self.bound {
            return Err(Error::BoundExceeded {
                module: self.name.clone(),
                built: self.bound,
                requested: max_degree,
            });
        }
        Ok(self
            .cells
            .iter()
            .flat_map(|(&(r, c), terms)| {
                terms
                    .iter()
                    .filter(move |t| t.degree() <= max_degree)
                    .map(move |t| (r, c, t.clone()))
            })
            .collect())
    }
}

pub(crate) fn toggle<T: Ord>(set: &mut BTreeSet<T>, item: T) {
    if !set.remove(&item) {
        set.insert(item);
    }
}

/// `δ¹_{1+m}(x, b_1, ..., b_m)` as a set of `(output, target generator)` pairs.
pub fn evaluate_delta(
    module: &DABimodule,
    x: &str,
    inputs: &[Monomial],
) -> Result<BTreeSet<(Monomial, String)>> {
    let col = module.index_of(x)?;
    let gen = &module.generators[col];
    let mut out = BTreeSet::new();
    let mut node = gen.right;
    for b in inputs {
        if b.left != node {
            return Ok(out);
        }
        node = b.right;
    }
    if inputs.iter().any(Monomial::is_idempotent) {
        if module.strictly_unital && inputs.len() == 1 {
            out.insert((Monomial::idempotent(gen.left), gen.name.clone()));
        }
        return Ok(out);
    }
    let total: u32 = inputs.iter().map(Monomial::degree).sum();
    for row in 0..module.generators.len() {
        for schema in module.cell(row, col) {
            if schema.arity() != inputs.len() {
                continue;
            }
            for t in schema.instantiate(&module.generators[row], gen, DegreeCap::Inputs(total))? {
                if t.inputs == inputs {
                    toggle(&mut out, (t.output, module.generators[row].name.clone()));
                }
            }
        }
    }
    Ok(out)
}
