//! JSON exchange format for schema-valued and concrete bimodules.
//!
//! ```json
//! {"name": "E1", "left_algebra": "B(2)", "right_algebra": "B(2)",
//!  "strictly_unital": true,
//!  "generators": [{"name": "X2", "left": "B", "right": "AB"}],
//!  "cells": [{"row": "X2", "col": "X2",
//!             "schemas": [{"output": "U1^(k+1)", "inputs": ["U1^(k+1)"],
//!                          "indices": ["k"], "constraints": []}]}]}
//! ```
//!
//! Concrete bimodules use the same layout with a `bound` field and no indices.

use serde::{Deserialize, Serialize};

use super::bimodule::{ConcreteDABimodule, DABimodule, DAGenerator, B2};
use super::expr::Constraint;
use super::schema::{MonomialPattern, TermSchema};
use crate::error::{Error, Result};

fn default_algebra() -> String {
    B2.to_string()
}

fn default_true() -> bool {
    true
}

#[derive(Serialize, Deserialize)]
struct ModuleJson {
    name: String,
    #[serde(default = "default_algebra")]
    left_algebra: String,
    #[serde(default = "default_algebra")]
    right_algebra: String,
    #[serde(default = "default_true")]
    strictly_unital: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
    generators: Vec<DAGenerator>,
    cells: Vec<CellJson>,
}

#[derive(Serialize, Deserialize)]
struct CellJson {
    row: String,
    col: String,
    schemas: Vec<SchemaJson>,
}

#[derive(Serialize, Deserialize)]
struct SchemaJson {
    output: String,
    #[serde(default)]
    inputs: Vec<String>,
    #[serde(default)]
    indices: Vec<String>,
    #[serde(default)]
    constraints: Vec<String>,
}

impl SchemaJson {
    fn of(s: &TermSchema) -> Self {
        SchemaJson {
            output: s.output.to_string(),
            inputs: s.inputs.iter().map(ToString::to_string).collect(),
            indices: s.indices.clone(),
            constraints: s.constraints.iter().map(ToString::to_string).collect(),
        }
    }

    fn parse(&self) -> Result<TermSchema> {
        let output: MonomialPattern = self.output.parse()?;
        let inputs = self
            .inputs
            .iter()
            .map(|i| i.parse())
            .collect::<Result<Vec<MonomialPattern>>>()?;
        let mut constraints = Vec::new();
        for c in &self.constraints {
            constraints.extend(Constraint::parse_list(c)?);
        }
        let schema = TermSchema::new(output, inputs, constraints)?;
        if !self.indices.is_empty() {
            let mut declared = self.indices.clone();
            declared.sort();
            declared.dedup();
            if declared != schema.indices {
                return Err(Error::Parse(format!(
                    "declared indices {:?} differ from the indices {:?} used by `{schema}`",
                    self.indices, schema.indices
                )));
            }
        }
        Ok(schema)
    }
}

fn cells_json<'a, I>(gens: &[DAGenerator], cells: I) -> Vec<CellJson>
where
    I: Iterator<Item = ((usize, usize), Vec<SchemaJson>)> + 'a,
{
    cells
        .map(|((r, c), schemas)| CellJson {
            row: gens[r].name.clone(),
            col: gens[c].name.clone(),
            schemas,
        })
        .collect()
}

pub fn bimodule_to_json(m: &DABimodule) -> String {
    let doc = ModuleJson {
        name: m.name.clone(),
        left_algebra: m.left_algebra.clone(),
        right_algebra: m.right_algebra.clone(),
        strictly_unital: m.strictly_unital,
        bound: None,
        notes: m.notes.clone(),
        generators: m.generators.clone(),
        cells: cells_json(
            &m.generators,
            m.cells
                .iter()
                .map(|(&k, s)| (k, s.iter().map(SchemaJson::of).collect())),
        ),
    };
    serde_json::to_string_pretty(&doc).expect("bimodule serializes")
}

pub fn concrete_to_json(m: &ConcreteDABimodule) -> String {
    let doc = ModuleJson {
        name: m.name.clone(),
        left_algebra: m.left_algebra.clone(),
        right_algebra: m.right_algebra.clone(),
        strictly_unital: true,
        bound: Some(m.bound),
        notes: vec![],
        generators: m.generators.clone(),
        cells: cells_json(
            &m.generators,
            m.cells.iter().map(|(&k, terms)| {
                (
                    k,
                    terms
                        .iter()
                        .map(|t| SchemaJson::of(&TermSchema::concrete(t)))
                        .collect(),
                )
            }),
        ),
    };
    serde_json::to_string_pretty(&doc).expect("bimodule serializes")
}

/// A bimodule read from JSON, with the `bound` field if the file is concrete.
pub struct LoadedModule {
    pub module: DABimodule,
    pub bound: Option<u32>,
}

pub fn bimodule_from_json(text: &str) -> Result<LoadedModule> {
    let doc: ModuleJson = serde_json::from_str(text)?;
    let mut module = DABimodule::new(&doc.name, doc.generators);
    module.left_algebra = doc.left_algebra;
    module.right_algebra = doc.right_algebra;
    module.strictly_unital = doc.strictly_unital;
    module.notes = doc.notes;
    let mut seen = std::collections::BTreeSet::new();
    for g in &module.generators {
        if !seen.insert(g.name.clone()) {
            return Err(Error::Parse(format!("duplicate generator `{}`", g.name)));
        }
    }
    for cell in &doc.cells {
        let row = module.index_of(&cell.row)?;
        let col = module.index_of(&cell.col)?;
        for s in &cell.schemas {
            module.insert(row, col, s.parse()?)?;
        }
    }
    Ok(LoadedModule {
        module,
        bound: doc.bound,
    })
}

/// Reads a concrete bimodule; every schema must be index-free.
pub fn concrete_from_json(text: &str) -> Result<ConcreteDABimodule> {
    let loaded = bimodule_from_json(text)?;
    let bound = loaded
        .bound
        .ok_or_else(|| Error::Parse("concrete bimodule JSON needs a `bound` field".into()))?;
    if let Some(s) = loaded
        .module
        .cells
        .values()
        .flatten()
        .find(|s| !s.indices.is_empty())
    {
        return Err(Error::Parse(format!(
            "concrete bimodule has indexed schema `{s}`"
        )));
    }
    let max = loaded
        .module
        .cells
        .values()
        .flatten()
        .map(|s| s.output.degree_form().0 as u32)
        .max()
        .unwrap_or(0);
    let mut m = loaded.module.instantiate(max.max(bound))?;
    m.bound = bound;
    Ok(m)
}
