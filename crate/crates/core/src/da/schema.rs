//! Parameterized secondary-matrix entries.
//!
//! A [`TermSchema`] such as `R1*U1^k | R1, U2^(k+1)` stands for the infinite
//! family `Σ_k R1·U1^k ⊗ (R1, U2^{k+1})`. The idempotents of each monomial are
//! not part of the pattern; they are fixed by the row and column generators
//! of the cell the schema sits in.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use super::expr::{Assignment, Constraint, ExponentExpr};
use super::DAGenerator;
use crate::algebra::{Idempotent, Letter, Monomial};
use crate::error::{Error, Result};

/// A monomial with affine exponents: `letter · U1^e1 · U2^e2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialPattern {
    pub letter: Letter,
    pub e1: ExponentExpr,
    pub e2: ExponentExpr,
}

impl MonomialPattern {
    pub fn concrete(m: &Monomial) -> Self {
        MonomialPattern {
            letter: m.letter,
            e1: ExponentExpr::constant(i64::from(m.e1)),
            e2: ExponentExpr::constant(i64::from(m.e2)),
        }
    }

    pub fn mirror(&self) -> Self {
        MonomialPattern {
            letter: self.letter.mirror(),
            e1: self.e1.clone(),
            e2: self.e2.clone(),
        }
    }

    /// Instance starting at `start`; errors if the exponents go negative or the
    /// result is not a basis element.
    pub fn instantiate(
        &self,
        start: Idempotent,
        asg: &Assignment,
    ) -> std::result::Result<Monomial, String> {
        let e1 = self.e1.eval(asg);
        let e2 = self.e2.eval(asg);
        if e1 < 0 || e2 < 0 {
            return Err(format!("negative exponent in `{self}` at {asg:?}"));
        }
        Monomial::new(start, self.letter, e1 as u32, e2 as u32).ok_or_else(|| {
            format!("`{self}` at {asg:?} is not a basis element starting at {start}")
        })
    }

    /// Intrinsic degree as an affine form `(constant, coefficients)`.
    pub fn degree_form(&self) -> (i64, BTreeMap<String, i64>) {
        let mut coeffs = BTreeMap::new();
        for e in [&self.e1, &self.e2] {
            for (v, c) in e.terms() {
                *coeffs.entry(v.clone()).or_insert(0) += 2 * i64::from(*c);
            }
        }
        let constant = i64::from(self.letter.length())
            + 2 * (self.e1.constant_part() + self.e2.constant_part());
        (constant, coeffs)
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.e1.vars().chain(self.e2.vars())
    }

    pub fn latex(&self) -> String {
        let mut out = self.letter.latex().to_string();
        for (var, e) in [("U_1", &self.e1), ("U_2", &self.e2)] {
            if e.is_constant() && e.constant_part() == 0 {
                continue;
            }
            out.push_str(var);
            if !(e.is_constant() && e.constant_part() == 1) {
                out.push_str(&format!("^{{{e}}}"));
            }
        }
        if out.is_empty() {
            "1".into()
        } else {
            out
        }
    }
}

impl fmt::Display for MonomialPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.letter != Letter::Id {
            parts.push(self.letter.to_string());
        }
        for (var, e) in [("U1", &self.e1), ("U2", &self.e2)] {
            if e.is_constant() {
                match e.constant_part() {
                    0 => {}
                    1 => parts.push(var.to_string()),
                    c => parts.push(format!("{var}^{c}")),
                }
            } else if e.terms().len() == 1 && e.terms()[0].1 == 1 && e.constant_part() == 0 {
                parts.push(format!("{var}^{e}"));
            } else {
                parts.push(format!("{var}^({e})"));
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

impl FromStr for MonomialPattern {
    type Err = Error;

    /// Accepts `R2R1*U1^l*U2^(k+1)`, `1`, `Id`, `Id(B)*U2^3`, and `U1^{k+1}`.
    fn from_str(s: &str) -> Result<Self> {
        let mut letter = Letter::Id;
        let mut e1 = ExponentExpr::constant(0);
        let mut e2 = ExponentExpr::constant(0);
        let mut seen_letter = false;
        for raw in s.split('*') {
            let tok = raw.trim();
            if tok.is_empty() {
                return Err(Error::Parse(format!("empty factor in `{s}`")));
            }
            if let Some(rest) = tok.strip_prefix("U1").or_else(|| tok.strip_prefix("U2")) {
                let exp = match rest.strip_prefix('^') {
                    Some(e) => e.parse::<ExponentExpr>()?,
                    None if rest.is_empty() => ExponentExpr::constant(1),
                    None => return Err(Error::Parse(format!("bad factor `{tok}`"))),
                };
                let slot = if tok.starts_with("U1") {
                    &mut e1
                } else {
                    &mut e2
                };
                if !(slot.is_constant() && slot.constant_part() == 0) {
                    return Err(Error::Parse(format!("repeated U factor in `{s}`")));
                }
                *slot = exp;
                continue;
            }
            if seen_letter {
                return Err(Error::Parse(format!("more than one path letter in `{s}`")));
            }
            seen_letter = true;
            letter = if tok.starts_with("Id(") && tok.ends_with(')') {
                tok[3..tok.len() - 1].parse::<Idempotent>()?;
                Letter::Id
            } else {
                tok.parse()?
            };
        }
        Ok(MonomialPattern { letter, e1, e2 })
    }
}

/// Which degree bounds an enumeration of index assignments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeCap {
    /// Output intrinsic degree at most this value.
    Output(u32),
    /// Total input intrinsic degree at most this value.
    Inputs(u32),
}

/// One parameterized family `output ⊗ (inputs...)` of secondary-matrix terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermSchema {
    pub output: MonomialPattern,
    pub inputs: Vec<MonomialPattern>,
    pub indices: Vec<String>,
    pub constraints: Vec<Constraint>,
}

impl TermSchema {
    pub fn new(
        output: MonomialPattern,
        inputs: Vec<MonomialPattern>,
        mut constraints: Vec<Constraint>,
    ) -> Result<Self> {
        let mut indices: BTreeSet<String> = output.vars().map(str::to_string).collect();
        for p in &inputs {
            indices.extend(p.vars().map(str::to_string));
        }
        for c in &constraints {
            for v in c.vars() {
                if !indices.contains(v) {
                    return Err(Error::Parse(format!(
                        "constraint `{c}` mentions `{v}`, which no exponent uses"
                    )));
                }
            }
        }
        constraints.sort();
        constraints.dedup();
        Ok(TermSchema {
            output,
            inputs,
            indices: indices.into_iter().collect(),
            constraints,
        })
    }

    pub fn concrete(term: &ConcreteTerm) -> Self {
        TermSchema {
            output: MonomialPattern::concrete(&term.output),
            inputs: term.inputs.iter().map(MonomialPattern::concrete).collect(),
            indices: vec![],
            constraints: vec![],
        }
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    fn total_input_form(&self) -> (i64, BTreeMap<String, i64>) {
        let mut constant = 0;
        let mut coeffs = BTreeMap::new();
        for p in &self.inputs {
            let (c, m) = p.degree_form();
            constant += c;
            for (v, k) in m {
                *coeffs.entry(v).or_insert(0) += k;
            }
        }
        (constant, coeffs)
    }

    /// `Σ deg(inputs) - deg(output)` as an affine form in the indices.
    pub fn degree_shift_form(&self) -> (i64, BTreeMap<String, i64>) {
        let (ci, mut mi) = self.total_input_form();
        let (co, mo) = self.output.degree_form();
        for (v, k) in mo {
            *mi.entry(v).or_insert(0) -= k;
        }
        mi.retain(|_, k| *k != 0);
        (ci - co, mi)
    }

    /// All admissible index assignments within the degree cap.
    pub fn assignments(&self, cap: DegreeCap) -> std::result::Result<Vec<Assignment>, String> {
        let (form_const, form) = match cap {
            DegreeCap::Output(_) => self.output.degree_form(),
            DegreeCap::Inputs(_) => self.total_input_form(),
        };
        let limit = i64::from(match cap {
            DegreeCap::Output(d) | DegreeCap::Inputs(d) => d,
        });
        if self.indices.is_empty() {
            return Ok(if form_const <= limit {
                vec![Assignment::new()]
            } else {
                vec![]
            });
        }
        // per-variable upper bounds from the degree form, then from constraints
        let mut caps: BTreeMap<&str, i64> = BTreeMap::new();
        for v in &self.indices {
            if let Some(&c) = form.get(v) {
                if c > 0 {
                    caps.insert(v, ((limit - form_const).max(0)) / c);
                }
            }
        }
        loop {
            let mut changed = false;
            for c in &self.constraints {
                let Constraint::Le(lhs, rhs) = c else {
                    continue;
                };
                let [(v, 1)] = lhs.terms() else { continue };
                if caps.contains_key(v.as_str()) {
                    continue;
                }
                if rhs.vars().all(|w| caps.contains_key(w)) {
                    let rhs_max = rhs.terms().iter().fold(rhs.constant_part(), |acc, (w, k)| {
                        acc + i64::from(*k) * caps[w.as_str()]
                    });
                    caps.insert(v.as_str(), (rhs_max - lhs.constant_part()).max(0));
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if let Some(v) = self.indices.iter().find(|v| !caps.contains_key(v.as_str())) {
            return Err(format!(
                "index `{v}` is unbounded at fixed degree; degree must grow with every index"
            ));
        }
        let ranges = self.indices.iter().map(|v| 0..=caps[v.as_str()] as u32);
        let mut out = Vec::new();
        for values in ranges.multi_cartesian_product() {
            let asg: Assignment = self.indices.iter().cloned().zip(values).collect();
            let degree = form
                .iter()
                .fold(form_const, |acc, (v, c)| acc + c * i64::from(asg[v]));
            if degree <= limit && self.constraints.iter().all(|c| c.holds(&asg)) {
                out.push(asg);
            }
        }
        Ok(out)
    }

    /// One instance in the cell (row, col). Checks idempotent chaining and
    /// strict unitality of the inputs.
    pub fn instance(
        &self,
        row: &DAGenerator,
        col: &DAGenerator,
        asg: &Assignment,
    ) -> std::result::Result<ConcreteTerm, String> {
        let output = self.output.instantiate(col.left, asg)?;
        if output.right != row.left {
            return Err(format!(
                "output `{output}` ends at {} but the row generator has left idempotent {}",
                output.right, row.left
            ));
        }
        let mut node = col.right;
        let mut inputs = Vec::with_capacity(self.inputs.len());
        for p in &self.inputs {
            let m = p.instantiate(node, asg)?;
            if m.is_idempotent() {
                return Err(format!(
                    "input `{p}` at {asg:?} is a distinguished idempotent"
                ));
            }
            node = m.right;
            inputs.push(m);
        }
        if node != row.right {
            return Err(format!(
                "inputs end at {node} but the row generator has right idempotent {}",
                row.right
            ));
        }
        Ok(ConcreteTerm { output, inputs })
    }

    /// Every instance in the cell (row, col) within the degree cap.
    pub fn instantiate(
        &self,
        row: &DAGenerator,
        col: &DAGenerator,
        cap: DegreeCap,
    ) -> Result<Vec<ConcreteTerm>> {
        let malformed = |reason: String| Error::MalformedSchema {
            row: row.name.clone(),
            col: col.name.clone(),
            reason: format!("{self}: {reason}"),
        };
        let asgs = self.assignments(cap).map_err(malformed)?;
        asgs.iter()
            .map(|a| self.instance(row, col, a).map_err(malformed))
            .collect()
    }

    /// The image under `L_i <-> R_i` with order reversal, inputs reversed.
    pub fn mirror(&self) -> TermSchema {
        TermSchema {
            output: self.output.mirror(),
            inputs: self
                .inputs
                .iter()
                .rev()
                .map(MonomialPattern::mirror)
                .collect(),
            indices: self.indices.clone(),
            constraints: self.constraints.clone(),
        }
    }
}

/// Display syntax: `output | in1, in2 ; constraint ; constraint`.
impl fmt::Display for TermSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.output)?;
        if !self.inputs.is_empty() {
            write!(f, " | {}", self.inputs.iter().join(", "))?;
        }
        for c in &self.constraints {
            write!(f, " ; {c}")?;
        }
        Ok(())
    }
}

impl FromStr for TermSchema {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(';');
        let head = parts.next().unwrap_or_default();
        let (out, ins) = match head.split_once('|') {
            Some((o, i)) => (o, Some(i)),
            None => (head, None),
        };
        let output: MonomialPattern = out.trim().parse()?;
        let inputs = match ins {
            Some(i) => {
                let i = i.trim();
                let i = i
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .unwrap_or(i);
                i.split(',')
                    .map(|p| p.trim().parse())
                    .collect::<Result<Vec<_>>>()?
            }
            None => vec![],
        };
        let mut constraints = Vec::new();
        for c in parts {
            if !c.trim().is_empty() {
                constraints.extend(Constraint::parse_list(c)?);
            }
        }
        TermSchema::new(output, inputs, constraints)
    }
}

/// One concrete secondary-matrix term `output ⊗ (inputs...)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConcreteTerm {
    pub output: Monomial,
    pub inputs: Vec<Monomial>,
}

impl ConcreteTerm {
    pub fn unital(gen: &DAGenerator) -> Self {
        ConcreteTerm {
            output: Monomial::idempotent(gen.left),
            inputs: vec![Monomial::idempotent(gen.right)],
        }
    }

    pub fn degree(&self) -> u32 {
        self.output.degree()
    }

    pub fn input_degree(&self) -> u32 {
        self.inputs.iter().map(Monomial::degree).sum()
    }
}

impl fmt::Display for ConcreteTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.output)?;
        match self.inputs.len() {
            0 => Ok(()),
            1 => write!(f, " ⊗ {}", self.inputs[0]),
            _ => write!(f, " ⊗ ({})", self.inputs.iter().join(", ")),
        }
    }
}
