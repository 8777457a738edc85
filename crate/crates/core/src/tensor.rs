//! Box tensor products `X ⊠ Y` in matrix notation.
//!
//! Generators are the pairs `(x, y)` with `right(x) = left(y)`. A term
//! `a ⊗ (b_1, ..., b_m)` of `X` in cell `(x', x)` and a chain of `Y` terms
//! `y = y_1 -> y_2 -> ... -> y_{m+1} = y'` whose outputs are exactly `b_1, ..., b_m`
//! give the term `a ⊗ (inputs of the chain)` in cell `((x', y'), (x, y))`.
//! The unital terms `Id ⊗ Id` of `X` are included, which carries every `Y`
//! term with an idempotent output over to the product; those of `Y` are not,
//! since they would only produce idempotent inputs.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::algebra::Monomial;
use crate::da::bimodule::toggle;
use crate::da::{ConcreteDABimodule, ConcreteTerm, DAGenerator, TermSource};
use crate::error::{Error, Result};

/// (column y, output b) -> [(row y', inputs)]
type YIndex = HashMap<(usize, Monomial), Vec<(usize, Vec<Monomial>)>>;

/// Index pairs `(x, y)` of the generators of `X ⊠ Y`, `X`-major.
pub fn primary_product<X, Y>(x: &X, y: &Y) -> Result<Vec<(usize, usize)>>
where
    X: TermSource + ?Sized,
    Y: TermSource + ?Sized,
{
    if x.right_algebra() != y.left_algebra() {
        return Err(Error::AlgebraMismatch {
            left: x.right_algebra().to_string(),
            right: y.left_algebra().to_string(),
        });
    }
    let mut out = Vec::new();
    for (i, gx) in x.generators().iter().enumerate() {
        for (j, gy) in y.generators().iter().enumerate() {
            if gx.right == gy.left {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

pub fn pair_name(x: &str, y: &str) -> String {
    format!("({x},{y})")
}

/// `X ⊠ Y` with every term of output degree at most `bound`.
pub fn box_tensor<X, Y>(x: &X, y: &Y, bound: u32) -> Result<ConcreteDABimodule>
where
    X: TermSource + ?Sized,
    Y: TermSource + ?Sized,
{
    let pairs = primary_product(x, y)?;
    let xg = x.generators();
    let yg = y.generators();
    let generators: Vec<DAGenerator> = pairs
        .iter()
        .map(|&(i, j)| DAGenerator {
            name: pair_name(&xg[i].name, &yg[j].name),
            left: xg[i].left,
            right: yg[j].right,
            bidegree: match (xg[i].bidegree, yg[j].bidegree) {
                (Some((a, b)), Some((c, d))) => Some((a + c, b + d)),
                _ => None,
            },
        })
        .collect();
    let index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut by_x: Vec<Vec<usize>> = vec![Vec::new(); xg.len()];
    for &(i, j) in &pairs {
        by_x[i].push(j);
    }

    let mut x_terms = x.terms_up_to(bound)?;
    for (i, g) in xg.iter().enumerate() {
        x_terms.push((i, i, ConcreteTerm::unital(g)));
    }
    let needed = x_terms
        .iter()
        .flat_map(|(_, _, t)| t.inputs.iter().map(Monomial::degree))
        .max()
        .unwrap_or(0);
    let mut y_index: YIndex = HashMap::new();
    for (row, col, t) in y.terms_up_to(needed)? {
        y_index
            .entry((col, t.output))
            .or_default()
            .push((row, t.inputs));
    }

    let mut cells: BTreeMap<(usize, usize), BTreeSet<ConcreteTerm>> = BTreeMap::new();
    for (xr, xc, t) in &x_terms {
        for &yc in &by_x[*xc] {
            let col = index[&(*xc, yc)];
            if t.inputs.is_empty() {
                let row = index[&(*xr, yc)];
                toggle(cells.entry((row, col)).or_default(), t.clone());
                continue;
            }
            let mut chain = Vec::new();
            chains(&y_index, &t.inputs, yc, &mut chain, &mut |yr, inputs| {
                let row = index[&(*xr, yr)];
                toggle(
                    cells.entry((row, col)).or_default(),
                    ConcreteTerm {
                        output: t.output,
                        inputs: inputs.to_vec(),
                    },
                );
            });
        }
    }
    cells.retain(|_, terms| !terms.is_empty());
    Ok(ConcreteDABimodule {
        name: format!("{}⊠{}", x.name(), y.name()),
        left_algebra: x.left_algebra().to_string(),
        right_algebra: y.right_algebra().to_string(),
        generators,
        cells,
        bound,
    })
}

/// Depth-first search over the chains of `Y` terms whose outputs are `outputs`
/// in order, starting from generator `start`.
fn chains(
    y_index: &YIndex,
    outputs: &[Monomial],
    start: usize,
    acc: &mut Vec<Monomial>,
    emit: &mut dyn FnMut(usize, &[Monomial]),
) {
    let Some((first, rest)) = outputs.split_first() else {
        emit(start, acc);
        return;
    };
    let Some(steps) = y_index.get(&(start, *first)) else {
        return;
    };
    for (next, inputs) in steps {
        let len = acc.len();
        acc.extend_from_slice(inputs);
        chains(y_index, rest, *next, acc, emit);
        acc.truncate(len);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{build, CorpusId};
    use crate::da::DABimodule;

    #[test]
    fn e1_p_cell() {
        let e1 = build(CorpusId::E1);
        let p = build(CorpusId::P);
        let prod = box_tensor(&e1, &p, 5).unwrap();
        let row = prod.generator_index("(X2,{AB}E{AC})").unwrap();
        let col = prod.generator_index("(X2,{AB}N{AB})").unwrap();
        let terms: Vec<String> = prod.cells[&(row, col)]
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(terms, ["Id(B)*U1 ⊗ R2", "Id(B)*U1^2 ⊗ R2*U2"]);
    }

    #[test]
    fn e2_p_cell_at_bound_two() {
        let prod = box_tensor(&build(CorpusId::E2), &build(CorpusId::P), 2).unwrap();
        let row = prod.generator_index("(Y3,{BC}N{BC})").unwrap();
        let col = prod.generator_index("(Y2,{AC}S{AC})").unwrap();
        let terms: Vec<String> = prod.cells[&(row, col)]
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(terms, ["R1 ⊗ (R1, Id(BC)*U2)"]);
    }

    #[test]
    fn primary_products() {
        let e1 = build(CorpusId::E1);
        let p = build(CorpusId::P);
        assert!(primary_product(&e1, &e1).unwrap().is_empty());
        let names: Vec<String> = primary_product(&p, &e1)
            .unwrap()
            .into_iter()
            .map(|(i, j)| pair_name(&p.generators[i].name, &e1.generators[j].name))
            .collect();
        assert_eq!(names[0], "({}S{},X1)");
        assert_eq!(names.len(), 5);
    }

    #[test]
    fn zero_factor_gives_empty_product() {
        let zero = DABimodule::new("0", vec![]);
        let prod = box_tensor(&build(CorpusId::P), &zero, 6).unwrap();
        assert!(prod.generators.is_empty() && prod.cells.is_empty());
    }

    #[test]
    fn algebra_mismatch() {
        let mut other = build(CorpusId::E1);
        other.left_algebra = "B(3)".into();
        assert!(matches!(
            box_tensor(&build(CorpusId::P), &other, 2),
            Err(Error::AlgebraMismatch { .. })
        ));
    }
}
