//! Isomorphisms between concrete bimodules, and the commutation of the
//! crossing bimodules with the 2-action bimodules.
//!
//! Isomorphism here means equality of secondary matrices under a bijection
//! of generators. Candidates are confined to generators with the same left
//! and right idempotents, which keeps the search tiny for the corpus.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::Idempotent;
use crate::corpus::{build, is_zero_boxsquare, CorpusId};
use crate::da::{infer_concrete_bidegrees, ConcreteDABimodule, ConcreteTerm, Grading};
use crate::error::Result;
use crate::tensor::box_tensor;

/// Generator names of `X` paired with generator names of `Y`, in `X` order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorBijection {
    pub pairs: Vec<(String, String)>,
}

impl GeneratorBijection {
    pub fn inverse(&self) -> GeneratorBijection {
        let mut pairs: Vec<(String, String)> = self
            .pairs
            .iter()
            .map(|(a, b)| (b.clone(), a.clone()))
            .collect();
        pairs.sort();
        GeneratorBijection { pairs }
    }

    pub fn image(&self, x: &str) -> Option<&str> {
        self.pairs
            .iter()
            .find(|(a, _)| a == x)
            .map(|(_, b)| b.as_str())
    }

    /// Whether the bijection carries every cell of `x` onto the same cell of `y`.
    pub fn is_isomorphism(&self, x: &ConcreteDABimodule, y: &ConcreteDABimodule) -> bool {
        if self.pairs.len() != x.generators.len() || x.generators.len() != y.generators.len() {
            return false;
        }
        let Some(map) = self.index_map(x, y) else {
            return false;
        };
        cells_agree(x, y, &map)
    }

    fn index_map(&self, x: &ConcreteDABimodule, y: &ConcreteDABimodule) -> Option<Vec<usize>> {
        x.generators
            .iter()
            .map(|g| {
                let target = self.image(&g.name)?;
                y.generators.iter().position(|h| h.name == target)
            })
            .collect()
    }
}

impl std::fmt::Display for GeneratorBijection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|(a, b)| format!("{a} ↔ {b}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn cells_agree(x: &ConcreteDABimodule, y: &ConcreteDABimodule, map: &[usize]) -> bool {
    let empty = BTreeSet::new();
    let mapped: BTreeMap<(usize, usize), &BTreeSet<ConcreteTerm>> = x
        .cells
        .iter()
        .map(|(&(r, c), t)| ((map[r], map[c]), t))
        .collect();
    mapped.len() == y.cells.len()
        && mapped
            .iter()
            .all(|(k, t)| y.cells.get(k).unwrap_or(&empty) == *t)
}

/// Whether two gradings differ by one shift on each connected component of
/// `x`'s term graph, after carrying generators across `map`.
fn bidegrees_compatible(
    x: &ConcreteDABimodule,
    gx: &[(i64, i64)],
    gy: &[(i64, i64)],
    map: &[usize],
) -> bool {
    let n = x.generators.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, v: usize) -> usize {
        if p[v] != v {
            let root = find(p, p[v]);
            p[v] = root;
        }
        p[v]
    }
    for &(r, c) in x.cells.keys() {
        let (a, b) = (find(&mut parent, r), find(&mut parent, c));
        parent[a] = b;
    }
    let mut shift: BTreeMap<usize, (i64, i64)> = BTreeMap::new();
    (0..n).all(|v| {
        let root = find(&mut parent, v);
        let d = (gy[map[v]].0 - gx[v].0, gy[map[v]].1 - gx[v].1);
        *shift.entry(root).or_insert(d) == d
    })
}

/// A bijection under which `x` and `y` have equal cells, if one exists.
/// Both modules should be built at the same bound.
pub fn find_isomorphism(
    x: &ConcreteDABimodule,
    y: &ConcreteDABimodule,
    bound: u32,
) -> Result<Option<GeneratorBijection>> {
    if x.generators.len() != y.generators.len()
        || x.left_algebra != y.left_algebra
        || x.right_algebra != y.right_algebra
    {
        return Ok(None);
    }
    let mut classes: BTreeMap<(Idempotent, Idempotent), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, g) in x.generators.iter().enumerate() {
        classes.entry((g.left, g.right)).or_default().0.push(i);
    }
    for (j, g) in y.generators.iter().enumerate() {
        classes.entry((g.left, g.right)).or_default().1.push(j);
    }
    if classes.values().any(|(a, b)| a.len() != b.len()) {
        return Ok(None);
    }
    let grades = match (
        infer_concrete_bidegrees(x, bound)?,
        infer_concrete_bidegrees(y, bound)?,
    ) {
        (Grading::Consistent(a), Grading::Consistent(b)) => Some((a, b)),
        _ => None,
    };
    let classes: Vec<(Vec<usize>, Vec<usize>)> = classes.into_values().collect();
    let mut map = vec![usize::MAX; x.generators.len()];
    let found = search(&classes, 0, &mut map, &mut |map| {
        cells_agree(x, y, map)
            && grades
                .as_ref()
                .is_none_or(|(a, b)| bidegrees_compatible(x, a, b, map))
    });
    Ok(found.then(|| GeneratorBijection {
        pairs: map
            .iter()
            .enumerate()
            .map(|(i, &j)| (x.generators[i].name.clone(), y.generators[j].name.clone()))
            .collect(),
    }))
}

/// Tries every matching of each class in turn; stops at the first accepted map.
fn search(
    classes: &[(Vec<usize>, Vec<usize>)],
    at: usize,
    map: &mut Vec<usize>,
    accept: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let Some((xs, ys)) = classes.get(at) else {
        return accept(map);
    };
    let mut perm = ys.clone();
    permutations(&mut perm, 0, &mut |p| {
        for (&i, &j) in xs.iter().zip(p) {
            map[i] = j;
        }
        search(classes, at + 1, map, accept)
    })
}

fn permutations(v: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == v.len() {
        return f(v);
    }
    for i in k..v.len() {
        v.swap(k, i);
        if permutations(v, k + 1, f) {
            return true;
        }
        v.swap(k, i);
    }
    false
}

#[derive(Clone, Debug, Serialize)]
pub struct OneMorphismReport {
    pub crossing: CorpusId,
    pub action: CorpusId,
    pub bound: u32,
    pub verified: bool,
    /// From `E ⊠ X` to `X ⊠ E`.
    pub alpha: Option<GeneratorBijection>,
    /// `E ⊠ E = 0`, so the compatibility with `τ = 0` holds between zero modules.
    pub action_square_zero: bool,
    pub low_confidence: bool,
}

/// Below this bound only a handful of terms per cell are compared.
pub const CONFIDENT_BOUND: u32 = 6;

/// Builds `E ⊠ X` and `X ⊠ E` and looks for the isomorphism `α` between them.
pub fn verify_one_morphism(
    crossing: CorpusId,
    action: CorpusId,
    bound: u32,
) -> Result<OneMorphismReport> {
    let x = build(crossing);
    let e = build(action);
    let ex = box_tensor(&e, &x, bound)?;
    let xe = box_tensor(&x, &e, bound)?;
    let alpha = find_isomorphism(&ex, &xe, bound)?;
    let action_square_zero = is_zero_boxsquare(&e)?;
    Ok(OneMorphismReport {
        crossing,
        action,
        bound,
        verified: alpha.is_some() && action_square_zero,
        alpha,
        action_square_zero,
        low_confidence: bound < CONFIDENT_BOUND,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_on_itself() {
        let m = box_tensor(&build(CorpusId::E1), &build(CorpusId::P), 6).unwrap();
        let b = find_isomorphism(&m, &m, 6).unwrap().unwrap();
        assert!(b.pairs.iter().all(|(a, b)| a == b));
    }

    #[test]
    fn different_idempotent_classes() {
        let a = box_tensor(&build(CorpusId::E1), &build(CorpusId::P), 6).unwrap();
        let b = box_tensor(&build(CorpusId::E2), &build(CorpusId::P), 6).unwrap();
        assert!(find_isomorphism(&a, &b, 6).unwrap().is_none());
    }

    #[test]
    fn degenerate_bound_flags_low_confidence() {
        let r = verify_one_morphism(CorpusId::P, CorpusId::E1, 0).unwrap();
        assert!(r.verified && r.low_confidence);
    }
}
