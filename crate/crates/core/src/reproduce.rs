//! The whole pipeline in one call: algebra oracle, relation checks, zero
//! squares, the eight products against their displays, the four
//! isomorphisms, the symmetry and the gradings.
//!
//! Results are keyed by check name, so the JSON form does not depend on the
//! order in which checks finish. Timings are left out unless asked for, which
//! keeps two runs byte-identical.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use serde::Serialize;

use crate::algebra::rewrite::{rewrite_path, word_of};
use crate::algebra::{enumerate_basis, multiply, Monomial};
use crate::corpus::products::{displayed, label_typos, PRODUCTS};
use crate::corpus::{is_zero_boxsquare, symmetry_transform, Corpus, CorpusId};
use crate::da::{
    check_da_relations, infer_bidegrees, scan_bidegrees, ConcreteDABimodule, ConcreteTerm,
    DABimodule, Grading, TermSource,
};
use crate::error::Result;
use crate::tensor::box_tensor;
use crate::verify::{find_isomorphism, GeneratorBijection, CONFIDENT_BOUND};

/// Cap on the detail lines kept per check.
pub const DETAIL_LIMIT: usize = 25;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub passed: bool,
    pub summary: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

impl Check {
    fn new(passed: bool, summary: impl Into<String>, details: Vec<String>) -> Self {
        let mut details = details;
        if details.len() > DETAIL_LIMIT {
            let more = details.len() - DETAIL_LIMIT;
            details.truncate(DETAIL_LIMIT);
            details.push(format!("... and {more} more"));
        }
        Check {
            passed,
            summary: summary.into(),
            details,
            millis: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub bound: u32,
    pub passed: bool,
    pub checks: BTreeMap<String, Check>,
    /// The isomorphism `E ⊠ X → X ⊠ E` for each verified pair.
    pub bijections: BTreeMap<String, GeneratorBijection>,
    /// Printed labels or entries that were read differently from the page.
    pub typos: Vec<String>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, c)| !c.passed)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub timings: bool,
}

fn timed<T>(on: bool, f: impl FnOnce() -> T) -> (T, Option<u128>) {
    let start = Instant::now();
    let out = f();
    (out, on.then(|| start.elapsed().as_millis()))
}

/// Products of basis monomials against the rewriting oracle, exponents up to `max_exp`.
pub fn oracle_mismatches(max_exp: u32) -> Result<(usize, Vec<String>)> {
    let mut compared = 0;
    let mut bad = Vec::new();
    for summand in [1, 2] {
        let basis = enumerate_basis(summand, max_exp)?;
        for a in &basis {
            for b in &basis {
                compared += 1;
                let mut word = word_of(a);
                word.extend(word_of(b));
                let oracle = if a.right == b.left {
                    rewrite_path(a.left, &word)
                } else {
                    Default::default()
                };
                let table = multiply(a, b);
                if table != oracle {
                    bad.push(format!("{a} · {b}: table {table}, oracle {oracle}"));
                }
            }
        }
    }
    Ok((compared, bad))
}

/// Associativity on composable triples of basis monomials with exponents up to `max_exp`.
pub fn associativity_failures(max_exp: u32) -> Result<(usize, Vec<String>)> {
    let mut compared = 0;
    let mut bad = Vec::new();
    for summand in [1, 2] {
        let basis = enumerate_basis(summand, max_exp)?;
        let from = |m: Monomial| basis.iter().filter(move |b| b.left == m.right);
        for a in &basis {
            for b in from(*a) {
                for c in from(*b) {
                    compared += 1;
                    let ab: crate::algebra::AlgebraElement = multiply(a, b);
                    let bc = multiply(b, c);
                    let left = ab.mul(&(*c).into());
                    let right = crate::algebra::AlgebraElement::from(*a).mul(&bc);
                    if left != right {
                        bad.push(format!(
                            "({a} · {b}) · {c} = {left} but {a} · ({b} · {c}) = {right}"
                        ));
                    }
                }
            }
        }
    }
    Ok((compared, bad))
}

/// Term-level differences `computed` vs `expected`, one line per term.
pub fn cell_diffs(computed: &ConcreteDABimodule, expected: &ConcreteDABimodule) -> Vec<String> {
    let got = computed.named_cells();
    let want = expected.named_cells();
    let keys: BTreeSet<&(String, String)> = got.keys().chain(want.keys()).collect();
    let empty = BTreeSet::new();
    let mut out = Vec::new();
    for k in keys {
        let a: &BTreeSet<ConcreteTerm> = got.get(k).unwrap_or(&empty);
        let b = want.get(k).unwrap_or(&empty);
        for t in a.difference(b) {
            out.push(format!("({}, {}): computed only {t}", k.0, k.1));
        }
        for t in b.difference(a) {
            out.push(format!("({}, {}): displayed only {t}", k.0, k.1));
        }
    }
    for g in &expected.generators {
        if computed.generator_index(&g.name).is_err() {
            out.push(format!("generator {} displayed but not produced", g.name));
        }
    }
    out
}

/// Differences between two schema-level bimodules, cell by cell.
pub fn schema_diffs(a: &DABimodule, b: &DABimodule) -> Vec<String> {
    let mut out = Vec::new();
    if a.generators != b.generators {
        out.push("generator lists differ".into());
    }
    let keys: BTreeSet<&(usize, usize)> = a.cells.keys().chain(b.cells.keys()).collect();
    let empty = BTreeSet::new();
    let name = |i: usize| {
        a.generators
            .get(i)
            .map_or("?", |g| g.name.as_str())
            .to_string()
    };
    for k in keys {
        let x = a.cells.get(k).unwrap_or(&empty);
        let y = b.cells.get(k).unwrap_or(&empty);
        for s in x.symmetric_difference(y) {
            let side = if x.contains(s) { &a.name } else { &b.name };
            out.push(format!(
                "({}, {}): only in {side}: {s}",
                name(k.0),
                name(k.1)
            ));
        }
    }
    out
}

fn relation_check(m: &DABimodule, bound: u32) -> Result<Check> {
    let rep = check_da_relations(m, bound)?;
    let summary = if rep.passed() {
        format!("{} terms, all relations cancel", rep.terms_checked)
    } else {
        let cells: BTreeSet<(&str, &str)> = rep
            .failures
            .iter()
            .map(|f| (f.row.as_str(), f.col.as_str()))
            .collect();
        format!(
            "{} non-cancelling terms in {} cells, lowest degree {}",
            rep.failures.len(),
            cells.len(),
            rep.failures.iter().map(|f| f.degree).min().unwrap_or(0)
        )
    };
    let details = rep
        .failures
        .iter()
        .map(|f| {
            format!(
                "({}, {}) degree {}: {} ⊗ ({})",
                f.row,
                f.col,
                f.degree,
                f.output,
                f.inputs.join(", ")
            )
        })
        .collect();
    Ok(Check::new(rep.passed(), summary, details))
}

fn grading_check(m: &DABimodule, bound: u32) -> Result<Check> {
    Ok(match infer_bidegrees(m) {
        Grading::Consistent(g) => {
            let bad = scan_bidegrees(m, &g, bound)?;
            let shown: Vec<String> = m
                .generators
                .iter()
                .zip(&g)
                .map(|(gen, (i, h))| format!("{}: ({i}, {h})", gen.name))
                .collect();
            if bad.is_empty() {
                Check::new(true, format!("consistent; {}", shown.join(", ")), vec![])
            } else {
                Check::new(false, "inferred grading not preserved by instances", bad)
            }
        }
        Grading::Inconsistent(w) => Check::new(false, w.reason, w.cycle),
    })
}

/// Runs every check at `bound` against `corpus`.
pub fn run_reproduction(corpus: &Corpus, bound: u32, opts: Options) -> Result<Report> {
    let mut checks: BTreeMap<String, Check> = BTreeMap::new();
    let mut bijections = BTreeMap::new();
    let mut warnings = Vec::new();
    if bound < CONFIDENT_BOUND {
        warnings.push(format!(
            "bound {bound} is below {CONFIDENT_BOUND}: only low-degree slices are compared"
        ));
    }

    // The relation checks dominate the running time; run them alongside the rest.
    let relations: Vec<(String, Result<Check>, Option<u128>)> = std::thread::scope(|s| {
        let handles: Vec<_> = CorpusId::ALL
            .iter()
            .map(|&id| {
                let m = corpus.get(id);
                s.spawn(move || {
                    let (c, t) = timed(opts.timings, || relation_check(m, bound));
                    (format!("relations.{id}"), c, t)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("relation check thread"))
            .collect()
    });

    fn put(
        checks: &mut BTreeMap<String, Check>,
        key: String,
        check: Result<Check>,
        millis: Option<u128>,
    ) -> Result<()> {
        let mut c = check?;
        c.millis = millis;
        checks.insert(key, c);
        Ok(())
    }

    let (r, t) = timed(opts.timings, || oracle_mismatches(4));
    let r = r.map(|(n, bad)| {
        Check::new(
            bad.is_empty(),
            format!("{n} products, {} mismatches", bad.len()),
            bad,
        )
    });
    put(&mut checks, "algebra.oracle".into(), r, t)?;
    let (r, t) = timed(opts.timings, || associativity_failures(2));
    let r = r.map(|(n, bad)| {
        Check::new(
            bad.is_empty(),
            format!("{n} triples, {} failures", bad.len()),
            bad,
        )
    });
    put(&mut checks, "algebra.associativity".into(), r, t)?;

    for id in [CorpusId::E1, CorpusId::E2] {
        let (r, t) = timed(opts.timings, || is_zero_boxsquare(corpus.get(id)));
        let r = r.map(|z| {
            Check::new(
                z,
                if z {
                    "no generators"
                } else {
                    "nonempty primary product"
                },
                vec![],
            )
        });
        put(&mut checks, format!("zero_square.{id}"), r, t)?;
    }

    let mut products: BTreeMap<(CorpusId, CorpusId), ConcreteDABimodule> = BTreeMap::new();
    for (l, r) in PRODUCTS {
        let start = Instant::now();
        let computed = box_tensor(corpus.get(l), corpus.get(r), bound)?;
        let expected = displayed(l, r)
            .expect("listed product")
            .instantiate(bound)?;
        let diffs = cell_diffs(&computed, &expected);
        let summary = format!(
            "{} terms, {} diffs against the display",
            computed.term_count(),
            diffs.len()
        );
        let mut c = Check::new(diffs.is_empty(), summary, diffs);
        c.millis = opts.timings.then(|| start.elapsed().as_millis());
        checks.insert(format!("product.{l}⊠{r}"), c);
        products.insert((l, r), computed);
    }

    for x in [CorpusId::P, CorpusId::N] {
        for e in [CorpusId::E1, CorpusId::E2] {
            let start = Instant::now();
            let ex = &products[&(e, x)];
            let xe = &products[&(x, e)];
            let key = format!("{e}⊠{x}→{x}⊠{e}");
            let c = match find_isomorphism(ex, xe, bound)? {
                Some(b) => {
                    let c = Check::new(true, b.to_string(), vec![]);
                    bijections.insert(key.clone(), b);
                    c
                }
                None => Check::new(false, "no generator bijection matches the cells", vec![]),
            };
            let mut c = c;
            c.millis = opts.timings.then(|| start.elapsed().as_millis());
            checks.insert(format!("iso.{key}"), c);
        }
    }

    let (r, t) = timed(opts.timings, || {
        let d = schema_diffs(&symmetry_transform(&corpus.p), &corpus.n);
        Check::new(d.is_empty(), format!("{} schema differences", d.len()), d)
    });
    put(&mut checks, "symmetry.P_to_N".into(), Ok(r), t)?;
    let (r, t) = timed(opts.timings, || {
        let mut d = schema_diffs(
            &symmetry_transform(&symmetry_transform(&corpus.p)),
            &corpus.p,
        );
        d.extend(schema_diffs(
            &symmetry_transform(&symmetry_transform(&corpus.n)),
            &corpus.n,
        ));
        Check::new(d.is_empty(), format!("{} schema differences", d.len()), d)
    });
    put(&mut checks, "symmetry.involution".into(), Ok(r), t)?;

    for id in CorpusId::ALL {
        let (r, t) = timed(opts.timings, || grading_check(corpus.get(id), bound));
        put(&mut checks, format!("grading.{id}"), r, t)?;
    }
    for (key, c, t) in relations {
        put(&mut checks, key, c, t)?;
    }

    let mut typos: Vec<String> = CorpusId::ALL
        .iter()
        .flat_map(|&id| {
            corpus
                .get(id)
                .notes
                .iter()
                .map(move |n| format!("{id}: {n}"))
        })
        .collect();
    for (l, r) in PRODUCTS {
        typos.extend(
            label_typos(l, r)
                .into_iter()
                .map(|n| format!("{l}⊠{r}: {n}")),
        );
    }

    Ok(Report {
        bound,
        passed: checks.values().all(|c| c.passed),
        checks,
        bijections,
        typos,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_agrees_at_small_exponents() {
        let (n, bad) = oracle_mismatches(1).unwrap();
        assert!(n > 0 && bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn check_details_are_capped() {
        let c = Check::new(false, "x", (0..40).map(|i| i.to_string()).collect());
        assert_eq!(c.details.len(), DETAIL_LIMIT + 1);
        assert_eq!(c.details.last().unwrap(), "... and 15 more");
    }
}
