use std::collections::{BTreeMap, BTreeSet};

use bhfk::algebra::rewrite::{rewrite_path, word_of};
use bhfk::corpus::products::PRODUCTS;
use bhfk::corpus::{build, symmetry_transform, CorpusId};
use bhfk::da::json::{bimodule_from_json, bimodule_to_json};
use bhfk::da::{evaluate_delta, ConcreteDABimodule, DABimodule, DegreeCap, TermSchema};
use bhfk::fit::fit_cell;
use bhfk::tensor::box_tensor;
use bhfk::verify::find_isomorphism;
use bhfk::{enumerate_basis, multiply, Idempotent, Monomial};
use proptest::prelude::*;
use proptest::sample::{select, subsequence, Index};

fn basis(max_exp: u32) -> Vec<Monomial> {
    let mut out = enumerate_basis(1, max_exp).unwrap();
    out.extend(enumerate_basis(2, max_exp).unwrap());
    out
}

fn monomial(max_exp: u32) -> impl Strategy<Value = Monomial> {
    select(basis(max_exp))
}

fn corpus_id() -> impl Strategy<Value = CorpusId> {
    select(CorpusId::ALL.to_vec())
}

proptest! {
    #[test]
    fn multiplication_agrees_with_rewriting(a in monomial(4), b in monomial(4)) {
        // Path symbols forget their node, so only composable pairs are spelled out.
        if a.right == b.left {
            let word: Vec<_> = word_of(&a).into_iter().chain(word_of(&b)).collect();
            prop_assert_eq!(multiply(&a, &b), rewrite_path(a.left, &word));
        } else {
            prop_assert!(multiply(&a, &b).is_zero());
        }
    }

    #[test]
    fn multiplication_is_associative(a in monomial(2), b in monomial(2), c in monomial(2)) {
        let ab = multiply(&a, &b);
        let bc = multiply(&b, &c);
        let left = ab.mul(&multiply(&c, &Monomial::idempotent(c.right)));
        let right = multiply(&a, &Monomial::idempotent(a.right)).mul(&bc);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn degree_is_additive(a in monomial(4), b in monomial(4)) {
        for m in multiply(&a, &b).iter() {
            prop_assert_eq!(m.degree(), a.degree() + b.degree());
            prop_assert!(m.is_valid());
        }
    }

    #[test]
    fn idempotents_route(a in monomial(3), x in select(Idempotent::of_weight(1).iter().chain(Idempotent::of_weight(2)).copied().collect::<Vec<_>>())) {
        let e = Monomial::idempotent(x);
        let on_left = multiply(&e, &a);
        if x == a.left {
            prop_assert!(on_left.contains(&a) && on_left.len() == 1);
        } else {
            prop_assert!(on_left.is_zero());
        }
        let on_right = multiply(&a, &Monomial::idempotent(a.right));
        prop_assert!(on_right.contains(&a) && on_right.len() == 1);
    }
}

/// Brute force: every instantiated term in column `x` whose inputs are `inputs`.
fn delta_by_matching(m: &DABimodule, x: &str, inputs: &[Monomial]) -> BTreeSet<(Monomial, String)> {
    let col = m.index_of(x).unwrap();
    let concrete = m.instantiate(30).unwrap();
    let mut out = BTreeSet::new();
    for (&(r, c), terms) in &concrete.cells {
        if c != col {
            continue;
        }
        for t in terms {
            if t.inputs == inputs {
                let item = (t.output, m.generators[r].name.clone());
                if !out.remove(&item) {
                    out.insert(item);
                }
            }
        }
    }
    out
}

/// Column and inputs of every term of `m` whose inputs have degree at most 8.
fn queries(m: &DABimodule) -> Vec<(String, Vec<Monomial>)> {
    let concrete = m.instantiate(16).unwrap();
    let mut out = BTreeSet::new();
    for (&(_, c), terms) in &concrete.cells {
        for t in terms {
            if t.input_degree() <= 8 {
                out.insert((m.generators[c].name.clone(), t.inputs.clone()));
            }
        }
    }
    out.into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluate_delta_matches_instances(id in corpus_id(), pick in any::<Index>(), bump in 0u32..2) {
        let m = build(id);
        let qs = queries(&m);
        let (x, mut inputs) = qs[pick.index(qs.len())].clone();
        // Sometimes ask about a neighbouring input that may or may not occur.
        if let (1, Some(last)) = (bump, inputs.last_mut()) {
            if let Some(n) = Monomial::new(last.left, last.letter, last.e1 + 1, last.e2) {
                *last = n;
            }
        }
        prop_assert_eq!(evaluate_delta(&m, &x, &inputs).unwrap(), delta_by_matching(&m, &x, &inputs));
    }

    #[test]
    fn symmetry_is_an_involution_on_sub_bimodules(id in corpus_id(), keep in proptest::collection::vec(any::<bool>(), 64)) {
        let full = build(id);
        let mut m = full.clone();
        let mut i = 0;
        for schemas in m.cells.values_mut() {
            schemas.retain(|_| {
                i += 1;
                keep[i % keep.len()]
            });
        }
        m.cells.retain(|_, s| !s.is_empty());
        let back = symmetry_transform(&symmetry_transform(&m));
        prop_assert_eq!(&back.generators, &m.generators);
        prop_assert_eq!(&back.cells, &m.cells);
    }

    #[test]
    fn json_round_trips(id in corpus_id()) {
        let m = build(id);
        prop_assert_eq!(bimodule_from_json(&bimodule_to_json(&m)).unwrap().module, m);
    }
}

/// `m` with its generators reordered by `perm` and renamed with a suffix.
fn relabel(m: &ConcreteDABimodule, perm: &[usize]) -> ConcreteDABimodule {
    let mut pos = vec![0; perm.len()];
    for (new, &old) in perm.iter().enumerate() {
        pos[old] = new;
    }
    let generators = perm
        .iter()
        .map(|&old| {
            let mut g = m.generators[old].clone();
            g.name.push('\'');
            g
        })
        .collect();
    let cells: BTreeMap<_, _> = m
        .cells
        .iter()
        .map(|(&(r, c), t)| ((pos[r], pos[c]), t.clone()))
        .collect();
    ConcreteDABimodule {
        name: format!("{}'", m.name),
        generators,
        cells,
        ..m.clone()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn isomorphism_search_finds_relabelings(which in 0..PRODUCTS.len(), perm in Just((0..5).collect::<Vec<usize>>()).prop_shuffle()) {
        let (l, r) = PRODUCTS[which];
        let m = box_tensor(&build(l), &build(r), 8).unwrap();
        let y = relabel(&m, &perm);
        let b = find_isomorphism(&m, &y, 8).unwrap().expect("relabeling is an isomorphism");
        prop_assert!(b.is_isomorphism(&m, &y));
        prop_assert!(b.inverse().is_isomorphism(&y, &m));
        let back = find_isomorphism(&y, &m, 8).unwrap().expect("inverse direction");
        prop_assert!(back.is_isomorphism(&y, &m));
    }

    #[test]
    fn fitting_round_trips_on_subsets(id in corpus_id(), pick in any::<Index>(), mask in proptest::collection::vec(any::<bool>(), 1..40)) {
        let m = build(id).instantiate(10).unwrap();
        let keys: Vec<_> = m.cells.keys().copied().collect();
        let (r, c) = keys[pick.index(keys.len())];
        let terms: BTreeSet<_> = m.cells[&(r, c)]
            .iter()
            .enumerate()
            .filter(|(i, _)| mask[i % mask.len()])
            .map(|(_, t)| t.clone())
            .collect();
        let (row, col) = (&m.generators[r], &m.generators[c]);
        let mut back = BTreeSet::new();
        for s in fit_cell(row, col, &terms, 10) {
            back.extend(s.instantiate(row, col, DegreeCap::Output(10)).unwrap());
        }
        prop_assert_eq!(back, terms);
    }

    #[test]
    fn schemas_print_and_parse_back(id in corpus_id(), pick in any::<Index>()) {
        let m = build(id);
        let all: Vec<&TermSchema> = m.cells.values().flatten().collect();
        let s = all[pick.index(all.len())];
        prop_assert_eq!(&s.to_string().parse::<TermSchema>().unwrap(), s);
    }

    #[test]
    fn basis_subsets_stay_sorted(summand in 0u8..4, max_exp in 0u32..4, sub in subsequence((0..8).collect::<Vec<_>>(), 0..8)) {
        let b = enumerate_basis(summand, max_exp).unwrap();
        let mut sorted = b.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(&sorted, &b);
        for i in sub {
            if let Some(m) = b.get(i) {
                prop_assert!(m.e1 <= max_exp && m.e2 <= max_exp && m.summand() == summand);
            }
        }
    }
}
