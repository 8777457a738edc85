use bhfk::corpus::products::{displayed, PRODUCTS};
use bhfk::corpus::{build, CorpusId};
use bhfk::da::{check_da_relations, ConcreteDABimodule, DABimodule, TermSource};
use bhfk::reproduce::cell_diffs;
use bhfk::tensor::{box_tensor, primary_product};
use bhfk::verify::find_isomorphism;

fn product(l: CorpusId, r: CorpusId, bound: u32) -> ConcreteDABimodule {
    box_tensor(&build(l), &build(r), bound).unwrap()
}

#[test]
fn products_match_the_displays_at_bound_10() {
    for (l, r) in PRODUCTS {
        let computed = product(l, r, 10);
        let expected = displayed(l, r).unwrap().instantiate(10).unwrap();
        let diffs = cell_diffs(&computed, &expected);
        assert!(diffs.is_empty(), "{l}⊠{r}: {diffs:?}");
        assert_eq!(computed.generators.len(), 5);
    }
}

#[test]
fn products_satisfy_relations_within_slack() {
    for (l, r) in PRODUCTS {
        let m = product(l, r, 10);
        let report = check_da_relations(&m, 8).unwrap();
        assert!(report.passed(), "{l}⊠{r}: {:?}", report.failures.first());
    }
}

#[test]
fn products_are_monotone_in_the_bound() {
    for (l, r) in PRODUCTS {
        let small = product(l, r, 6);
        let large = product(l, r, 10);
        assert_eq!(large.truncate(6), small, "{l}⊠{r}");
    }
}

fn iso_pairs() -> Vec<(CorpusId, CorpusId)> {
    let mut out = Vec::new();
    for x in [CorpusId::P, CorpusId::N] {
        for e in [CorpusId::E1, CorpusId::E2] {
            out.push((e, x));
        }
    }
    out
}

#[test]
fn commutation_bijections_are_positional() {
    for (e, x) in iso_pairs() {
        let ex = product(e, x, 10);
        let xe = product(x, e, 10);
        let b = find_isomorphism(&ex, &xe, 10)
            .unwrap()
            .expect("isomorphism");
        let (dl, dr) = (displayed(e, x).unwrap(), displayed(x, e).unwrap());
        for (g, h) in dl.generators.iter().zip(&dr.generators) {
            assert_eq!(b.image(&g.name), Some(h.name.as_str()), "{e}⊠{x}");
        }
        assert!(b.is_isomorphism(&ex, &xe));
        let back = b.inverse();
        assert!(back.is_isomorphism(&xe, &ex));
        let found_back = find_isomorphism(&xe, &ex, 10)
            .unwrap()
            .expect("reverse isomorphism");
        assert_eq!(found_back.pairs.len(), back.pairs.len());
        assert!(found_back.is_isomorphism(&xe, &ex));
    }
}

#[test]
fn bijections_survive_raising_the_bound() {
    for (e, x) in iso_pairs() {
        let b10 = find_isomorphism(&product(e, x, 10), &product(x, e, 10), 10)
            .unwrap()
            .unwrap();
        assert!(
            b10.is_isomorphism(&product(e, x, 12), &product(x, e, 12)),
            "{e}⊠{x} at 12"
        );
        for b in 4..10 {
            let found = find_isomorphism(&product(e, x, b), &product(x, e, b), b)
                .unwrap()
                .unwrap();
            assert!(
                found.is_isomorphism(&product(e, x, b + 2), &product(x, e, b + 2)),
                "{e}⊠{x}: bound {b} to {}",
                b + 2
            );
        }
    }
}

#[test]
fn products_of_different_actions_are_not_isomorphic() {
    let a = product(CorpusId::E1, CorpusId::P, 10);
    let b = product(CorpusId::E2, CorpusId::P, 10);
    assert!(find_isomorphism(&a, &b, 10).unwrap().is_none());
}

/// `m` without generator `name` and every cell that touches it.
fn without(m: &DABimodule, name: &str) -> DABimodule {
    let keep: Vec<_> = m
        .generators
        .iter()
        .filter(|g| g.name != name)
        .cloned()
        .collect();
    let mut out = DABimodule::new(&m.name, keep);
    out.left_algebra = m.left_algebra.clone();
    out.right_algebra = m.right_algebra.clone();
    for (&(r, c), schemas) in &m.cells {
        let (rn, cn) = (&m.generators[r].name, &m.generators[c].name);
        if rn == name || cn == name {
            continue;
        }
        let (r2, c2) = (out.index_of(rn).unwrap(), out.index_of(cn).unwrap());
        for s in schemas {
            out.insert(r2, c2, s.clone()).unwrap();
        }
    }
    out
}

#[test]
fn unreachable_generators_do_not_contribute() {
    let mut trimmed_any = false;
    for (l, r) in PRODUCTS {
        let (x, y) = (build(l), build(r));
        let used: Vec<usize> = primary_product(&x, &y)
            .unwrap()
            .iter()
            .map(|&(_, j)| j)
            .collect();
        let idle: Vec<String> = (0..y.generators.len())
            .filter(|j| !used.contains(j))
            .map(|j| y.generators[j].name.clone())
            .collect();
        let full = box_tensor(&x, &y, 8).unwrap();
        for name in &idle {
            let trimmed = box_tensor(&x, &without(&y, name), 8).unwrap();
            assert_eq!(trimmed.cells, full.cells, "{l}⊠{r} without {name}");
            assert_eq!(trimmed.generators, full.generators);
            trimmed_any = true;
        }
    }
    assert!(trimmed_any);
}

#[test]
fn zero_module_annihilates() {
    let zero = DABimodule::new("0", vec![]);
    for id in CorpusId::ALL {
        let m = build(id);
        assert_eq!(box_tensor(&zero, &m, 8).unwrap().generators().len(), 0);
        assert_eq!(box_tensor(&m, &zero, 8).unwrap().generators().len(), 0);
    }
}

#[test]
fn idempotent_actions_square_to_zero() {
    for id in [CorpusId::E1, CorpusId::E2] {
        let e = build(id);
        assert!(primary_product(&e, &e).unwrap().is_empty(), "{id}");
    }
}
