//! The eight acceptance criteria, run in order with one verdict line each.
//!
//! Criterion 2 is known to fail for P and N (see the README). Its line says
//! FAIL; the test only stays green while the failure is exactly the recorded
//! one, so any other regression still breaks the suite.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use bhfk::corpus::products::{displayed, PRODUCTS};
use bhfk::corpus::{build, symmetry_transform, CorpusId};
use bhfk::da::{check_da_relations, infer_bidegrees, scan_bidegrees, DABimodule, RelationReport};
use bhfk::reproduce::{associativity_failures, cell_diffs, oracle_mismatches, schema_diffs};
use bhfk::tensor::{box_tensor, primary_product};
use bhfk::verify::find_isomorphism;

struct Verdict {
    n: u8,
    pass: bool,
    known_failure: bool,
    line: String,
}

fn say(v: &Verdict) {
    let status = if v.pass { "PASS" } else { "FAIL" };
    // Written straight to stderr so the lines survive output capture.
    let _ = writeln!(std::io::stderr(), "criterion {}: {status} {}", v.n, v.line);
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let (products, mismatches) = oracle_mismatches(4).unwrap();
    let (triples, failures) = associativity_failures(2).unwrap();
    let t = start.elapsed();
    Verdict {
        n: 1,
        pass: mismatches.is_empty() && failures.is_empty() && t < Duration::from_secs(10),
        known_failure: false,
        line: format!(
            "algebra: {products} products vs rewriting, {} mismatches; {triples} triples, {} associativity failures; {:.2?}",
            mismatches.len(),
            failures.len(),
            t
        ),
    }
}

fn weight(m: &DABimodule, name: &str) -> u8 {
    m.generators
        .iter()
        .find(|g| g.name == name)
        .unwrap()
        .left
        .weight()
}

/// The recorded defect of the literal P and N displays.
fn is_weight_two_defect(m: &DABimodule, r: &RelationReport) -> bool {
    r.failures
        .iter()
        .all(|f| weight(m, &f.row) == 2 && weight(m, &f.col) == 2)
        && r.failures.iter().map(|f| f.degree).min() == Some(4)
        && r.failures.iter().any(|f| {
            f.row == "{AC}S{AC}"
                && f.col == "{AC}S{AC}"
                && f.degree == 4
                && f.output == "Id(AC)*U1*U2"
                && f.inputs == ["Id(AC)*U1", "Id(AC)*U2"]
        })
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut all_pass = true;
    let mut only_known = true;
    for id in CorpusId::ALL {
        let m = build(id);
        let r = check_da_relations(&m, 12).unwrap();
        if r.passed() {
            parts.push(format!("{id} ok"));
        } else {
            all_pass = false;
            let known = matches!(id, CorpusId::P | CorpusId::N) && is_weight_two_defect(&m, &r);
            only_known &= known;
            let lowest = r.failures.iter().map(|f| f.degree).min().unwrap();
            parts.push(format!(
                "{id} {} non-cancelling from degree {lowest}{}",
                r.failures.len(),
                if known { " (weight-2 block only)" } else { "" }
            ));
        }
    }
    let t = start.elapsed();

    // Negative control: each deletion from the first starred list adds failures.
    let p = build(CorpusId::P);
    let key = |r: RelationReport| -> BTreeSet<String> {
        r.failures.iter().map(|f| format!("{f:?}")).collect()
    };
    let baseline = key(check_da_relations(&p, 8).unwrap());
    let (row, col) = (
        p.index_of("{AB}N{AB}").unwrap(),
        p.index_of("{AC}S{AC}").unwrap(),
    );
    let starred: Vec<_> = p.cell(row, col).cloned().collect();
    let detected = starred
        .iter()
        .filter(|s| {
            let mut broken = p.clone();
            broken.cells.get_mut(&(row, col)).unwrap().remove(s);
            !key(check_da_relations(&broken, 8).unwrap()).is_subset(&baseline)
        })
        .count();
    let control = detected == starred.len();
    let fast = t < Duration::from_secs(60);

    Verdict {
        n: 2,
        pass: all_pass && control && fast,
        known_failure: !all_pass && only_known && control && fast,
        line: format!(
            "relations at bound 12: {}; {:.2?}; negative control {detected}/{} deletions detected",
            parts.join(", "),
            t,
            starred.len()
        ),
    }
}

fn criterion_3() -> Verdict {
    let empty: Vec<bool> = [CorpusId::E1, CorpusId::E2]
        .iter()
        .map(|&id| primary_product(&build(id), &build(id)).unwrap().is_empty())
        .collect();
    Verdict {
        n: 3,
        pass: empty.iter().all(|&e| e),
        known_failure: false,
        line: format!("E1⊠E1 empty: {}, E2⊠E2 empty: {}", empty[0], empty[1]),
    }
}

fn criterion_4() -> Verdict {
    let start = Instant::now();
    let mut total = 0;
    let mut bad = Vec::new();
    for (l, r) in PRODUCTS {
        let computed = box_tensor(&build(l), &build(r), 10).unwrap();
        let expected = displayed(l, r).unwrap().instantiate(10).unwrap();
        let d = cell_diffs(&computed, &expected);
        total += computed.term_count();
        if !d.is_empty() {
            bad.push(format!("{l}⊠{r}: {} diffs", d.len()));
        }
    }
    let t = start.elapsed();
    Verdict {
        n: 4,
        pass: bad.is_empty() && t < Duration::from_secs(60),
        known_failure: false,
        line: format!(
            "8 products at bound 10, {total} terms, {} with diffs {bad:?}; {:.2?}",
            bad.len(),
            t
        ),
    }
}

fn criterion_5() -> Verdict {
    let mut ok = 0;
    let mut notes = Vec::new();
    for x in [CorpusId::P, CorpusId::N] {
        for e in [CorpusId::E1, CorpusId::E2] {
            let at = |b| {
                (
                    box_tensor(&build(e), &build(x), b).unwrap(),
                    box_tensor(&build(x), &build(e), b).unwrap(),
                )
            };
            let (ex, xe) = at(10);
            match find_isomorphism(&ex, &xe, 10).unwrap() {
                Some(b) => {
                    let (ex12, xe12) = at(12);
                    if b.is_isomorphism(&ex12, &xe12) {
                        ok += 1;
                    } else {
                        notes.push(format!("{e}⊠{x} fails at 12"));
                    }
                }
                None => notes.push(format!("{e}⊠{x} not found")),
            }
        }
    }
    Verdict {
        n: 5,
        pass: ok == 4,
        known_failure: false,
        line: format!("{ok}/4 isomorphisms found at bound 10 and re-verified at 12 {notes:?}"),
    }
}

fn criterion_6() -> Verdict {
    let p = build(CorpusId::P);
    let n = build(CorpusId::N);
    let to_n = schema_diffs(&symmetry_transform(&p), &n).len();
    let inv = schema_diffs(&symmetry_transform(&symmetry_transform(&p)), &p).len()
        + schema_diffs(&symmetry_transform(&symmetry_transform(&n)), &n).len();
    Verdict {
        n: 6,
        pass: to_n == 0 && inv == 0,
        known_failure: false,
        line: format!("sym(P) vs N: {to_n} schema diffs; involution: {inv} diffs"),
    }
}

fn criterion_7() -> Verdict {
    let mut parts = Vec::new();
    let mut pass = true;
    for id in CorpusId::ALL {
        let m = build(id);
        match infer_bidegrees(&m).assignment() {
            Some(a) => {
                let bad = scan_bidegrees(&m, a, 10).unwrap().len();
                pass &= bad == 0;
                parts.push(format!("{id} consistent, {bad} violations"));
            }
            None => {
                pass = false;
                parts.push(format!("{id} inconsistent"));
            }
        }
    }
    Verdict {
        n: 7,
        pass,
        known_failure: false,
        line: parts.join(", "),
    }
}

fn reproduce_once(dir: &std::path::Path, tag: &str) -> (Vec<u8>, Vec<u8>, Option<i32>) {
    let out = dir.join(format!("report-{tag}.json"));
    let run = Command::new(env!("CARGO_BIN_EXE_bhfk"))
        .args(["reproduce", "--bound", "10", "--emit", "json", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    (std::fs::read(&out).unwrap(), run.stdout, run.status.code())
}

fn criterion_8() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let (file_a, stdout_a, code_a) = reproduce_once(dir.path(), "a");
    let (file_b, stdout_b, code_b) = reproduce_once(dir.path(), "b");
    let same = file_a == file_b && stdout_a == stdout_b && file_a == stdout_a;
    Verdict {
        n: 8,
        pass: same && code_a == code_b,
        known_failure: false,
        line: format!(
            "reproduce --bound 10 twice: {} bytes, identical: {same}, exit codes {code_a:?}/{code_b:?}",
            file_a.len()
        ),
    }
}

#[test]
fn acceptance() {
    let verdicts: Vec<Verdict> = [
        criterion_1 as fn() -> Verdict,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
    ]
    .iter()
    .map(|c| {
        let v = c();
        say(&v);
        v
    })
    .collect();
    let passed = verdicts.iter().filter(|v| v.pass).count();
    let known: Vec<u8> = verdicts
        .iter()
        .filter(|v| v.known_failure)
        .map(|v| v.n)
        .collect();
    let _ = writeln!(
        std::io::stderr(),
        "acceptance: {passed}/8 criteria pass; failing with the recorded defect only: {known:?}"
    );
    for v in &verdicts {
        assert!(
            v.pass || v.known_failure,
            "criterion {} regressed: {}",
            v.n,
            v.line
        );
    }
}
