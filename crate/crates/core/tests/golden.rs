//! The corpus and one product against files under `tests/golden/`.
//! Set `BLESS=1` to rewrite them after an intended change.

use std::path::PathBuf;

use bhfk::corpus::{build, CorpusId};
use bhfk::da::json::{bimodule_from_json, bimodule_to_json, concrete_from_json, concrete_to_json};
use bhfk::tensor::box_tensor;

fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(
        expected == actual,
        "{name} differs from the golden file; rerun with BLESS=1 if intended"
    );
}

#[test]
fn corpus_json() {
    for id in CorpusId::ALL {
        let m = build(id);
        let text = bimodule_to_json(&m);
        golden(&format!("{id}.json"), &text);
        assert_eq!(bimodule_from_json(&text).unwrap().module, m);
    }
}

#[test]
fn product_json() {
    let m = box_tensor(&build(CorpusId::E1), &build(CorpusId::P), 6).unwrap();
    let text = concrete_to_json(&m);
    golden("E1xP.bound6.json", &text);
    assert_eq!(concrete_from_json(&text).unwrap(), m);
}
