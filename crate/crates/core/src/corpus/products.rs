//! Displayed product matrices.
//!
//! Each of the eight products of a crossing bimodule with `E1` or `E2` is
//! printed as a 1×1 block (always zero), a 3×3 middle block and a 1×1 last
//! block. The generators are listed here in display order.

use super::*;
use crate::da::DABimodule;

type Block = [[&'static [&'static str]; 3]; 3];

const NONE: &[&str] = &[];
const SWAP: &[&str] = &["U2^(k+1) | U1^(k+1)", "U1^(k+1) | U2^(k+1)"];

const P_E1: Block = [
    [SWAP, &["U1^k | L2*U2^k"], &["L2*U2^k | L2, U1^(k+1)"]],
    [&["U1^(k+1) | R2*U2^k"], &["U1^(k+1) | U2^(k+1)"], NONE],
    [NONE, &["R2"], NONE],
];

const N_E1: Block = [
    [SWAP, &["U1^(k+1) | L2*U2^k"], NONE],
    [&["U1^k | R2*U2^k"], &["U1^(k+1) | U2^(k+1)"], &["L2"]],
    [&["R2*U2^k | U1^(k+1), R2"], NONE, NONE],
];

const P_E2: Block = [
    [NONE, &["L1"], NONE],
    [NONE, &["U2^(k+1) | U1^(k+1)"], &["U2^(k+1) | L1*U1^k"]],
    [&["R1*U1^k | R1, U2^(k+1)"], &["U2^k | R1*U1^k"], SWAP],
];

const N_E2: Block = [
    [NONE, NONE, &["L1*U1^k | U2^(k+1), L1"]],
    [&["R1"], &["U2^(k+1) | U1^(k+1)"], &["U2^k | L1*U1^k"]],
    [NONE, &["U2^(k+1) | R1*U1^k"], SWAP],
];

/// The eight displayed products as `(left factor, right factor)`.
pub const PRODUCTS: [(CorpusId, CorpusId); 8] = [
    (CorpusId::E1, CorpusId::P),
    (CorpusId::P, CorpusId::E1),
    (CorpusId::E2, CorpusId::P),
    (CorpusId::P, CorpusId::E2),
    (CorpusId::E1, CorpusId::N),
    (CorpusId::N, CorpusId::E1),
    (CorpusId::E2, CorpusId::N),
    (CorpusId::N, CorpusId::E2),
];

/// Generator pairs in display order: the zero block, the three middle
/// generators, then the last block.
pub fn display_order(left: CorpusId, right: CorpusId) -> Option<[(&'static str, &'static str); 5]> {
    use CorpusId::*;
    Some(match (left, right) {
        (E1, P | N) => [
            ("X1", S_A),
            ("X2", N_AB),
            ("X2", E_AC),
            ("X3", S_AC),
            ("X4", N_ABC),
        ],
        (P | N, E1) => [
            (S0, "X1"),
            (N_B, "X2"),
            (E_C, "X3"),
            (S_C, "X3"),
            (N_BC, "X4"),
        ],
        (E2, P | N) => [
            ("Y1", S_C),
            ("Y2", S_AC),
            ("Y3", W_AC),
            ("Y3", N_BC),
            ("Y4", N_ABC),
        ],
        (P | N, E2) => [
            (S0, "Y1"),
            (S_A, "Y2"),
            (W_A, "Y2"),
            (N_B, "Y3"),
            (N_AB, "Y4"),
        ],
        _ => return None,
    })
}

/// Discrepancies between the printed generator labels and the generators
/// that the primary matrices actually produce.
pub fn label_typos(left: CorpusId, right: CorpusId) -> Vec<String> {
    match (left, right) {
        (CorpusId::E1, CorpusId::P | CorpusId::N) => vec![
            format!("primary block (∅; A, B, C): printed `X1 S_C`, generator is (X1,{S_A})"),
            format!(
                "primary block (A, B, C; AB, AC, BC): printed `X3 X`, generator is (X3,{S_AC})"
            ),
        ],
        _ => vec![],
    }
}

/// The displayed secondary matrix of `left ⊠ right`, or `None` for a pair
/// that is not one of the eight.
pub fn displayed(left: CorpusId, right: CorpusId) -> Option<DABimodule> {
    let order = display_order(left, right)?;
    let crossing = if left == CorpusId::N || right == CorpusId::N {
        CorpusId::N
    } else {
        CorpusId::P
    };
    let e = if left == crossing { right } else { left };
    let block = match (crossing, e) {
        (CorpusId::P, CorpusId::E1) => &P_E1,
        (CorpusId::N, CorpusId::E1) => &N_E1,
        (CorpusId::P, CorpusId::E2) => &P_E2,
        _ => &N_E2,
    };
    let (lm, rm) = (build(left), build(right));
    let gens: Vec<DAGenerator> = order
        .iter()
        .map(|(x, y)| {
            let gx = &lm.generators[lm.index_of(x).expect("display generator")];
            let gy = &rm.generators[rm.index_of(y).expect("display generator")];
            DAGenerator::new(&crate::tensor::pair_name(x, y), gx.left, gy.right)
        })
        .collect();
    let names: Vec<String> = gens.iter().map(|g| g.name.clone()).collect();
    let mut m = DABimodule::new(&format!("{left}⊠{right}"), gens);
    for (r, row) in block.iter().enumerate() {
        for (c, schemas) in row.iter().enumerate() {
            for s in schemas.iter() {
                m.add(&names[r + 1], &names[c + 1], s)
                    .unwrap_or_else(|e| panic!("{} ({r}, {c}) `{s}`: {e}", m.name));
            }
        }
    }
    m.add(&names[4], &names[4], EXCL).expect("last block");
    m.notes = label_typos(left, right);
    Some(m)
}
