//! The built-in bimodules: the crossing bimodules `P` (positive) and `N`
//! (negative) and the two 2-action bimodules `E1`, `E2`, all over `B(2)`.
//!
//! Cell entries are written in the schema syntax of [`crate::da::TermSchema`];
//! a displayed sum `a + b` in one cell becomes two schemas.

pub mod products;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::Idempotent::{self, *};
use crate::da::{DABimodule, DAGenerator, TermSource};
use crate::error::{Error, Result};
use crate::tensor::primary_product;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CorpusId {
    P,
    N,
    E1,
    E2,
}

impl CorpusId {
    pub const ALL: [CorpusId; 4] = [CorpusId::P, CorpusId::N, CorpusId::E1, CorpusId::E2];

    pub fn label(self) -> &'static str {
        match self {
            CorpusId::P => "P",
            CorpusId::N => "N",
            CorpusId::E1 => "E1",
            CorpusId::E2 => "E2",
        }
    }
}

impl fmt::Display for CorpusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CorpusId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P" => Ok(CorpusId::P),
            "N" => Ok(CorpusId::N),
            "E1" => Ok(CorpusId::E1),
            "E2" => Ok(CorpusId::E2),
            other => Err(Error::Parse(format!("unknown corpus bimodule `{other}`"))),
        }
    }
}

pub const S0: &str = "{}S{}";
pub const S_A: &str = "{A}S{A}";
pub const W_A: &str = "{B}W{A}";
pub const N_B: &str = "{B}N{B}";
pub const E_C: &str = "{B}E{C}";
pub const S_C: &str = "{C}S{C}";
pub const N_AB: &str = "{AB}N{AB}";
pub const E_AC: &str = "{AB}E{AC}";
pub const S_AC: &str = "{AC}S{AC}";
pub const W_AC: &str = "{BC}W{AC}";
pub const N_BC: &str = "{BC}N{BC}";
pub const N_ABC: &str = "{ABC}N{ABC}";

pub(crate) fn generators(list: &[(&str, Idempotent, Idempotent)]) -> Vec<DAGenerator> {
    list.iter()
        .map(|(n, l, r)| DAGenerator::new(n, *l, *r))
        .collect()
}

/// Fills cells from `(row, col, [schemas])` triples; the text is fixed, so a
/// failure here is a bug in the table.
pub(crate) fn fill(m: &mut DABimodule, cells: &[(&str, &str, &[&str])]) {
    for (row, col, schemas) in cells {
        for s in *schemas {
            m.add(row, col, s)
                .unwrap_or_else(|e| panic!("{} cell ({row}, {col}) `{s}`: {e}", m.name));
        }
    }
}

fn crossing_generators() -> Vec<DAGenerator> {
    generators(&[
        (S0, Empty, Empty),
        (S_A, A, A),
        (W_A, B, A),
        (N_B, B, B),
        (E_C, B, C),
        (S_C, C, C),
        (N_AB, AB, AB),
        (E_AC, AB, AC),
        (S_AC, AC, AC),
        (W_AC, BC, AC),
        (N_BC, BC, BC),
        (N_ABC, ABC, ABC),
    ])
}

const EXCL: &str = "U1^l*U2^k | U1^k*U2^l ; (k,l)!=(0,0)";

fn build_p() -> DABimodule {
    let mut m = DABimodule::new("P", crossing_generators());
    fill(
        &mut m,
        &[
            (S_A, W_A, &["L1"]),
            (W_A, W_A, &["U2^(k+1) | U1^(k+1)"]),
            (W_A, N_B, &["U2^(k+1) | L1*U1^k"]),
            (W_A, S_C, &["L2*U2^k | L2, L1*U1^k"]),
            (N_B, S_A, &["R1*U1^k | R1, U2^(k+1)"]),
            (N_B, W_A, &["U2^k | R1*U1^k"]),
            (N_B, N_B, &["U2^(k+1) | U1^(k+1)", "U1^(k+1) | U2^(k+1)"]),
            (N_B, E_C, &["U1^k | L2*U2^k"]),
            (N_B, S_C, &["L2*U2^k | L2, U1^(k+1)"]),
            (E_C, S_A, &["R1*U1^k | R1, R2*U2^k"]),
            (E_C, N_B, &["U1^(k+1) | R2*U2^k"]),
            (E_C, E_C, &["U1^(k+1) | U2^(k+1)"]),
            (S_C, E_C, &["R2"]),
            (N_AB, N_AB, &[EXCL]),
            (N_AB, E_AC, &["U1^k | L2*U2^k"]),
            (
                N_AB,
                S_AC,
                &[
                    "L2*U1^t*U2^n | U1^(n+1), L2*U2^t ; 0<=n<t",
                    "L2*U1^t*U2^n | R1*U1^n, L1L2*U2^t ; 0<=n<t",
                    "L2*U1^t*U2^n | L2*U1^(n+1), U2^t ; 0<=n<t",
                    "L2*U1^t*U2^n | L2*U2^t, U1^(n+1) ; 1<=t<=n",
                    "L2*U1^t*U2^n | U2^t, L2*U1^(n+1) ; 1<=t<=n",
                    "L2*U1^t*U2^n | R1*U2^t, L1L2*U1^n ; 1<=t<=n",
                    "L2*U2^n | L2, U1^(n+1)",
                ],
            ),
            (N_AB, W_AC, &["L1L2*U2^k | L2*U1^(k+1)"]),
            (N_AB, N_BC, &["L1L2*U1^l*U2^k | L1L2*U1^k*U2^l"]),
            (E_AC, N_AB, &["U1^(l+1)*U2^k | R2*U1^k*U2^l"]),
            (E_AC, E_AC, &["U1^(k+1) | U2^(k+1)"]),
            (
                E_AC,
                S_AC,
                &[
                    "L2*U1^t*U2^n | U1^(n+1), U2^t ; 0<=n<t",
                    "L2*U1^t*U2^n | R1*U1^n, L1*U2^t ; 0<=n<t",
                    "L2*U1^t*U2^n | L2*U1^(n+1), R2*U2^(t-1) ; 0<=n<t",
                    "L2*U1^t*U2^n | U2^t, U1^(n+1) ; 1<=t<=n",
                    "L2*U1^t*U2^n | R1*U2^t, L1*U1^n ; 1<=t<=n",
                    "L2*U1^t*U2^n | L2*U2^(t-1), R2*U1^(n+1) ; 1<=t<=n",
                ],
            ),
            (E_AC, W_AC, &["L1L2*U2^k | U1^(k+1)"]),
            (E_AC, N_BC, &["L1L2*U1^l*U2^k | L1*U1^k*U2^l"]),
            (S_AC, E_AC, &["R2"]),
            (S_AC, W_AC, &["L1"]),
            (W_AC, N_AB, &["R2R1*U1^l*U2^k | R2*U1^k*U2^l"]),
            (W_AC, E_AC, &["R2R1*U1^k | U2^(k+1)"]),
            (
                W_AC,
                S_AC,
                &[
                    "R1*U1^t*U2^n | U2^(t+1), U1^n ; 0<=t<n",
                    "R1*U1^t*U2^n | L2*U2^t, R2*U1^n ; 0<=t<n",
                    "R1*U1^t*U2^n | R1*U2^(t+1), L1*U1^(n-1) ; 0<=t<n",
                    "R1*U1^t*U2^n | U1^n, U2^(t+1) ; 1<=n<=t",
                    "R1*U1^t*U2^n | L2*U1^n, R2*U2^t ; 1<=n<=t",
                    "R1*U1^t*U2^n | R1*U1^(n-1), L1*U2^(t+1) ; 1<=n<=t",
                ],
            ),
            (W_AC, W_AC, &["U2^(k+1) | U1^(k+1)"]),
            (W_AC, N_BC, &["U1^l*U2^(k+1) | L1*U1^k*U2^l"]),
            (N_BC, N_AB, &["R2R1*U1^l*U2^k | R2R1*U1^k*U2^l"]),
            (N_BC, E_AC, &["R2R1*U1^k | R1*U2^(k+1)"]),
            (
                N_BC,
                S_AC,
                &[
                    "R1*U1^t*U2^n | U2^(t+1), R1*U1^n ; 0<=t<n",
                    "R1*U1^t*U2^n | L2*U2^t, R2R1*U1^n ; 0<=t<n",
                    "R1*U1^t*U2^n | R1*U2^(t+1), U1^n ; 0<=t<n",
                    "R1*U1^t*U2^n | R1*U1^n, U2^(t+1) ; 1<=n<=t",
                    "R1*U1^t*U2^n | U1^n, R1*U2^(t+1) ; 1<=n<=t",
                    "R1*U1^t*U2^n | L2*U1^n, R2R1*U2^t ; 1<=n<=t",
                    "R1*U1^t | R1, U2^(t+1)",
                ],
            ),
            (N_BC, W_AC, &["U2^k | R1*U1^k"]),
            (N_BC, N_BC, &[EXCL]),
            (N_ABC, N_ABC, &[EXCL]),
        ],
    );
    m
}

fn build_n() -> DABimodule {
    let mut m = DABimodule::new("N", crossing_generators());
    fill(
        &mut m,
        &[
            (S_A, N_B, &["L1*U1^k | U2^(k+1), L1"]),
            (S_A, E_C, &["L1*U1^k | L2*U2^k, L1"]),
            (W_A, S_A, &["R1"]),
            (W_A, W_A, &["U2^(k+1) | U1^(k+1)"]),
            (W_A, N_B, &["U2^k | L1*U1^k"]),
            (N_B, W_A, &["U2^(k+1) | R1*U1^k"]),
            (N_B, N_B, &["U2^(k+1) | U1^(k+1)", "U1^(k+1) | U2^(k+1)"]),
            (N_B, E_C, &["U1^(k+1) | L2*U2^k"]),
            (E_C, N_B, &["U1^k | R2*U2^k"]),
            (E_C, E_C, &["U1^(k+1) | U2^(k+1)"]),
            (E_C, S_C, &["L2"]),
            (S_C, W_A, &["R2*U2^k | R1*U1^k, R2"]),
            (S_C, N_B, &["R2*U2^k | U1^(k+1), R2"]),
            (N_AB, N_AB, &[EXCL]),
            (N_AB, E_AC, &["U1^(l+1)*U2^k | L2*U1^k*U2^l"]),
            (N_AB, W_AC, &["L1L2*U1^l*U2^k | L2*U1^k*U2^l"]),
            (N_AB, N_BC, &["L1L2*U1^l*U2^k | L1L2*U1^k*U2^l"]),
            (E_AC, N_AB, &["U1^k | R2*U2^k"]),
            (E_AC, E_AC, &["U1^(k+1) | U2^(k+1)"]),
            (E_AC, S_AC, &["L2"]),
            (E_AC, W_AC, &["L1L2*U1^k | U2^(k+1)"]),
            (E_AC, N_BC, &["L1L2*U1^k | L1*U2^(k+1)"]),
            (
                S_AC,
                N_AB,
                &[
                    "R2*U1^t*U2^n | R2*U2^t, U1^(n+1) ; 0<=n<t",
                    "R2*U1^t*U2^n | R2R1*U2^t, L1*U1^n ; 0<=n<t",
                    "R2*U1^t*U2^n | U2^t, R2*U1^(n+1) ; 0<=n<t",
                    "R2*U1^t*U2^n | U1^(n+1), R2*U2^t ; 1<=t<=n",
                    "R2*U1^t*U2^n | R2*U1^(n+1), U2^t ; 1<=t<=n",
                    "R2*U1^t*U2^n | R2R1*U1^n, L1*U2^t ; 1<=t<=n",
                    "R2*U2^n | U1^(n+1), R2",
                ],
            ),
            (
                S_AC,
                E_AC,
                &[
                    "R2*U1^t*U2^n | U2^t, U1^(n+1) ; 0<=n<t",
                    "R2*U1^t*U2^n | R1*U2^t, L1*U1^n ; 0<=n<t",
                    "R2*U1^t*U2^n | L2*U2^(t-1), R2*U1^(n+1) ; 0<=n<t",
                    "R2*U1^t*U2^n | U1^(n+1), U2^t ; 1<=t<=n",
                    "R2*U1^t*U2^n | R1*U1^n, L1*U2^t ; 1<=t<=n",
                    "R2*U1^t*U2^n | L2*U1^(n+1), R2*U2^(t-1) ; 1<=t<=n",
                ],
            ),
            (
                S_AC,
                W_AC,
                &[
                    "L1*U1^t*U2^n | U1^n, U2^(t+1) ; 0<=t<n",
                    "L1*U1^t*U2^n | L2*U1^n, R2*U2^t ; 0<=t<n",
                    "L1*U1^t*U2^n | R1*U1^(n-1), L1*U2^(t+1) ; 0<=t<n",
                    "L1*U1^t*U2^n | U2^(t+1), U1^n ; 1<=n<=t",
                    "L1*U1^t*U2^n | L2*U2^t, R2*U1^n ; 1<=n<=t",
                    "L1*U1^t*U2^n | R1*U2^(t+1), L1*U1^(n-1) ; 1<=n<=t",
                ],
            ),
            (
                S_AC,
                N_BC,
                &[
                    "L1*U1^t*U2^n | L1*U1^n, U2^(t+1) ; 0<=t<n",
                    "L1*U1^t*U2^n | L1L2*U1^n, R2*U2^t ; 0<=t<n",
                    "L1*U1^t*U2^n | U1^n, L1*U2^(t+1) ; 0<=t<n",
                    "L1*U1^t*U2^n | U2^(t+1), L1*U1^n ; 1<=n<=t",
                    "L1*U1^t*U2^n | L1*U2^(t+1), U1^n ; 1<=n<=t",
                    "L1*U1^t*U2^n | L1L2*U2^t, R2*U1^n ; 1<=n<=t",
                    "L1*U1^t | U2^(t+1), L1",
                ],
            ),
            (W_AC, N_AB, &["R2R1*U2^k | R2*U1^(k+1)"]),
            (W_AC, E_AC, &["R2R1*U2^k | U1^(k+1)"]),
            (W_AC, S_AC, &["R1"]),
            (W_AC, W_AC, &["U2^(k+1) | U1^(k+1)"]),
            (W_AC, N_BC, &["U2^k | L1*U1^k"]),
            (N_BC, N_AB, &["R2R1*U1^l*U2^k | R2R1*U1^k*U2^l"]),
            (N_BC, E_AC, &["R2R1*U1^l*U2^k | R1*U1^k*U2^l"]),
            (N_BC, W_AC, &["U1^l*U2^(k+1) | R1*U1^k*U2^l"]),
            (N_BC, N_BC, &[EXCL]),
            (N_ABC, N_ABC, &[EXCL]),
        ],
    );
    m.notes = vec![
        "the starred lists in row {AC}S{AC} are read one summand per line; the \
         second summand of the third list is (L2*U1^n, R2*U2^t)"
            .into(),
    ];
    m
}

fn build_e1() -> DABimodule {
    let mut m = DABimodule::new(
        "E1",
        generators(&[
            ("X1", Empty, A),
            ("X2", B, AB),
            ("X3", C, AC),
            ("X4", BC, ABC),
        ]),
    );
    fill(
        &mut m,
        &[
            ("X2", "X2", &["U1^(k+1) | U1^(k+1)", "U2^(k+1) | U2^(k+1)"]),
            ("X2", "X3", &["L2*U2^k | L2*U2^k"]),
            ("X3", "X2", &["R2*U2^k | R2*U2^k"]),
            ("X3", "X3", &["U2^(k+1) | U2^(k+1)"]),
            ("X4", "X4", &["U1^k*U2^l | U1^k*U2^l ; (k,l)!=(0,0)"]),
        ],
    );
    m
}

fn build_e2() -> DABimodule {
    let mut m = DABimodule::new(
        "E2",
        generators(&[
            ("Y1", Empty, C),
            ("Y2", A, AC),
            ("Y3", B, BC),
            ("Y4", AB, ABC),
        ]),
    );
    fill(
        &mut m,
        &[
            ("Y2", "Y2", &["U1^(k+1) | U1^(k+1)"]),
            ("Y2", "Y3", &["L1*U1^k | L1*U1^k"]),
            ("Y3", "Y2", &["R1*U1^k | R1*U1^k"]),
            ("Y3", "Y3", &["U1^(k+1) | U1^(k+1)", "U2^(k+1) | U2^(k+1)"]),
            ("Y4", "Y4", &["U1^k*U2^l | U1^k*U2^l ; (k,l)!=(0,0)"]),
        ],
    );
    m.notes = vec![
        "the last block is read as U1^k*U2^l | U1^k*U2^l; the printed input \
         U1*U2^l does not match the exponent pattern of the analogous E1 entry"
            .into(),
    ];
    m
}

pub fn build(id: CorpusId) -> DABimodule {
    match id {
        CorpusId::P => build_p(),
        CorpusId::N => build_n(),
        CorpusId::E1 => build_e1(),
        CorpusId::E2 => build_e2(),
    }
}

/// Transpose the secondary matrix, swap `L_i` and `R_i` (reversing composite
/// words), and reverse every input sequence. Generators are unchanged.
pub fn symmetry_transform(m: &DABimodule) -> DABimodule {
    let mut out = m.clone();
    out.name = format!("sym({})", m.name);
    out.notes.clear();
    out.cells = m
        .cells
        .iter()
        .map(|(&(row, col), schemas)| ((col, row), schemas.iter().map(|s| s.mirror()).collect()))
        .collect();
    out
}

/// Whether `E ⊠ E` has no generators, which makes `(B(2), E, 0)` a
/// 2-representation: `τ = 0` satisfies `τ² = 0` and `d(τ) = 1` on the zero module.
pub fn is_zero_boxsquare<M: TermSource + ?Sized>(e: &M) -> Result<bool> {
    Ok(primary_product(e, e)?.is_empty())
}

/// All four built-in bimodules; a corpus can be altered to run negative controls.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub p: DABimodule,
    pub n: DABimodule,
    pub e1: DABimodule,
    pub e2: DABimodule,
}

impl Corpus {
    pub fn standard() -> Self {
        Corpus {
            p: build(CorpusId::P),
            n: build(CorpusId::N),
            e1: build(CorpusId::E1),
            e2: build(CorpusId::E2),
        }
    }

    pub fn get(&self, id: CorpusId) -> &DABimodule {
        match id {
            CorpusId::P => &self.p,
            CorpusId::N => &self.n,
            CorpusId::E1 => &self.e1,
            CorpusId::E2 => &self.e2,
        }
    }

    pub fn get_mut(&mut self, id: CorpusId) -> &mut DABimodule {
        match id {
            CorpusId::P => &mut self.p,
            CorpusId::N => &mut self.n,
            CorpusId::E1 => &mut self.e1,
            CorpusId::E2 => &mut self.e2,
        }
    }
}

impl Default for Corpus {
    fn default() -> Self {
        Corpus::standard()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_counts() {
        assert_eq!(build(CorpusId::P).generators.len(), 12);
        assert_eq!(build(CorpusId::E1).generators.len(), 4);
    }

    #[test]
    fn n_cell_from_display() {
        let n = build(CorpusId::N);
        let cell: Vec<String> = n
            .cell(n.index_of(S_A).unwrap(), n.index_of(N_B).unwrap())
            .map(|s| s.to_string())
            .collect();
        assert_eq!(cell, ["L1*U1^k | U2^(k+1), L1"]);
    }

    #[test]
    fn symmetry_maps_p_to_n() {
        let p = build(CorpusId::P);
        let n = build(CorpusId::N);
        assert_eq!(symmetry_transform(&p).cells, n.cells);
        assert_eq!(symmetry_transform(&symmetry_transform(&p)).cells, p.cells);
    }

    #[test]
    fn e_squares_vanish() {
        assert!(is_zero_boxsquare(&build(CorpusId::E1)).unwrap());
        assert!(is_zero_boxsquare(&build(CorpusId::E2)).unwrap());
    }
}
