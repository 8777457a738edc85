//! Reduction of quiver words by exhaustive application of the defining
//! relations of `B(2)`.
//!
//! This is deliberately a separate route from the letter table in the parent
//! module: it knows only the quiver (arrows between nodes) and the relations,
//! and is used to cross-check [`super::multiply_monomials`].

use super::{AlgebraElement, Idempotent, Letter, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Arrow {
    R1,
    L1,
    R2,
    L2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathSymbol {
    Arrow(Arrow),
    U1,
    U2,
}

fn arrow_target(arrow: Arrow, node: Idempotent) -> Option<Idempotent> {
    use Idempotent::*;
    match (arrow, node) {
        (Arrow::R1, A) => Some(B),
        (Arrow::L1, B) => Some(A),
        (Arrow::R2, B) => Some(C),
        (Arrow::L2, C) => Some(B),
        (Arrow::R2, AB) => Some(AC),
        (Arrow::L2, AC) => Some(AB),
        (Arrow::R1, AC) => Some(BC),
        (Arrow::L1, BC) => Some(AC),
        _ => None,
    }
}

/// Whether the loop `U_index` is zero at `node`.
fn u_vanishes(index: u8, node: Idempotent) -> bool {
    match node.weight() {
        0 => true,
        1 => matches!((index, node), (2, Idempotent::A) | (1, Idempotent::C)),
        _ => false,
    }
}

fn u_index(sym: PathSymbol) -> Option<u8> {
    match sym {
        PathSymbol::U1 => Some(1),
        PathSymbol::U2 => Some(2),
        PathSymbol::Arrow(_) => None,
    }
}

/// Node at each position of the word, or `None` if the word is not composable.
fn walk(start: Idempotent, word: &[PathSymbol]) -> Option<Vec<Idempotent>> {
    let mut nodes = Vec::with_capacity(word.len() + 1);
    let mut node = start;
    nodes.push(node);
    for sym in word {
        if let PathSymbol::Arrow(a) = sym {
            node = arrow_target(*a, node)?;
        }
        nodes.push(node);
    }
    Some(nodes)
}

enum Step {
    Zero,
    Rewrote,
    Done,
}

fn rewrite_once(start: Idempotent, word: &mut Vec<PathSymbol>) -> Step {
    use PathSymbol::*;
    let Some(nodes) = walk(start, word) else {
        return Step::Zero;
    };
    let weight = start.weight();
    // nodes[i] is the node just before word[i]
    for (i, sym) in word.iter().enumerate() {
        if let Some(j) = u_index(*sym) {
            if u_vanishes(j, nodes[i]) {
                return Step::Zero;
            }
        }
    }
    for i in 0..word.len().saturating_sub(1) {
        let (x, y) = (word[i], word[i + 1]);
        match (x, y) {
            (U1, U2) | (U2, U1) if weight == 1 && nodes[i] == Idempotent::B => {
                return Step::Zero;
            }
            // a loop after an arrow can slide back to the arrow's source
            (Arrow(_), U1 | U2) if u_vanishes(u_index(y).unwrap(), nodes[i]) => {
                return Step::Zero;
            }
            _ => {}
        }
    }
    for i in 0..word.len().saturating_sub(1) {
        let (x, y) = (word[i], word[i + 1]);
        let replacement: Option<Vec<PathSymbol>> = match (x, y) {
            (U1 | U2, Arrow(_)) => Some(vec![y, x]),
            (U2, U1) => Some(vec![U1, U2]),
            (Arrow(self::Arrow::R1), Arrow(self::Arrow::L1))
            | (Arrow(self::Arrow::L1), Arrow(self::Arrow::R1)) => Some(vec![U1]),
            (Arrow(self::Arrow::R2), Arrow(self::Arrow::L2))
            | (Arrow(self::Arrow::L2), Arrow(self::Arrow::R2)) => Some(vec![U2]),
            (Arrow(self::Arrow::R1), Arrow(self::Arrow::R2))
            | (Arrow(self::Arrow::L2), Arrow(self::Arrow::L1))
                if weight == 1 =>
            {
                return Step::Zero;
            }
            _ => None,
        };
        if let Some(rep) = replacement {
            word.splice(i..i + 2, rep);
            return Step::Rewrote;
        }
    }
    Step::Done
}

/// Fully reduced basis expansion of the path `word` starting at `start`.
/// Non-composable words reduce to zero.
pub fn rewrite_path(start: Idempotent, word: &[PathSymbol]) -> AlgebraElement {
    let mut word = word.to_vec();
    loop {
        match rewrite_once(start, &mut word) {
            Step::Zero => return AlgebraElement::zero(),
            Step::Rewrote => continue,
            Step::Done => break,
        }
    }
    let arrows: Vec<Arrow> = word
        .iter()
        .filter_map(|s| match s {
            PathSymbol::Arrow(a) => Some(*a),
            _ => None,
        })
        .collect();
    let letter = match arrows.as_slice() {
        [] => Letter::Id,
        [Arrow::R1] => Letter::R1,
        [Arrow::L1] => Letter::L1,
        [Arrow::R2] => Letter::R2,
        [Arrow::L2] => Letter::L2,
        [Arrow::R2, Arrow::R1] => Letter::R2R1,
        [Arrow::L1, Arrow::L2] => Letter::L1L2,
        other => unreachable!("irreducible arrow word {other:?} in B(2)"),
    };
    let end = *walk(start, &word)
        .expect("normal form stays composable")
        .last()
        .unwrap();
    let e1 = word.iter().filter(|s| **s == PathSymbol::U1).count() as u32;
    let e2 = word.iter().filter(|s| **s == PathSymbol::U2).count() as u32;
    Monomial {
        left: start,
        right: end,
        letter,
        e1,
        e2,
    }
    .into()
}

/// The quiver word spelling out a basis monomial: its arrows followed by its loops.
pub fn word_of(m: &Monomial) -> Vec<PathSymbol> {
    use PathSymbol::Arrow as A;
    let mut word = match m.letter {
        Letter::Id => vec![],
        Letter::R1 => vec![A(Arrow::R1)],
        Letter::L1 => vec![A(Arrow::L1)],
        Letter::R2 => vec![A(Arrow::R2)],
        Letter::L2 => vec![A(Arrow::L2)],
        Letter::R2R1 => vec![A(Arrow::R2), A(Arrow::R1)],
        Letter::L1L2 => vec![A(Arrow::L1), A(Arrow::L2)],
    };
    word.extend(std::iter::repeat_n(PathSymbol::U1, m.e1 as usize));
    word.extend(std::iter::repeat_n(PathSymbol::U2, m.e2 as usize));
    word
}

#[cfg(test)]
mod tests {
    use super::*;
    use Idempotent::*;
    use PathSymbol::U2;

    #[test]
    fn r1_r2_vanishes_in_weight_one() {
        assert!(rewrite_path(
            A,
            &[PathSymbol::Arrow(Arrow::R1), PathSymbol::Arrow(Arrow::R2)]
        )
        .is_zero());
    }

    #[test]
    fn u2_at_a_vanishes() {
        assert!(rewrite_path(A, &[U2]).is_zero());
    }

    #[test]
    fn r1_l1_r1_is_r1_u1() {
        let w = [
            PathSymbol::Arrow(Arrow::R1),
            PathSymbol::Arrow(Arrow::L1),
            PathSymbol::Arrow(Arrow::R1),
        ];
        let expected = Monomial::new(A, Letter::R1, 1, 0).unwrap();
        assert_eq!(rewrite_path(A, &w), expected.into());
    }

    #[test]
    fn non_composable_word_is_zero() {
        assert!(rewrite_path(A, &[PathSymbol::Arrow(Arrow::L1)]).is_zero());
    }

    #[test]
    fn long_loop_in_weight_two() {
        // R2 R1 L1 L2 = R2 U1 L2 = U1 U2 at AB
        let w = [
            PathSymbol::Arrow(Arrow::R2),
            PathSymbol::Arrow(Arrow::R1),
            PathSymbol::Arrow(Arrow::L1),
            PathSymbol::Arrow(Arrow::L2),
        ];
        let expected = Monomial::new(AB, Letter::Id, 1, 1).unwrap();
        assert_eq!(rewrite_path(AB, &w), expected.into());
    }

    #[test]
    fn word_round_trip() {
        let m = Monomial::new(BC, Letter::L1L2, 2, 1).unwrap();
        assert_eq!(rewrite_path(m.left, &word_of(&m)), m.into());
    }
}
