//! The two-strand algebra `B(2) = B(2,0) ⊕ B(2,1) ⊕ B(2,2) ⊕ B(2,3)` over F2.
//!
//! `B(2,1)` and `B(2,2)` are quiver path algebras on three nodes with arrows
//! `R_i`, `L_i` and central loops `U_1`, `U_2`, modulo `R_iL_i = U_i`,
//! `L_iR_i = U_i` (and, in `B(2,1)`, `R_1R_2 = 0`, `L_2L_1 = 0`, `U_2 = 0` at
//! `A`, `U_1 = 0` at `C`). `B(2,0) = F2` and `B(2,3) = F2[U_1, U_2]`.
//!
//! Paths compose left to right: in `a·b` the path `a` is traversed first, so
//! `a·b` is nonzero only if `right(a) = left(b)`.
//!
//! Every basis element is a [`Monomial`]: an idempotent pair, a path letter and
//! two `U` exponents. The product of two monomials is either zero or a single
//! monomial, which [`multiply_monomials`] computes from a letter table. The
//! [`rewrite`] submodule holds an independent route through the presentation.

pub mod rewrite;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distinguished idempotents of `B(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Idempotent {
    Empty,
    A,
    B,
    C,
    AB,
    AC,
    BC,
    ABC,
}

impl Idempotent {
    pub const ALL: [Idempotent; 8] = [
        Idempotent::Empty,
        Idempotent::A,
        Idempotent::B,
        Idempotent::C,
        Idempotent::AB,
        Idempotent::AC,
        Idempotent::BC,
        Idempotent::ABC,
    ];

    /// Number of occupied positions; selects the summand `B(2, weight)`.
    pub fn weight(self) -> u8 {
        match self {
            Idempotent::Empty => 0,
            Idempotent::A | Idempotent::B | Idempotent::C => 1,
            Idempotent::AB | Idempotent::AC | Idempotent::BC => 2,
            Idempotent::ABC => 3,
        }
    }

    pub fn of_weight(weight: u8) -> &'static [Idempotent] {
        use Idempotent::*;
        match weight {
            0 => &[Empty],
            1 => &[A, B, C],
            2 => &[AB, AC, BC],
            3 => &[ABC],
            _ => &[],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Idempotent::Empty => "∅",
            Idempotent::A => "A",
            Idempotent::B => "B",
            Idempotent::C => "C",
            Idempotent::AB => "AB",
            Idempotent::AC => "AC",
            Idempotent::BC => "BC",
            Idempotent::ABC => "ABC",
        }
    }
}

impl fmt::Display for Idempotent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Idempotent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "∅" | "0" | "" | "empty" | "Empty" => Idempotent::Empty,
            "A" => Idempotent::A,
            "B" => Idempotent::B,
            "C" => Idempotent::C,
            "AB" => Idempotent::AB,
            "AC" => Idempotent::AC,
            "BC" => Idempotent::BC,
            "ABC" => Idempotent::ABC,
            other => return Err(Error::Parse(format!("unknown idempotent `{other}`"))),
        })
    }
}

impl Serialize for Idempotent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for Idempotent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The path part of a basis monomial, with `U` powers stripped off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Id,
    R1,
    L1,
    R2,
    L2,
    R2R1,
    L1L2,
}

impl Letter {
    pub const ALL: [Letter; 7] = [
        Letter::Id,
        Letter::R1,
        Letter::L1,
        Letter::R2,
        Letter::L2,
        Letter::R2R1,
        Letter::L1L2,
    ];

    /// Path length, which is also the intrinsic degree contribution.
    pub fn length(self) -> u32 {
        match self {
            Letter::Id => 0,
            Letter::R1 | Letter::L1 | Letter::R2 | Letter::L2 => 1,
            Letter::R2R1 | Letter::L1L2 => 2,
        }
    }

    /// End node of the path starting at `source`, if the letter exists there.
    pub fn target(self, source: Idempotent) -> Option<Idempotent> {
        use Idempotent::*;
        match (self, source) {
            (Letter::Id, s) => Some(s),
            (Letter::R1, A) => Some(B),
            (Letter::L1, B) => Some(A),
            (Letter::R2, B) => Some(C),
            (Letter::L2, C) => Some(B),
            (Letter::R2, AB) => Some(AC),
            (Letter::L2, AC) => Some(AB),
            (Letter::R1, AC) => Some(BC),
            (Letter::L1, BC) => Some(AC),
            (Letter::R2R1, AB) => Some(BC),
            (Letter::L1L2, BC) => Some(AB),
            _ => None,
        }
    }

    /// Swap `L_i` and `R_i`, reversing composite words (`L1L2 <-> R2R1`).
    pub fn mirror(self) -> Letter {
        match self {
            Letter::Id => Letter::Id,
            Letter::R1 => Letter::L1,
            Letter::L1 => Letter::R1,
            Letter::R2 => Letter::L2,
            Letter::L2 => Letter::R2,
            Letter::R2R1 => Letter::L1L2,
            Letter::L1L2 => Letter::R2R1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Letter::Id => "Id",
            Letter::R1 => "R1",
            Letter::L1 => "L1",
            Letter::R2 => "R2",
            Letter::L2 => "L2",
            Letter::R2R1 => "R2R1",
            Letter::L1L2 => "L1L2",
        }
    }

    pub fn latex(self) -> &'static str {
        match self {
            Letter::Id => "",
            Letter::R1 => "R_1",
            Letter::L1 => "L_1",
            Letter::R2 => "R_2",
            Letter::L2 => "L_2",
            Letter::R2R1 => "R_2R_1",
            Letter::L1L2 => "L_1L_2",
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "Id" | "1" => Letter::Id,
            "R1" => Letter::R1,
            "L1" => Letter::L1,
            "R2" => Letter::R2,
            "L2" => Letter::L2,
            "R2R1" => Letter::R2R1,
            "L1L2" => Letter::L1L2,
            other => return Err(Error::Parse(format!("unknown letter `{other}`"))),
        })
    }
}

impl Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One F2-basis element `letter · U1^e1 · U2^e2` of `B(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub left: Idempotent,
    pub right: Idempotent,
    pub letter: Letter,
    pub e1: u32,
    pub e2: u32,
}

impl Monomial {
    /// Builds the monomial starting at `left`, or `None` if it is not a basis element.
    pub fn new(left: Idempotent, letter: Letter, e1: u32, e2: u32) -> Option<Monomial> {
        let right = letter.target(left)?;
        let m = Monomial {
            left,
            right,
            letter,
            e1,
            e2,
        };
        m.is_valid().then_some(m)
    }

    pub fn idempotent(at: Idempotent) -> Monomial {
        Monomial {
            left: at,
            right: at,
            letter: Letter::Id,
            e1: 0,
            e2: 0,
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.letter == Letter::Id && self.e1 == 0 && self.e2 == 0
    }

    pub fn summand(&self) -> u8 {
        self.left.weight()
    }

    /// Intrinsic degree: path length plus twice the total `U` power.
    pub fn degree(&self) -> u32 {
        self.letter.length() + 2 * (self.e1 + self.e2)
    }

    /// Whether this is a listed basis element of its summand.
    pub fn is_valid(&self) -> bool {
        use Idempotent::*;
        if self.letter.target(self.left) != Some(self.right) {
            return false;
        }
        match self.left.weight() {
            0 => self.e1 == 0 && self.e2 == 0,
            1 => match (self.letter, self.left) {
                (Letter::Id, A) => self.e2 == 0,
                (Letter::Id, C) => self.e1 == 0,
                (Letter::Id, _) => self.e1 == 0 || self.e2 == 0,
                (Letter::R1 | Letter::L1, _) => self.e2 == 0,
                (Letter::R2 | Letter::L2, _) => self.e1 == 0,
                _ => false,
            },
            _ => true,
        }
    }

    fn sort_key(&self) -> (Letter, u32, u32, Idempotent, Idempotent) {
        (self.letter, self.e1, self.e2, self.left, self.right)
    }

    pub fn latex(&self) -> String {
        let mut out = self.letter.latex().to_string();
        for (var, e) in [("U_1", self.e1), ("U_2", self.e2)] {
            match e {
                0 => {}
                1 => out.push_str(var),
                e => out.push_str(&format!("{var}^{{{e}}}")),
            }
        }
        if out.is_empty() {
            "1".to_string()
        } else {
            out
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical rendering, e.g. `R2R1*U1^2*U2` or `Id(B)*U2^3`.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.letter {
            Letter::Id => write!(f, "Id({})", self.left)?,
            l => write!(f, "{l}")?,
        }
        for (var, e) in [("U1", self.e1), ("U2", self.e2)] {
            match e {
                0 => {}
                1 => write!(f, "*{var}")?,
                e => write!(f, "*{var}^{e}")?,
            }
        }
        Ok(())
    }
}

/// Composition of path letters inside one summand, as `(letter, extra U1, extra U2)`.
/// `None` means the product is zero (or the letters do not compose).
fn compose_letters(first: Letter, second: Letter, weight: u8) -> Option<(Letter, u32, u32)> {
    use Letter::*;
    match (first, second) {
        (Id, x) | (x, Id) => return Some((x, 0, 0)),
        _ => {}
    }
    match weight {
        1 => match (first, second) {
            (R1, L1) | (L1, R1) => Some((Id, 1, 0)),
            (R2, L2) | (L2, R2) => Some((Id, 0, 1)),
            _ => None,
        },
        2 => match (first, second) {
            (R1, L1) | (L1, R1) => Some((Id, 1, 0)),
            (R2, L2) | (L2, R2) => Some((Id, 0, 1)),
            (R2, R1) => Some((R2R1, 0, 0)),
            (L1, L2) => Some((L1L2, 0, 0)),
            (L2, R2R1) => Some((R1, 0, 1)),
            (R1, L1L2) => Some((L2, 1, 0)),
            (R2R1, L1) => Some((R2, 1, 0)),
            (L1L2, R2) => Some((L1, 0, 1)),
            (R2R1, L1L2) | (L1L2, R2R1) => Some((Id, 1, 1)),
            _ => None,
        },
        _ => None,
    }
}

/// Product `a·b` of two basis monomials (path `a` first), zero or a single monomial.
pub fn multiply_monomials(a: &Monomial, b: &Monomial) -> Option<Monomial> {
    if a.right != b.left {
        return None;
    }
    let (letter, u1, u2) = compose_letters(a.letter, b.letter, a.summand())?;
    let product = Monomial {
        left: a.left,
        right: b.right,
        letter,
        e1: a.e1 + b.e1 + u1,
        e2: a.e2 + b.e2 + u2,
    };
    product.is_valid().then_some(product)
}

/// Basis expansion of `a·b`.
pub fn multiply(a: &Monomial, b: &Monomial) -> AlgebraElement {
    multiply_monomials(a, b).into_iter().collect()
}

/// All basis monomials of `B(2, summand)` with both exponents at most `max_exp`,
/// in canonical order.
pub fn enumerate_basis(summand: u8, max_exp: u32) -> Result<Vec<Monomial>> {
    if summand > 3 {
        return Err(Error::Domain(format!(
            "summand {summand} is out of range; B(2) has summands 0..=3"
        )));
    }
    let mut out = BTreeSet::new();
    for &left in Idempotent::of_weight(summand) {
        for letter in Letter::ALL {
            for e1 in 0..=max_exp {
                for e2 in 0..=max_exp {
                    if let Some(m) = Monomial::new(left, letter, e1, e2) {
                        out.insert(m);
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Every ordered pair `(b', b'')` of basis monomials with `b'·b'' = c`,
/// including the splittings through idempotents.
pub fn factorizations(c: &Monomial) -> Vec<(Monomial, Monomial)> {
    let d = c.degree();
    let mut out = Vec::new();
    for first in monomials_from(c.left, d) {
        let rest = d - first.degree();
        for second in monomials_from(first.right, rest) {
            if second.degree() == rest && multiply_monomials(&first, &second) == Some(*c) {
                out.push((first, second));
            }
        }
    }
    out.sort();
    out
}

/// Basis monomials starting at `left` with degree at most `max_degree`.
fn monomials_from(left: Idempotent, max_degree: u32) -> impl Iterator<Item = Monomial> {
    Letter::ALL.into_iter().flat_map(move |letter| {
        let budget = max_degree.saturating_sub(letter.length()) / 2;
        let fits = letter.length() <= max_degree;
        (0..=budget).flat_map(move |e1| {
            (0..=budget - e1)
                .filter_map(move |e2| fits.then(|| Monomial::new(left, letter, e1, e2)).flatten())
        })
    })
}

/// A finite F2-linear combination of basis monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraElement {
    terms: BTreeSet<Monomial>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds one basis monomial (coefficients are mod 2).
    pub fn add_term(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for a in &self.terms {
            for b in &other.terms {
                if let Some(p) = multiply_monomials(a, b) {
                    out.add_term(p);
                }
            }
        }
        out
    }
}

impl std::ops::Add for &AlgebraElement {
    type Output = AlgebraElement;

    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for m in &rhs.terms {
            out.add_term(*m);
        }
        out
    }
}

impl From<Monomial> for AlgebraElement {
    fn from(m: Monomial) -> Self {
        std::iter::once(m).collect()
    }
}

impl FromIterator<Monomial> for AlgebraElement {
    fn from_iter<I: IntoIterator<Item = Monomial>>(iter: I) -> Self {
        let mut out = AlgebraElement::zero();
        for m in iter {
            out.add_term(m);
        }
        out
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Idempotent::*;

    fn m(left: Idempotent, letter: Letter, e1: u32, e2: u32) -> Monomial {
        Monomial::new(left, letter, e1, e2).unwrap()
    }

    #[test]
    fn r1_then_l1_is_u1_at_a() {
        let p = multiply(&m(A, Letter::R1, 0, 0), &m(B, Letter::L1, 0, 0));
        assert_eq!(p, AlgebraElement::from(m(A, Letter::Id, 1, 0)));
    }

    #[test]
    fn l2_then_l1_vanishes() {
        assert!(multiply(&m(C, Letter::L2, 0, 0), &m(B, Letter::L1, 0, 0)).is_zero());
    }

    #[test]
    fn idempotent_is_a_left_identity() {
        let r1 = m(A, Letter::R1, 0, 0);
        assert_eq!(
            multiply(&Monomial::idempotent(A), &r1),
            AlgebraElement::from(r1)
        );
        assert!(multiply(&Monomial::idempotent(B), &r1).is_zero());
    }

    #[test]
    fn l1_u1_squared_times_r1() {
        let p = multiply(&m(B, Letter::L1, 2, 0), &m(A, Letter::R1, 0, 0));
        assert_eq!(p, AlgebraElement::from(m(B, Letter::Id, 3, 0)));
    }

    #[test]
    fn r2_then_r1_in_weight_two() {
        let p = multiply(&m(AB, Letter::R2, 0, 0), &m(AC, Letter::R1, 0, 0));
        assert_eq!(p, AlgebraElement::from(m(AB, Letter::R2R1, 0, 0)));
    }

    #[test]
    fn mixed_u_at_b_is_not_a_basis_element() {
        assert!(Monomial::new(B, Letter::Id, 1, 1).is_none());
        assert!(multiply(&m(B, Letter::Id, 1, 0), &m(B, Letter::Id, 0, 1)).is_zero());
    }

    #[test]
    fn exponent_support_in_weight_one() {
        assert!(Monomial::new(A, Letter::Id, 0, 1).is_none());
        assert!(Monomial::new(C, Letter::Id, 1, 0).is_none());
        assert!(Monomial::new(A, Letter::R1, 0, 1).is_none());
        assert!(Monomial::new(B, Letter::R2, 1, 0).is_none());
        assert!(Monomial::new(A, Letter::R2R1, 0, 0).is_none());
    }

    #[test]
    fn enumerate_small_summands() {
        assert_eq!(
            enumerate_basis(0, 5).unwrap(),
            vec![Monomial::idempotent(Empty)]
        );
        let b21 = enumerate_basis(1, 0).unwrap();
        assert_eq!(b21.len(), 7);
        let b23 = enumerate_basis(3, 1).unwrap();
        let rendered: Vec<String> = b23.iter().map(|m| m.to_string()).collect();
        assert_eq!(
            rendered,
            ["Id(ABC)", "Id(ABC)*U2", "Id(ABC)*U1", "Id(ABC)*U1*U2"]
        );
        assert!(matches!(enumerate_basis(4, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn b22_basis_counts() {
        // per exponent pair: three idempotents, six arrows/composites
        assert_eq!(enumerate_basis(2, 1).unwrap().len(), 9 * 4);
    }

    #[test]
    fn degrees() {
        assert_eq!(Monomial::idempotent(Empty).degree(), 0);
        assert_eq!(m(A, Letter::R1, 1, 0).degree(), 3);
        assert_eq!(m(AB, Letter::R2R1, 1, 2).degree(), 8);
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(m(AB, Letter::R2R1, 2, 1).to_string(), "R2R1*U1^2*U2");
        assert_eq!(m(B, Letter::Id, 0, 3).to_string(), "Id(B)*U2^3");
    }

    #[test]
    fn factorizations_of_u1_at_a() {
        let c = m(A, Letter::Id, 1, 0);
        let f = factorizations(&c);
        // (I, U1), (U1, I), (R1, L1)
        assert_eq!(f.len(), 3);
        assert!(f.contains(&(m(A, Letter::R1, 0, 0), m(B, Letter::L1, 0, 0))));
        assert!(f.iter().all(|(x, y)| multiply_monomials(x, y) == Some(c)));
    }

    #[test]
    fn factorizations_of_an_idempotent() {
        let i = Monomial::idempotent(AC);
        assert_eq!(factorizations(&i), vec![(i, i)]);
    }

    #[test]
    fn algebra_element_addition_is_mod_two() {
        let x = AlgebraElement::from(m(A, Letter::R1, 0, 0));
        assert!((&x + &x).is_zero());
    }
}
