//! Affine exponent expressions (`k+1`, `t-1`, `2n`) and index constraints
//! (`0<=n<t`, `(k,l)!=(0,0)`).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Values of the index variables of one schema.
pub type Assignment = BTreeMap<String, u32>;

/// `constant + Σ coeff·var` with positive coefficients, variables sorted by name.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentExpr {
    constant: i64,
    terms: Vec<(String, u32)>,
}

impl ExponentExpr {
    pub fn constant(c: i64) -> Self {
        ExponentExpr {
            constant: c,
            terms: vec![],
        }
    }

    pub fn var(name: &str) -> Self {
        ExponentExpr {
            constant: 0,
            terms: vec![(name.to_string(), 1)],
        }
    }

    pub fn constant_part(&self) -> i64 {
        self.constant
    }

    pub fn terms(&self) -> &[(String, u32)] {
        &self.terms
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().map(|(v, _)| v.as_str())
    }

    pub fn coefficient(&self, var: &str) -> u32 {
        self.terms
            .iter()
            .find(|(v, _)| v == var)
            .map_or(0, |(_, c)| *c)
    }

    pub fn eval(&self, asg: &Assignment) -> i64 {
        self.terms.iter().fold(self.constant, |acc, (v, c)| {
            acc + i64::from(*c) * i64::from(asg.get(v).copied().unwrap_or(0))
        })
    }

    pub fn plus_constant(&self, c: i64) -> Self {
        ExponentExpr {
            constant: self.constant + c,
            terms: self.terms.clone(),
        }
    }

    fn add_term(&mut self, var: &str, coeff: u32) {
        if coeff == 0 {
            return;
        }
        match self.terms.binary_search_by(|(v, _)| v.as_str().cmp(var)) {
            Ok(i) => self.terms[i].1 += coeff,
            Err(i) => self.terms.insert(i, (var.to_string(), coeff)),
        }
    }

    pub fn latex(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ExponentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, c) in &self.terms {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if *c == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{c}{v}")?;
            }
        }
        if first {
            write!(f, "{}", self.constant)
        } else if self.constant > 0 {
            write!(f, "+{}", self.constant)
        } else if self.constant < 0 {
            write!(f, "{}", self.constant)
        } else {
            Ok(())
        }
    }
}

impl FromStr for ExponentExpr {
    type Err = Error;

    /// Accepts sums and differences of integers, identifiers and `3k`/`3*k` products.
    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let text = text
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .or_else(|| text.strip_prefix('{').and_then(|t| t.strip_suffix('}')))
            .unwrap_or(&text)
            .to_string();
        if text.is_empty() {
            return Err(Error::Parse("empty exponent".into()));
        }
        let mut out = ExponentExpr::default();
        let mut sign = 1i64;
        let mut chunk = String::new();
        let flush = |chunk: &str, sign: i64, out: &mut ExponentExpr| -> Result<()> {
            if chunk.is_empty() {
                return Err(Error::Parse(format!("malformed exponent `{s}`")));
            }
            let digits: String = chunk.chars().take_while(|c| c.is_ascii_digit()).collect();
            let rest = chunk[digits.len()..].trim_start_matches('*');
            if rest.is_empty() {
                out.constant += sign * digits.parse::<i64>().unwrap();
                return Ok(());
            }
            if !rest.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                || !rest.starts_with(|c: char| c.is_ascii_alphabetic())
            {
                return Err(Error::Parse(format!(
                    "bad term `{chunk}` in exponent `{s}`"
                )));
            }
            if sign < 0 {
                return Err(Error::Parse(format!(
                    "negative coefficient on `{rest}` in exponent `{s}`"
                )));
            }
            let coeff = if digits.is_empty() {
                1
            } else {
                digits.parse::<u32>().unwrap()
            };
            out.add_term(rest, coeff);
            Ok(())
        };
        for ch in text.chars() {
            match ch {
                '+' | '-' => {
                    if !chunk.is_empty() {
                        flush(&chunk, sign, &mut out)?;
                        chunk.clear();
                    } else if !(out.terms.is_empty() && out.constant == 0) {
                        return Err(Error::Parse(format!("malformed exponent `{s}`")));
                    }
                    sign = if ch == '-' { -1 } else { 1 };
                }
                c => chunk.push(c),
            }
        }
        flush(&chunk, sign, &mut out)?;
        Ok(out)
    }
}

/// A linear constraint on index variables. All indices are implicitly `>= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constraint {
    /// `lhs <= rhs`
    Le(ExponentExpr, ExponentExpr),
    /// The tuple of values must differ from this one, e.g. `(k,l) != (0,0)`.
    Excluded(Vec<(String, u32)>),
}

impl Constraint {
    pub fn holds(&self, asg: &Assignment) -> bool {
        match self {
            Constraint::Le(a, b) => a.eval(asg) <= b.eval(asg),
            Constraint::Excluded(tuple) => !tuple
                .iter()
                .all(|(v, val)| asg.get(v).copied().unwrap_or(0) == *val),
        }
    }

    pub fn vars(&self) -> Vec<&str> {
        match self {
            Constraint::Le(a, b) => a.vars().chain(b.vars()).collect(),
            Constraint::Excluded(t) => t.iter().map(|(v, _)| v.as_str()).collect(),
        }
    }

    /// Parses a chain such as `0<=n<t`, `1<=t<=n`, `k==l`, or an exclusion `(k,l)!=(0,0)`.
    pub fn parse_list(s: &str) -> Result<Vec<Constraint>> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some((lhs, rhs)) = text.split_once("!=") {
            let names = parse_tuple(lhs)?;
            let values = parse_tuple(rhs)?;
            if names.len() != values.len() {
                return Err(Error::Parse(format!("tuple arity mismatch in `{s}`")));
            }
            let mut tuple = Vec::new();
            for (n, v) in names.iter().zip(&values) {
                let val = v
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad excluded value `{v}`")))?;
                tuple.push((n.clone(), val));
            }
            tuple.sort();
            return Ok(vec![Constraint::Excluded(tuple)]);
        }
        let mut operands = Vec::new();
        let mut ops = Vec::new();
        let mut rest = text.as_str();
        loop {
            let next = ["<=", "==", "<"]
                .iter()
                .filter_map(|op| rest.find(op).map(|i| (i, *op)))
                .min_by_key(|(i, op)| (*i, std::cmp::Reverse(op.len())));
            match next {
                Some((i, op)) => {
                    operands.push(rest[..i].parse::<ExponentExpr>()?);
                    ops.push(op);
                    rest = &rest[i + op.len()..];
                }
                None => {
                    operands.push(rest.parse::<ExponentExpr>()?);
                    break;
                }
            }
        }
        if ops.is_empty() {
            return Err(Error::Parse(format!("constraint `{s}` has no relation")));
        }
        let mut out = Vec::new();
        for (i, op) in ops.iter().enumerate() {
            let (a, b) = (&operands[i], &operands[i + 1]);
            match *op {
                "<=" => out.push(Constraint::Le(a.clone(), b.clone())),
                "<" => out.push(Constraint::Le(a.plus_constant(1), b.clone())),
                _ => {
                    out.push(Constraint::Le(a.clone(), b.clone()));
                    out.push(Constraint::Le(b.clone(), a.clone()));
                }
            }
        }
        out.retain(|c| !c.is_trivial());
        Ok(out)
    }

    /// A constant left side no larger than the constant part of the right side
    /// always holds, since indices are nonnegative.
    fn is_trivial(&self) -> bool {
        matches!(self, Constraint::Le(a, b) if a.is_constant() && a.constant_part() <= b.constant_part())
    }
}

fn parse_tuple(s: &str) -> Result<Vec<String>> {
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(s);
    Ok(inner.split(',').map(|p| p.trim().to_string()).collect())
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Le(a, b) => {
                // render `x+1<=y` as `x<y`
                if a.constant_part() >= 1 && !a.is_constant() {
                    write!(f, "{}<{}", a.plus_constant(-1), b)
                } else {
                    write!(f, "{a}<={b}")
                }
            }
            Constraint::Excluded(t) => {
                let names: Vec<&str> = t.iter().map(|(n, _)| n.as_str()).collect();
                let vals: Vec<String> = t.iter().map(|(_, v)| v.to_string()).collect();
                write!(f, "({})!=({})", names.join(","), vals.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn asg(pairs: &[(&str, u32)]) -> Assignment {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn parse_and_eval() {
        let e: ExponentExpr = "k+1".parse().unwrap();
        assert_eq!(e.eval(&asg(&[("k", 3)])), 4);
        let e: ExponentExpr = "(t-1)".parse().unwrap();
        assert_eq!(e.eval(&asg(&[("t", 1)])), 0);
        let e: ExponentExpr = "{2k+l}".parse().unwrap();
        assert_eq!(e.eval(&asg(&[("k", 2), ("l", 1)])), 5);
        assert_eq!(e.to_string(), "2k+l");
        assert!("k-".parse::<ExponentExpr>().is_err());
        assert!("1-k".parse::<ExponentExpr>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["k", "k+1", "t-1", "3", "0", "k+l+2"] {
            let e: ExponentExpr = s.parse().unwrap();
            assert_eq!(e.to_string(), s);
        }
    }

    #[test]
    fn chain_constraints() {
        let cs = Constraint::parse_list("0<=n<t").unwrap();
        assert_eq!(cs.len(), 1);
        assert!(cs[0].holds(&asg(&[("n", 0), ("t", 1)])));
        assert!(!cs[0].holds(&asg(&[("n", 1), ("t", 1)])));
        assert_eq!(cs[0].to_string(), "n<t");
        let cs = Constraint::parse_list("1<=t<=n").unwrap();
        assert_eq!(cs.len(), 2);
        assert!(cs.iter().all(|c| c.holds(&asg(&[("n", 2), ("t", 1)]))));
        assert!(!cs.iter().all(|c| c.holds(&asg(&[("n", 2), ("t", 0)]))));
    }

    #[test]
    fn exclusion() {
        let cs = Constraint::parse_list("(k,l)!=(0,0)").unwrap();
        assert!(!cs[0].holds(&asg(&[("k", 0), ("l", 0)])));
        assert!(cs[0].holds(&asg(&[("k", 1), ("l", 0)])));
        assert_eq!(cs[0].to_string(), "(k,l)!=(0,0)");
    }
}
