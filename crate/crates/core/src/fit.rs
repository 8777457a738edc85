//! Recovering index families from the concrete terms of a cell, for display.
//!
//! Terms are grouped by the letters they carry; within a group each term is
//! a vector of exponents. A group is matched against a two-index lattice
//! `b + k·d1 + l·d2` first, then peeled into one-index rays `b + k·d`. A fit
//! is only kept if instantiating it at the same bound gives back exactly the
//! original terms, so fitting can lose nothing; whatever does not fit stays
//! as explicit terms.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::Letter;
use crate::da::{ConcreteDABimodule, ConcreteTerm, DAGenerator, DegreeCap, TermSchema};

type Point = Vec<i64>;

fn point(t: &ConcreteTerm) -> Point {
    std::iter::once(&t.output)
        .chain(&t.inputs)
        .flat_map(|m| [i64::from(m.e1), i64::from(m.e2)])
        .collect()
}

fn shape(t: &ConcreteTerm) -> Vec<Letter> {
    std::iter::once(&t.output)
        .chain(&t.inputs)
        .map(|m| m.letter)
        .collect()
}

fn sub(a: &Point, b: &Point) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn nonneg(p: &Point) -> bool {
    p.iter().all(|&x| x >= 0)
}

fn parallel(a: &Point, b: &Point) -> bool {
    (0..a.len()).all(|i| (0..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]))
}

/// Output exponent weight of a direction; rays must grow the output.
fn output_growth(d: &Point) -> i64 {
    d[0] + d[1]
}

fn exponent(base: i64, steps: &[(i64, &str)]) -> String {
    let mut parts: Vec<String> = steps
        .iter()
        .filter(|(c, _)| *c != 0)
        .map(|(c, v)| {
            if *c == 1 {
                v.to_string()
            } else {
                format!("{c}{v}")
            }
        })
        .collect();
    if parts.is_empty() {
        return base.to_string();
    }
    if base != 0 {
        parts.push(base.to_string());
    }
    format!("({})", parts.join("+"))
}

fn schema_text(letters: &[Letter], base: &Point, dirs: &[(&Point, &str)], extra: &str) -> String {
    let pattern = |i: usize| {
        let e1 = exponent(
            base[2 * i],
            &dirs.iter().map(|(d, v)| (d[2 * i], *v)).collect::<Vec<_>>(),
        );
        let e2 = exponent(
            base[2 * i + 1],
            &dirs
                .iter()
                .map(|(d, v)| (d[2 * i + 1], *v))
                .collect::<Vec<_>>(),
        );
        let mut parts = Vec::new();
        if letters[i] != Letter::Id {
            parts.push(letters[i].to_string());
        }
        for (u, e) in [("U1", e1), ("U2", e2)] {
            if e != "0" {
                parts.push(format!("{u}^{e}"));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    };
    let mut s = pattern(0);
    if letters.len() > 1 {
        let ins: Vec<String> = (1..letters.len()).map(pattern).collect();
        s.push_str(" | ");
        s.push_str(&ins.join(", "));
    }
    s + extra
}

/// Instances of `schema` in cell (row, col) at `bound`, or `None` if it is malformed there.
fn instances(
    schema: &TermSchema,
    row: &DAGenerator,
    col: &DAGenerator,
    bound: u32,
) -> Option<BTreeSet<ConcreteTerm>> {
    schema
        .instantiate(row, col, DegreeCap::Output(bound))
        .ok()
        .map(|v| v.into_iter().collect())
}

fn try_schema(
    text: &str,
    row: &DAGenerator,
    col: &DAGenerator,
    bound: u32,
    within: &BTreeSet<ConcreteTerm>,
) -> Option<(TermSchema, BTreeSet<ConcreteTerm>)> {
    let schema: TermSchema = text.parse().ok()?;
    let got = instances(&schema, row, col, bound)?;
    // A family covering fewer than two terms says nothing a term would not.
    (got.len() >= 2 && got.is_subset(within)).then_some((schema, got))
}

/// Fits schemas to the terms of one cell. Terms outside every fitted family
/// come back as index-free schemas.
pub fn fit_cell(
    row: &DAGenerator,
    col: &DAGenerator,
    terms: &BTreeSet<ConcreteTerm>,
    bound: u32,
) -> Vec<TermSchema> {
    let mut groups: BTreeMap<Vec<Letter>, Vec<&ConcreteTerm>> = BTreeMap::new();
    for t in terms {
        groups.entry(shape(t)).or_default().push(t);
    }
    let mut out = Vec::new();
    for (letters, group) in groups {
        let mut left: BTreeSet<ConcreteTerm> = group.into_iter().cloned().collect();
        if let Some((s, got)) = fit_lattice(&letters, &left, row, col, bound) {
            out.push(s);
            left.retain(|t| !got.contains(t));
        }
        while let Some((s, got)) = fit_ray(&letters, &left, row, col, bound) {
            out.push(s);
            left.retain(|t| !got.contains(t));
        }
        out.extend(left.iter().map(TermSchema::concrete));
    }
    out
}

/// `b + k·d1 + l·d2` over the whole group, optionally without `b` itself.
fn fit_lattice(
    letters: &[Letter],
    group: &BTreeSet<ConcreteTerm>,
    row: &DAGenerator,
    col: &DAGenerator,
    bound: u32,
) -> Option<(TermSchema, BTreeSet<ConcreteTerm>)> {
    let points: Vec<Point> = group.iter().map(point).collect();
    if points.len() < 3 {
        return None;
    }
    let dim = points[0].len();
    let base: Point = (0..dim)
        .map(|i| points.iter().map(|p| p[i]).min().unwrap())
        .collect();
    let mut dirs: Vec<Point> = points
        .iter()
        .map(|p| sub(p, &base))
        .filter(|d| nonneg(d) && output_growth(d) > 0)
        .collect();
    dirs.sort_by_key(|d| (d.iter().sum::<i64>(), d.clone()));
    dirs.dedup();
    let d1 = dirs.first()?;
    let d2 = dirs.iter().find(|d| !parallel(d1, d))?;
    for extra in ["", " ; (k,l)!=(0,0)"] {
        let text = schema_text(letters, &base, &[(d1, "l"), (d2, "k")], extra);
        if let Some((s, got)) = try_schema(&text, row, col, bound, group) {
            if got == *group {
                return Some((s, got));
            }
        }
    }
    None
}

/// The longest ray `b + k·d` inside the group, started from its lowest term.
fn fit_ray(
    letters: &[Letter],
    group: &BTreeSet<ConcreteTerm>,
    row: &DAGenerator,
    col: &DAGenerator,
    bound: u32,
) -> Option<(TermSchema, BTreeSet<ConcreteTerm>)> {
    let lowest = group.iter().min_by_key(|t| (t.degree(), point(t)))?;
    let base = point(lowest);
    let mut best: Option<(TermSchema, BTreeSet<ConcreteTerm>)> = None;
    let mut dirs: Vec<Point> = group
        .iter()
        .map(|t| sub(&point(t), &base))
        .filter(|d| nonneg(d) && output_growth(d) > 0)
        .collect();
    dirs.sort();
    dirs.dedup();
    for d in &dirs {
        let text = schema_text(letters, &base, &[(d, "k")], "");
        if let Some((s, got)) = try_schema(&text, row, col, bound, group) {
            if best.as_ref().is_none_or(|(_, b)| got.len() > b.len()) {
                best = Some((s, got));
            }
        }
    }
    best
}

/// Every nonempty cell of `m`, fitted.
pub fn fit_module(m: &ConcreteDABimodule) -> BTreeMap<(usize, usize), Vec<TermSchema>> {
    m.cells
        .iter()
        .map(|(&(r, c), terms)| {
            (
                (r, c),
                fit_cell(&m.generators[r], &m.generators[c], terms, m.bound),
            )
        })
        .collect()
}
