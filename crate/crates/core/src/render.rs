//! Plain-text renderings shared by the command line and the tests.

use std::fmt::Write;

use crate::algebra::Monomial;
use crate::da::{ConcreteDABimodule, DABimodule, DAGenerator, Grading, RelationReport};
use crate::reproduce::Report;
use crate::verify::GeneratorBijection;

fn generator_lines(out: &mut String, gens: &[DAGenerator]) {
    for g in gens {
        let _ = write!(out, "  {}: {} -> {}", g.name, g.left, g.right);
        if let Some((i, h)) = g.bidegree {
            let _ = write!(out, "  ({i}, {h})");
        }
        out.push('\n');
    }
}

pub fn basis_text(basis: &[Monomial]) -> String {
    basis.iter().map(|m| format!("{m}\n")).collect()
}

pub fn bimodule_text(m: &DABimodule) -> String {
    let mut out = format!(
        "{} over ({}, {}), {} generators\n",
        m.name,
        m.left_algebra,
        m.right_algebra,
        m.generators.len()
    );
    generator_lines(&mut out, &m.generators);
    for (&(r, c), schemas) in &m.cells {
        for s in schemas {
            let _ = writeln!(
                out,
                "({}, {}): {s}",
                m.generators[r].name, m.generators[c].name
            );
        }
    }
    for n in &m.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

pub fn concrete_text(m: &ConcreteDABimodule) -> String {
    let mut out = format!(
        "{} over ({}, {}), {} generators, {} terms up to degree {}\n",
        m.name,
        m.left_algebra,
        m.right_algebra,
        m.generators.len(),
        m.term_count(),
        m.bound
    );
    generator_lines(&mut out, &m.generators);
    for (&(r, c), terms) in &m.cells {
        for t in terms {
            let _ = writeln!(
                out,
                "({}, {}): {t}",
                m.generators[r].name, m.generators[c].name
            );
        }
    }
    out
}

pub fn relation_text(r: &RelationReport) -> String {
    let mut out = format!(
        "{}: {} at bound {} ({} terms checked, {} non-cancelling)\n",
        r.module,
        if r.passed() {
            "relations hold"
        } else {
            "relations FAIL"
        },
        r.bound,
        r.terms_checked,
        r.failures.len()
    );
    for f in &r.failures {
        let _ = writeln!(
            out,
            "  ({}, {}) degree {}: {} ⊗ ({})",
            f.row,
            f.col,
            f.degree,
            f.output,
            f.inputs.join(", ")
        );
    }
    out
}

pub fn grading_text(names: &[String], g: &Grading, violations: &[String]) -> String {
    let mut out = String::new();
    match g {
        Grading::Consistent(a) => {
            out.push_str("consistent bidegrees (intrinsic, homological):\n");
            for (n, (i, h)) in names.iter().zip(a) {
                let _ = writeln!(out, "  {n}: ({i}, {h})");
            }
        }
        Grading::Inconsistent(w) => {
            let _ = writeln!(out, "inconsistent: {}", w.reason);
            for e in &w.cycle {
                let _ = writeln!(out, "  {e}");
            }
        }
    }
    for v in violations {
        let _ = writeln!(out, "not preserved: {v}");
    }
    out
}

pub fn bijection_text(b: Option<&GeneratorBijection>) -> String {
    match b {
        Some(b) => b
            .pairs
            .iter()
            .map(|(x, y)| format!("{x} -> {y}\n"))
            .collect(),
        None => "no isomorphism\n".into(),
    }
}

pub fn report_text(r: &Report) -> String {
    let mut out = format!("reproduction at bound {}\n", r.bound);
    for (k, c) in &r.checks {
        let _ = write!(
            out,
            "{} {k}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.summary
        );
        if let Some(ms) = c.millis {
            let _ = write!(out, " [{ms} ms]");
        }
        out.push('\n');
        if !c.passed {
            for d in &c.details {
                let _ = writeln!(out, "    {d}");
            }
        }
    }
    for t in &r.typos {
        let _ = writeln!(out, "typo: {t}");
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    let failed = r.failed_checks();
    if failed.is_empty() {
        let _ = writeln!(out, "all {} checks passed", r.checks.len());
    } else {
        let _ = writeln!(
            out,
            "{} of {} checks failed: {}",
            failed.len(),
            r.checks.len(),
            failed.join(", ")
        );
    }
    out
}
