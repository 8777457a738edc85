//! Bordered-matrix LaTeX for secondary matrices.
//!
//! One bordered array per summand (generators grouped by the weight of their
//! left idempotent), inside a standalone document that needs only amsmath.

use std::collections::BTreeMap;

use crate::da::{ConcreteDABimodule, DABimodule, DAGenerator, TermSchema};
use crate::fit::fit_module;

/// `{AB}N{AB}` becomes `{_{AB}}N_{AB}`, `X2` becomes `X_{2}`, pairs are kept as pairs.
pub fn generator_latex(name: &str) -> String {
    if let Some(inner) = name.strip_prefix('(').and_then(|n| n.strip_suffix(')')) {
        if let Some((a, b)) = split_pair(inner) {
            return format!("({}, {})", generator_latex(a), generator_latex(b));
        }
    }
    if let Some(rest) = name.strip_prefix('{') {
        if let Some((left, rest)) = rest.split_once('}') {
            if let Some((core, right)) = rest.split_once('{') {
                let right = right.trim_end_matches('}');
                let mut out = String::new();
                if !left.is_empty() {
                    out.push_str(&format!("{{_{{{left}}}}}"));
                }
                out.push_str(core);
                if !right.is_empty() {
                    out.push_str(&format!("_{{{right}}}"));
                }
                return out;
            }
        }
    }
    let digits = name.trim_start_matches(|c: char| !c.is_ascii_digit());
    if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) && digits.len() < name.len()
    {
        return format!("{}_{{{digits}}}", &name[..name.len() - digits.len()]);
    }
    name.replace('_', "\\_")
}

/// Splits `a,b` at the comma that is outside braces.
fn split_pair(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

pub fn schema_latex(s: &TermSchema) -> String {
    let mut out = s.output.latex();
    match s.inputs.len() {
        0 => {}
        1 => out.push_str(&format!(" \\otimes {}", s.inputs[0].latex())),
        _ => {
            let ins: Vec<String> = s.inputs.iter().map(|p| p.latex()).collect();
            out.push_str(&format!(" \\otimes ({})", ins.join(", ")));
        }
    }
    if !s.constraints.is_empty() {
        let cs: Vec<String> = s
            .constraints
            .iter()
            .map(|c| {
                c.to_string()
                    .replace("<=", " \\leq ")
                    .replace("!=", " \\neq ")
                    .replace('<', " < ")
            })
            .collect();
        out.push_str(&format!("\\ ({})", cs.join(",\\ ")));
    }
    out
}

fn cell_latex(schemas: Option<&Vec<TermSchema>>) -> String {
    match schemas {
        None => "0".into(),
        Some(v) if v.is_empty() => "0".into(),
        Some(v) => v.iter().map(schema_latex).collect::<Vec<_>>().join(" + "),
    }
}

fn blocks(gens: &[DAGenerator]) -> BTreeMap<u8, Vec<usize>> {
    let mut out: BTreeMap<u8, Vec<usize>> = BTreeMap::new();
    for (i, g) in gens.iter().enumerate() {
        out.entry(g.left.weight()).or_default().push(i);
    }
    out
}

fn matrices(gens: &[DAGenerator], cells: &BTreeMap<(usize, usize), Vec<TermSchema>>) -> String {
    let mut out = String::new();
    for idx in blocks(gens).values() {
        out.push_str("\\[\n\\begin{array}{c|");
        out.push_str(&"c".repeat(idx.len()));
        out.push_str("}\n");
        let header: Vec<String> = idx
            .iter()
            .map(|&c| generator_latex(&gens[c].name))
            .collect();
        out.push_str(&format!(" & {} \\\\ \\hline\n", header.join(" & ")));
        for &r in idx {
            let row: Vec<String> = idx
                .iter()
                .map(|&c| cell_latex(cells.get(&(r, c))))
                .collect();
            out.push_str(&format!(
                "{} & {} \\\\\n",
                generator_latex(&gens[r].name),
                row.join(" & ")
            ));
        }
        out.push_str("\\end{array}\n\\]\n");
    }
    out
}

fn document(title: &str, body: &str) -> String {
    format!(
        "\\documentclass{{article}}\n\\usepackage{{amsmath}}\n\\usepackage[landscape,margin=1cm]{{geometry}}\n\\begin{{document}}\n\\noindent Secondary matrix of ${}$.\n{body}\\end{{document}}\n",
        title.replace('⊠', " \\boxtimes ")
    )
}

/// A concrete module, with families fitted back where they are recognised.
pub fn concrete_latex(m: &ConcreteDABimodule) -> String {
    document(&m.name, &matrices(&m.generators, &fit_module(m)))
}

pub fn bimodule_latex(m: &DABimodule) -> String {
    let cells = m
        .cells
        .iter()
        .map(|(&k, s)| (k, s.iter().cloned().collect()))
        .collect();
    document(&m.name, &matrices(&m.generators, &cells))
}
