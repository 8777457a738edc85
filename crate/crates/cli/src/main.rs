//! `bhfk`: build, check, tensor and compare DA bimodules over `B(2)`.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bhfk::corpus::{build, symmetry_transform, Corpus, CorpusId};
use bhfk::da::json::{bimodule_from_json, bimodule_to_json, concrete_from_json, concrete_to_json};
use bhfk::da::{
    check_da_relations, infer_bidegrees, infer_concrete_bidegrees, scan_bidegrees,
    ConcreteDABimodule, ConcreteTerm, DABimodule, DAGenerator, Grading, TermSource,
};
use bhfk::reproduce::{run_reproduction, schema_diffs, Options};
use bhfk::tensor::box_tensor;
use bhfk::verify::find_isomorphism;
use bhfk::{enumerate_basis, latex, render, Error};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "bhfk",
    version,
    about = "DA bimodules over the two-strand algebra B(2)"
)]
struct Cli {
    /// Intrinsic-degree truncation.
    #[arg(long, global = true, default_value_t = 10)]
    bound: u32,
    #[arg(long, global = true, value_enum, default_value_t = Emit::Text)]
    emit: Emit,
    /// Exit 1 when the reproduction had to correct a displayed label.
    #[arg(long, global = true)]
    strict_typos: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Text,
    Json,
    Latex,
}

/// Module arguments are corpus ids (P, N, E1, E2), box products of them
/// written `E1xP` or `E1⊠P`, or paths to bimodule JSON files.
#[derive(Subcommand)]
enum Verb {
    /// List the basis of one summand of B(2).
    Basis {
        /// Summand index 0..=3, also accepted as `2,k`.
        #[arg(long)]
        summand: String,
        #[arg(long, default_value_t = 2)]
        max_exp: u32,
    },
    /// Check the DA structure relations degree by degree.
    Check { module: String },
    /// Box tensor product of two bimodules.
    Tensor { left: String, right: String },
    /// Search for a generator bijection identifying two bimodules.
    Iso { left: String, right: String },
    /// Apply the orientation-reversal symmetry.
    Symmetry {
        module: String,
        /// Compare the result with this module.
        #[arg(long)]
        against: Option<String>,
    },
    /// Infer bidegrees and scan every term against them.
    Grade { module: String },
    /// Run every reproduction check.
    Reproduce {
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        timings: bool,
    },
}

enum Operand {
    Schema(DABimodule),
    Concrete(ConcreteDABimodule),
}

impl TermSource for Operand {
    fn name(&self) -> &str {
        match self {
            Operand::Schema(m) => m.name(),
            Operand::Concrete(m) => m.name(),
        }
    }

    fn generators(&self) -> &[DAGenerator] {
        match self {
            Operand::Schema(m) => m.generators(),
            Operand::Concrete(m) => m.generators(),
        }
    }

    fn left_algebra(&self) -> &str {
        match self {
            Operand::Schema(m) => m.left_algebra(),
            Operand::Concrete(m) => m.left_algebra(),
        }
    }

    fn right_algebra(&self) -> &str {
        match self {
            Operand::Schema(m) => m.right_algebra(),
            Operand::Concrete(m) => m.right_algebra(),
        }
    }

    fn terms_up_to(&self, max_degree: u32) -> bhfk::Result<Vec<(usize, usize, ConcreteTerm)>> {
        match self {
            Operand::Schema(m) => m.terms_up_to(max_degree),
            Operand::Concrete(m) => m.terms_up_to(max_degree),
        }
    }
}

impl Operand {
    fn concrete(&self, bound: u32) -> bhfk::Result<ConcreteDABimodule> {
        match self {
            Operand::Schema(m) => m.instantiate(bound),
            Operand::Concrete(m) => Ok(m.truncate(bound)),
        }
    }
}

fn load(arg: &str, bound: u32) -> bhfk::Result<Operand> {
    let path = Path::new(arg);
    if path.exists() || arg.ends_with(".json") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Domain(format!("cannot read {arg}: {e}")))?;
        let loaded = bimodule_from_json(&text)?;
        return Ok(match loaded.bound {
            Some(_) => Operand::Concrete(concrete_from_json(&text)?),
            None => Operand::Schema(loaded.module),
        });
    }
    let parts: Vec<&str> = arg.split(['x', '⊠']).collect();
    if parts.len() > 1 {
        let mut acc = load(parts[0], bound)?;
        for p in &parts[1..] {
            acc = Operand::Concrete(box_tensor(&acc, &load(p, bound)?, bound)?);
        }
        return Ok(acc);
    }
    Ok(Operand::Schema(build(arg.parse::<CorpusId>()?)))
}

fn parse_summand(s: &str) -> bhfk::Result<u8> {
    let k = match s.split_once(',') {
        Some((n, k)) if n.trim() == "2" => k,
        Some(_) => {
            return Err(Error::Domain(format!(
                "only B(2) summands exist here, got `{s}`"
            )))
        }
        None => s,
    };
    k.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad summand `{s}`")))
}

fn no_latex(verb: &str) -> Error {
    Error::Domain(format!("`{verb}` has no LaTeX output"))
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("value serializes") + "\n"
}

/// Output text and exit status.
fn run(cli: Cli) -> bhfk::Result<(String, u8)> {
    let bound = cli.bound;
    let emit = cli.emit;
    Ok(match cli.verb {
        Verb::Basis { summand, max_exp } => {
            let basis = enumerate_basis(parse_summand(&summand)?, max_exp)?;
            match emit {
                Emit::Text => (render::basis_text(&basis), 0),
                Emit::Json => (json(&basis), 0),
                Emit::Latex => return Err(no_latex("basis")),
            }
        }
        Verb::Check { module } => {
            let m = load(&module, bound)?;
            let report = check_da_relations(&m, bound)?;
            let code = u8::from(!report.passed());
            match emit {
                Emit::Text => (render::relation_text(&report), code),
                Emit::Json => (json(&report), code),
                Emit::Latex => return Err(no_latex("check")),
            }
        }
        Verb::Tensor { left, right } => {
            let product = box_tensor(&load(&left, bound)?, &load(&right, bound)?, bound)?;
            let out = match emit {
                Emit::Text => render::concrete_text(&product),
                Emit::Json => concrete_to_json(&product) + "\n",
                Emit::Latex => latex::concrete_latex(&product),
            };
            (out, 0)
        }
        Verb::Iso { left, right } => {
            let x = load(&left, bound)?.concrete(bound)?;
            let y = load(&right, bound)?.concrete(bound)?;
            let found = find_isomorphism(&x, &y, bound)?;
            let code = u8::from(found.is_none());
            match emit {
                Emit::Text => (render::bijection_text(found.as_ref()), code),
                Emit::Json => (json(&found), code),
                Emit::Latex => return Err(no_latex("iso")),
            }
        }
        Verb::Symmetry { module, against } => {
            let Operand::Schema(m) = load(&module, bound)? else {
                return Err(Error::Domain(
                    "symmetry needs a schema-level bimodule".into(),
                ));
            };
            let image = symmetry_transform(&m);
            let mut out = match emit {
                Emit::Text => render::bimodule_text(&image),
                Emit::Json => bimodule_to_json(&image) + "\n",
                Emit::Latex => latex::bimodule_latex(&image),
            };
            let mut code = 0;
            if let Some(other) = against {
                let Operand::Schema(o) = load(&other, bound)? else {
                    return Err(Error::Domain(
                        "--against needs a schema-level bimodule".into(),
                    ));
                };
                let diffs = schema_diffs(&image, &o);
                code = u8::from(!diffs.is_empty());
                for d in diffs {
                    eprintln!("differs from {other}: {d}");
                }
                if emit == Emit::Text {
                    out.push_str(if code == 0 {
                        "matches "
                    } else {
                        "does not match "
                    });
                    out.push_str(&other);
                    out.push('\n');
                }
            }
            (out, code)
        }
        Verb::Grade { module } => {
            let m = load(&module, bound)?;
            let grading = match &m {
                Operand::Schema(s) => infer_bidegrees(s),
                Operand::Concrete(c) => infer_concrete_bidegrees(c, bound)?,
            };
            let violations = match &grading {
                Grading::Consistent(a) => scan_bidegrees(&m, a, bound)?,
                Grading::Inconsistent(_) => vec![],
            };
            let code = u8::from(grading.assignment().is_none() || !violations.is_empty());
            let names: Vec<String> = m.generators().iter().map(|g| g.name.clone()).collect();
            match emit {
                Emit::Text => (render::grading_text(&names, &grading, &violations), code),
                Emit::Json => (
                    json(&serde_json::json!({
                        "module": m.name(),
                        "bound": bound,
                        "generators": names,
                        "grading": grading,
                        "violations": violations,
                    })),
                    code,
                ),
                Emit::Latex => return Err(no_latex("grade")),
            }
        }
        Verb::Reproduce { out, timings } => {
            let report = run_reproduction(&Corpus::standard(), bound, Options { timings })?;
            let as_json = report.to_json() + "\n";
            if let Some(path) = out {
                std::fs::write(&path, &as_json)
                    .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?;
            }
            let failed = !report.passed || (cli.strict_typos && !report.typos.is_empty());
            let code = u8::from(failed);
            match emit {
                Emit::Text => (render::report_text(&report), code),
                Emit::Json => (as_json, code),
                Emit::Latex => return Err(no_latex("reproduce")),
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((out, code)) => {
            // A closed pipe (e.g. `| head`) is not an error of ours.
            let _ = std::io::stdout().write_all(out.as_bytes());
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
