//! `sasaki`: decide sequents of Sasaki orthologic and inspect the finite
//! structures used as models.
//!
//! Exit codes: 0 proved (or valid), 1 refuted (or invalid), 2 unknown,
//! 3 error, 64 usage.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sasaki_core::corpus::standard_corpus;
use sasaki_core::lattice::verify::verify_all;
use sasaki_core::lattice::{by_name, catalog_names, FiniteOrthoposet, ModelFile};
use sasaki_core::proof::{
    check_derivation, decide, default_cut_terms, prove_rsol_t, prove_with_cut, Decision, ProofResult, SearchConfig,
    SearchStats, DEFAULT_NODE_BUDGET,
};
use sasaki_core::semantics::{
    default_catalog, find_countermodel, Countermodel, CountermodelSearch, ModelStructure, SearchLimits, SearchedSpace,
};
use sasaki_core::{Derivation, Sequent};

const PROVED: u8 = 0;
const REFUTED: u8 = 1;
const UNKNOWN: u8 = 2;
const ERROR: u8 = 3;
const USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "sasaki", version, about = "Decision procedure and finite models for Sasaki orthologic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args, Clone, Copy)]
struct Budget {
    /// Distinct goals the search may expand.
    #[arg(long, env = "SASAKI_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
}

impl Budget {
    fn config(self) -> SearchConfig {
        SearchConfig { node_budget: self.budget, ..SearchConfig::default() }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Search for a derivation without T (or with T, given --with-cut).
    Prove {
        sequent: String,
        /// Allow T with middle terms drawn from the sequent's subterms.
        #[arg(long)]
        with_cut: bool,
        /// Most uses of T on one branch.
        #[arg(long, default_value_t = 1, requires = "with_cut")]
        cut_depth: usize,
        #[command(flatten)]
        budget: Budget,
        /// Write the derivation as a proof file.
        #[arg(long, value_name = "FILE")]
        emit_proof: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Look for a valuation in a finite structure that falsifies the sequent.
    Countermodel {
        sequent: String,
        /// Structures to search, in order; defaults to the standard catalog.
        #[arg(long, value_delimiter = ',')]
        catalog: Vec<String>,
        #[arg(long, default_value_t = SearchLimits::default().max_atoms)]
        max_atoms: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Prove without T, and search for a countermodel if that fails.
    Decide {
        sequent: String,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
    /// Check the orthoposet laws and, where they apply, the Sasaki identities.
    VerifyAxioms {
        /// Structure file: {"elements", "covers", "ortho", "bottom", "top"}.
        #[arg(long, value_name = "FILE", conflicts_with = "catalog", required_unless_present = "catalog")]
        model: Option<PathBuf>,
        /// Built-in structure, e.g. mo2, boolean3, o6, mo2*boolean1.
        #[arg(long, value_name = "NAME")]
        catalog: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Check a proof file and list its open hypotheses.
    CheckProof {
        file: PathBuf,
        /// Accept the transitivity rule T.
        #[arg(long)]
        allow_t: bool,
        #[command(flatten)]
        output: Output,
    },
    /// List the built-in structures.
    Catalog {
        #[command(flatten)]
        output: Output,
    },
    /// Over all sequents in a, b with at most three connectives a side, list
    /// those provable with T but not without.
    CutProbe {
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
}

/// What a command prints and the code it exits with.
struct Report {
    code: u8,
    json: Value,
    text: String,
}

impl Report {
    fn new(code: u8, json: Value, text: impl Into<String>) -> Report {
        Report { code, json, text: text.into() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { PROVED });
        }
    };
    let json = match &cli.command {
        Command::Prove { output, .. }
        | Command::Countermodel { output, .. }
        | Command::Decide { output, .. }
        | Command::VerifyAxioms { output, .. }
        | Command::CheckProof { output, .. }
        | Command::Catalog { output }
        | Command::CutProbe { output, .. } => output.json,
    };
    let report = run(cli.command)
        .unwrap_or_else(|e| Report::new(ERROR, json!({"result": "error", "error": e}), format!("error: {e}")));
    // A closed pipe on stdout is not an error worth a panic.
    let _ = if json {
        writeln!(std::io::stdout(), "{}", report.json)
    } else if report.code == ERROR {
        writeln!(std::io::stderr(), "{}", report.text)
    } else {
        writeln!(std::io::stdout(), "{}", report.text.trim_end())
    };
    ExitCode::from(report.code)
}

fn parse(text: &str) -> Result<Sequent, String> {
    text.parse().map_err(|e| format!("cannot parse `{text}`: {e}"))
}

fn run(command: Command) -> Result<Report, String> {
    match command {
        Command::Prove { sequent, with_cut, cut_depth, budget, emit_proof, .. } => {
            let s = parse(&sequent)?;
            let result = if with_cut {
                prove_with_cut(&s, &default_cut_terms(&s), cut_depth, budget.config())
            } else {
                prove_rsol_t(&s, budget.config())
            }
            .map_err(|e| e.to_string())?;
            if let (Some(path), Some(d)) = (emit_proof, result.derivation()) {
                std::fs::write(&path, d.to_json_string() + "\n")
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            Ok(proof_report(&s, &result, None))
        }
        Command::Countermodel { sequent, catalog, max_atoms, .. } => {
            let s = parse(&sequent)?;
            let structures: Vec<ModelStructure> = if catalog.is_empty() {
                default_catalog().to_vec()
            } else {
                catalog
                    .iter()
                    .map(|n| ModelStructure::by_name(n))
                    .collect::<Result<_, _>>()
                    .map_err(|e| e.to_string())?
            };
            let limits = SearchLimits { max_atoms, ..SearchLimits::default() };
            Ok(match find_countermodel(&s, &structures, limits).map_err(|e| e.to_string())? {
                CountermodelSearch::Found(c) => countermodel_report(&s, &c),
                CountermodelSearch::NotFound(space) => {
                    let text = format!("no countermodel to {s}\n{}", space_text(&space));
                    Report::new(UNKNOWN, json!({"result": "unknown", "searched": space_json(&space)}), text)
                }
            })
        }
        Command::Decide { sequent, budget, .. } => {
            let s = parse(&sequent)?;
            let Decision { result, searched } =
                decide(&s, budget.config(), default_catalog(), SearchLimits::default()).map_err(|e| e.to_string())?;
            Ok(proof_report(&s, &result, searched.as_ref()))
        }
        Command::VerifyAxioms { model, catalog, .. } => {
            let (name, p): (String, FiniteOrthoposet) = match (model, catalog) {
                (Some(path), _) => (path.display().to_string(), ModelFile::load(&path).map_err(|e| e.to_string())?),
                (None, Some(name)) => {
                    let p = by_name(&name).map_err(|e| e.to_string())?;
                    (name, p)
                }
                (None, None) => unreachable!("clap requires one of --model and --catalog"),
            };
            let report = verify_all(&p);
            let mut json = report.to_json(&p);
            json["structure"] = json!(name);
            let text = if report.is_empty() {
                format!("{name}: all checks pass")
            } else {
                format!("{name}:\n{}", report.render(&p))
            };
            Ok(Report::new(if report.is_empty() { PROVED } else { REFUTED }, json, text))
        }
        Command::CheckProof { file, allow_t, .. } => {
            let text = std::fs::read_to_string(&file).map_err(|e| format!("cannot read {}: {e}", file.display()))?;
            let d = Derivation::from_json(&text).map_err(|e| e.to_string())?;
            Ok(match check_derivation(&d, allow_t) {
                Ok(open) => {
                    let hyps: Vec<Value> =
                        open.iter().map(|(label, s)| json!({"label": label, "sequent": s.to_string()})).collect();
                    let mut text = format!("valid derivation of {}", d.conclusion);
                    for (label, s) in &open {
                        text.push_str(&format!("\n  open hypothesis {label}: {s}"));
                    }
                    let json =
                        json!({"result": "valid", "conclusion": d.conclusion.to_string(), "open_hypotheses": hyps});
                    Report::new(PROVED, json, text)
                }
                Err(e) => Report::new(
                    REFUTED,
                    json!({"result": "invalid", "path": e.path(), "error": e.to_string()}),
                    format!("invalid: {e}"),
                ),
            })
        }
        Command::Catalog { .. } => catalog_report(),
        Command::CutProbe { depth, budget, .. } => cut_probe_report(depth, budget.config()),
    }
}

fn proof_report(s: &Sequent, result: &ProofResult, searched: Option<&SearchedSpace>) -> Report {
    match result {
        ProofResult::Proved(d) => {
            let trace: Vec<String> = d.rule_trace().iter().map(|r| r.to_string()).collect();
            Report::new(PROVED, json!({"result": "proved", "rule_trace": trace}), format!("proved\n{}", d.render()))
        }
        ProofResult::Refuted(c) => countermodel_report(s, c),
        ProofResult::Exhausted(stats) => {
            let SearchStats { nodes, memo_size, max_depth } = stats;
            let mut json = json!({"result": "unknown", "nodes": nodes, "memo_size": memo_size, "max_depth": max_depth});
            let mut text = format!("unknown: no proof of {s} without T ({nodes} goals searched)");
            if let Some(space) = searched {
                json["searched"] = space_json(space);
                text.push_str(&format!("\nno countermodel either\n{}", space_text(space)));
            }
            Report::new(UNKNOWN, json, text)
        }
    }
}

fn countermodel_report(s: &Sequent, c: &Countermodel) -> Report {
    let mut json = c.to_json();
    json["result"] = json!("refuted");
    let valuation: Vec<String> =
        c.model.valuation.iter().map(|(a, &e)| format!("{a} = {}", c.model.element_name(e))).collect();
    let text = format!(
        "refuted in {} with {}: {} evaluates to {}, {} to {}",
        c.model.name,
        valuation.join(", "),
        s.lhs,
        c.model.element_name(c.lhs_value),
        s.rhs,
        c.model.element_name(c.rhs_value)
    );
    Report::new(REFUTED, json, text)
}

fn space_json(space: &SearchedSpace) -> Value {
    let searched: Vec<Value> = space.searched.iter().map(|(m, n)| json!({"model": m, "valuations": n})).collect();
    json!({"models": searched, "skipped": space.skipped})
}

fn space_text(space: &SearchedSpace) -> String {
    let mut lines: Vec<String> = space.searched.iter().map(|(m, n)| format!("  {m}: {n} valuations")).collect();
    lines.extend(space.skipped.iter().map(|m| format!("  {m}: skipped, too many valuations")));
    lines.join("\n")
}

fn catalog_report() -> Result<Report, String> {
    let mut rows = Vec::new();
    let mut text =
        format!("{:<14} {:>8}  {:<8} {:<13} {}", "name", "elements", "lattice", "orthomodular", "distributive");
    for name in catalog_names() {
        let p = by_name(name).map_err(|e| e.to_string())?;
        let lattice = p.is_lattice();
        let orthomodular = lattice && p.is_orthomodular().unwrap_or(false);
        let distributive = lattice && p.is_distributive();
        text.push_str(&format!("\n{name:<14} {:>8}  {lattice:<8} {orthomodular:<13} {distributive}", p.len()));
        rows.push(json!({
            "name": name,
            "elements": p.len(),
            "lattice": lattice,
            "orthomodular": orthomodular,
            "distributive": distributive,
        }));
    }
    Ok(Report::new(PROVED, json!({"structures": rows}), text))
}

fn cut_probe_report(depth: usize, config: SearchConfig) -> Result<Report, String> {
    let mut helped = Vec::new();
    let mut with_cut = 0;
    let corpus = standard_corpus();
    for s in &corpus {
        let r = prove_with_cut(s, &default_cut_terms(s), depth, config).map_err(|e| format!("{s}: {e}"))?;
        let Some(d) = r.derivation() else { continue };
        with_cut += 1;
        check_derivation(d, true).map_err(|e| format!("{s}: T-proof rejected: {e}"))?;
        if !prove_rsol_t(s, config).map_err(|e| format!("{s}: {e}"))?.is_proved() {
            helped.push(s.to_string());
        }
    }
    let mut text = format!(
        "{} sequents, {with_cut} provable with T at depth {depth}, T needed for {}:",
        corpus.len(),
        helped.len()
    );
    for s in &helped {
        text.push_str(&format!("\n  {s}"));
    }
    let json = json!({"sequents": corpus.len(), "depth": depth, "proved_with_cut": with_cut, "cut_needed": helped});
    Ok(Report::new(PROVED, json, text))
}
