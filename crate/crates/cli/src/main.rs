//! `quantrel` — load a verification document, check Hoare assertions,
//! query predicate transformers, and print matrices.
//!
//! Exit codes: `0` when the command succeeds (for `check`: every assertion
//! holds), `1` when `check` finds a failing assertion, `2` on any load,
//! resolution, or carrier error (the diagnostic on stderr names the
//! offending document key).

mod document;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use document::{load_document, AssertionBody, Document};
use quantrel::gcl::{self, Verdict};
use quantrel::subtype::closure;
use quantrel::{flow, Comonoid};

/// Step bound for `star`; closure squares the accumulated matrix each
/// pass, so any carrier whose closure stabilizes lands well inside it.
const STAR_BUDGET: usize = 64;

#[derive(Parser)]
#[command(
    name = "quantrel",
    version,
    about = "Check Hoare assertions and query predicate transformers over quantale-valued relation matrices"
)]
struct Cli {
    /// Replace the document's carrier before parsing entries.
    #[arg(long, global = true, value_parser = ["boolean", "tropical", "natural"])]
    quantale: Option<String>,

    /// Machine-readable JSON output instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every assertion in the document, one verdict line each.
    Check {
        /// Path to the JSON document.
        path: PathBuf,
    },
    /// Strongest postcondition of a program or matrix through a predicate.
    Sp {
        path: PathBuf,
        /// Program name (looked up first) or matrix name.
        name: String,
        /// Predicate name.
        pred: String,
    },
    /// Weakest liberal precondition of a program or matrix against a predicate.
    Wlp {
        path: PathBuf,
        /// Program name (looked up first) or matrix name.
        name: String,
        /// Predicate name.
        pred: String,
    },
    /// Reflexive-transitive closure of a named square matrix.
    Star {
        path: PathBuf,
        /// Matrix name.
        matrix: String,
    },
    /// Pretty-print a named matrix.
    Dump {
        path: PathBuf,
        /// Matrix name.
        matrix: String,
    },
    /// Compile a named program and print its matrix.
    Compile {
        path: PathBuf,
        /// Program name.
        program: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(String, ExitCode), String> {
    let override_q = cli.quantale.as_deref();
    let load = |path: &PathBuf| load_document(path, override_q).map_err(|e| e.0);
    match &cli.command {
        Command::Check { path } => cmd_check(&load(path)?, cli.json),
        Command::Sp { path, name, pred } => {
            cmd_transformer(&load(path)?, "sp", name, pred, cli.json)
        }
        Command::Wlp { path, name, pred } => {
            cmd_transformer(&load(path)?, "wlp", name, pred, cli.json)
        }
        Command::Star { path, matrix } => cmd_star(&load(path)?, matrix, cli.json),
        Command::Dump { path, matrix } => cmd_dump(&load(path)?, matrix, cli.json),
        Command::Compile { path, program } => cmd_compile(&load(path)?, program, cli.json),
    }
}

fn cmd_check(doc: &Document, json_out: bool) -> Result<(String, ExitCode), String> {
    let mut all_hold = true;
    let mut lines = String::new();
    let mut entries = Vec::new();
    for (i, a) in doc.assertions.iter().enumerate() {
        let verdict = match &a.body {
            AssertionBody::Prog(name) => {
                let env = doc.env.as_ref().expect("programs imply an environment");
                gcl::verify(&a.pre, &doc.programs[name], &a.post, env)
                    .map_err(|e| format!("assertions[{i}]: {e}"))?
            }
            AssertionBody::Term(name) => gcl::verify_term(
                &doc.predicates[&a.pre],
                &doc.matrices[name],
                &doc.predicates[&a.post],
            )
            .map_err(|e| format!("assertions[{i}]: {e}"))?,
        };
        let n = i + 1;
        match &verdict {
            Verdict::Holds => {
                lines.push_str(&format!("assertion {n}: HOLDS\n"));
                entries.push(json!({"index": n, "holds": true}));
            }
            Verdict::Fails { witness } => {
                all_hold = false;
                lines.push_str(&format!(
                    "assertion {n}: FAILS (counterexample: {witness})\n"
                ));
                entries.push(json!({"index": n, "holds": false, "counterexample": witness}));
            }
        }
    }
    let out = if json_out {
        json_line(&json!({
            "quantale": doc.quantale.kind(),
            "assertions": entries,
            "all_hold": all_hold,
        }))
    } else {
        lines
    };
    let code = if all_hold {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    };
    Ok((out, code))
}

fn cmd_transformer(
    doc: &Document,
    op: &str,
    name: &str,
    pred: &str,
    json_out: bool,
) -> Result<(String, ExitCode), String> {
    let result: Comonoid = if let Some(p) = doc.programs.get(name) {
        let env = doc.env.as_ref().expect("programs imply an environment");
        match op {
            "sp" => gcl::program_sp(p, pred, env),
            _ => gcl::program_wlp(p, pred, env),
        }
        .map_err(|e| format!("program `{name}`: {e}"))?
    } else if let Some(m) = doc.matrices.get(name) {
        let v = doc
            .predicates
            .get(pred)
            .ok_or_else(|| format!("unknown predicate `{pred}`"))?;
        match op {
            "sp" => flow::sp(m, v),
            _ => flow::wlp(m, v),
        }
        .map_err(|e| format!("matrix `{name}` with predicate `{pred}`: {e}"))?
    } else {
        return Err(format!("no program or matrix named `{name}`"));
    };
    let out = if json_out {
        json_line(&json!({
            "op": op,
            "name": name,
            "pred": pred,
            "result": render::pred_json(&result),
        }))
    } else {
        format!("{op}({name}, {pred}) = {}\n", render::pred_line(&result))
    };
    Ok((out, ExitCode::SUCCESS))
}

fn cmd_star(doc: &Document, name: &str, json_out: bool) -> Result<(String, ExitCode), String> {
    let m = doc
        .matrices
        .get(name)
        .ok_or_else(|| format!("unknown matrix `{name}`"))?;
    let star = closure(m, STAR_BUDGET)
        .map_err(|e| format!("matrix `{name}`: {e}"))?
        .into_mat();
    let title = format!("star({name})");
    let out = if json_out {
        json_line(&render::mat_json(&title, &star))
    } else {
        render::mat_block(&title, &star)
    };
    Ok((out, ExitCode::SUCCESS))
}

fn cmd_dump(doc: &Document, name: &str, json_out: bool) -> Result<(String, ExitCode), String> {
    let m = doc
        .matrices
        .get(name)
        .ok_or_else(|| format!("unknown matrix `{name}`"))?;
    let out = if json_out {
        json_line(&render::mat_json(name, m))
    } else {
        render::mat_block(name, m)
    };
    Ok((out, ExitCode::SUCCESS))
}

fn cmd_compile(doc: &Document, name: &str, json_out: bool) -> Result<(String, ExitCode), String> {
    let p = doc
        .programs
        .get(name)
        .ok_or_else(|| format!("unknown program `{name}`"))?;
    let env = doc.env.as_ref().expect("programs imply an environment");
    let m = gcl::compile(p, env).map_err(|e| format!("program `{name}`: {e}"))?;
    let out = if json_out {
        json_line(&render::mat_json(name, &m))
    } else {
        render::mat_block(name, &m)
    };
    Ok((out, ExitCode::SUCCESS))
}

fn json_line(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string(v).expect("JSON values serialize");
    s.push('\n');
    s
}
