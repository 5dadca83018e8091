//! Argument definitions and command execution for the `orbibracket` binary.
//!
//! Every command returns its full output as a string together with an exit
//! status, so the binary only prints and exits.

use std::fs;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orbibracket::cyclic_words::{parse_word, OrbifoldSignature, WordError};
use orbibracket::goldman::goldman_bracket;
use orbibracket::graded_bv::{
    check_antisymmetry, check_bv_identity, check_jacobi, check_leibniz, load_bv_json, load_gysin_json, LoadError,
};
use orbibracket::hochschild::{second_order_identity, verify_chain_identities, SmallAlgebra};
use orbibracket::report::IdentityReport;
use orbibracket::sphere::{verify_grading, verify_sphere_jacobi};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IDENTITY_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "orbibracket", version, about = "Goldman brackets on orbifold disks and string-bracket identity checks")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Goldman bracket {alpha, beta} of two free loops.
    Bracket {
        /// Cone point orders, e.g. `3,4`.
        #[arg(long)]
        orders: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },
    /// Canonical representative of a conjugacy class.
    Normalize {
        #[arg(long)]
        orders: String,
        #[arg(long)]
        word: String,
    },
    /// Jacobi and grading checks for the sphere example.
    SphereCheck {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 4)]
        bound: u32,
    },
    /// Identity checks for a BV algebra or Gysin sequence stored as JSON.
    BvCheck {
        /// Path to a description with `"kind": "bv"` or `"kind": "gysin"`.
        file: PathBuf,
    },
    /// Chain-level identities for normalized Hochschild chains.
    HochschildCheck {
        #[arg(long, value_enum)]
        algebra: AlgebraName,
        #[arg(long, default_value_t = 3)]
        truncation: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraName {
    Ground,
    Dual,
    Z2,
}

impl AlgebraName {
    fn algebra(self) -> SmallAlgebra {
        match self {
            AlgebraName::Ground => SmallAlgebra::ground_field(),
            AlgebraName::Dual => SmallAlgebra::dual_numbers(),
            AlgebraName::Z2 => SmallAlgebra::z2(),
        }
    }
}

/// Text written to stdout and the process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

fn parse_orders(s: &str) -> anyhow::Result<OrbifoldSignature> {
    s.parse::<OrbifoldSignature>().map_err(anyhow::Error::from)
}

fn parse_in(word: &str, sig: &OrbifoldSignature, flag: &str) -> anyhow::Result<orbibracket::cyclic_words::CyclicWord> {
    parse_word(word, sig).with_context(|| format!("--{flag}"))
}

/// Runs one command. `Err` means bad input (exit code 2).
pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Bracket { orders, alpha, beta } => {
            let sig = parse_orders(orders)?;
            let a = parse_in(alpha, &sig, "alpha")?;
            let b = parse_in(beta, &sig, "beta")?;
            let br = goldman_bracket(&a, &b, &sig)?;
            let stdout = if cli.json { br.to_json().to_string() } else { br.to_string() };
            Ok(Outcome { stdout, code: EXIT_OK })
        }
        Command::Normalize { orders, word } => {
            let sig = parse_orders(orders)?;
            let w = parse_in(word, &sig, "word")?;
            let shown = w.display_for_rank(sig.rank());
            let stdout = if cli.json {
                json!({ "schema": 1, "orders": sig.orders(), "word": shown }).to_string()
            } else {
                shown
            };
            Ok(Outcome { stdout, code: EXIT_OK })
        }
        Command::SphereCheck { n, bound } => {
            if *n == 0 {
                anyhow::bail!("--n must be positive");
            }
            let reports = vec![verify_sphere_jacobi(*bound, *n), verify_grading(*bound, *n)];
            Ok(reports_outcome("sphere-check", reports, Vec::new(), cli.json))
        }
        Command::BvCheck { file } => {
            let text = fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
            Ok(reports_outcome("bv-check", bv_reports(&text)?, Vec::new(), cli.json))
        }
        Command::HochschildCheck { algebra, truncation } => {
            if *truncation == 0 {
                anyhow::bail!("--truncation must be positive");
            }
            let alg = algebra.algebra();
            let reports = verify_chain_identities(&alg, *truncation);
            let notes = vec![second_order_identity(&alg, *truncation)];
            Ok(reports_outcome("hochschild-check", reports, notes, cli.json))
        }
    }
}

/// Checks for a JSON description of either kind.
pub fn bv_reports(text: &str) -> Result<Vec<IdentityReport>, LoadError> {
    let v: Value = serde_json::from_str(text).map_err(|e| LoadError::Syntax(e.to_string()))?;
    match v.get("kind").and_then(Value::as_str) {
        Some("gysin") => {
            let g = load_gysin_json(text)?;
            let mut reports = algebra_reports(g.bv());
            reports.extend([g.check_square_zero(), g.check_antisymmetry(), g.check_jacobi(), g.verify_t_lie_morphism()]);
            Ok(reports)
        }
        _ => Ok(algebra_reports(&load_bv_json(text)?)),
    }
}

fn algebra_reports(a: &orbibracket::graded_bv::GradedBVData) -> Vec<IdentityReport> {
    let bv = check_bv_identity(a);
    let mut reports = vec![check_leibniz(a)];
    // The bracket axioms are consequences of the identity, so they are only
    // meaningful once it holds.
    if bv.passed() {
        reports.extend([check_antisymmetry(a), check_jacobi(a)]);
    }
    reports.insert(0, bv);
    reports
}

/// `notes` are printed but do not affect the exit status.
fn reports_outcome(command: &str, reports: Vec<IdentityReport>, notes: Vec<IdentityReport>, as_json: bool) -> Outcome {
    let passed = reports.iter().all(IdentityReport::passed);
    let stdout = if as_json {
        json!({
            "schema": 1,
            "command": command,
            "passed": passed,
            "reports": reports.iter().map(IdentityReport::to_json).collect::<Vec<_>>(),
            "notes": notes.iter().map(IdentityReport::to_json).collect::<Vec<_>>(),
        })
        .to_string()
    } else {
        let lines = reports.iter().map(ToString::to_string).chain(notes.iter().map(|r| format!("note: {r}")));
        lines.collect::<Vec<_>>().join("\n")
    };
    Outcome { stdout, code: if passed { EXIT_OK } else { EXIT_IDENTITY_FAILED } }
}

/// Formats an input error for stderr, adding a caret line under parse errors.
pub fn describe_error(err: &anyhow::Error) -> String {
    let mut out = format!("error: {err:#}");
    if let Some(WordError::Parse { input, position, .. }) = err.downcast_ref::<WordError>() {
        let col = input.char_indices().take_while(|(i, _)| i < position).count();
        out.push_str(&format!("\n  {input}\n  {}^", " ".repeat(col)));
    }
    out
}
