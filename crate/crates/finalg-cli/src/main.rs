use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use finalg::analysis::GenMode;
use finalg::budget::{Budget, DEFAULT_BUDGET};
use finalg_cli::run::{run, Command as RunCommand};
use finalg_cli::{parse_definition, resolve};

/// Verify and analyze finite set/semigroup/group linear structures declared
/// in definition files.
#[derive(Parser)]
#[command(name = "finalg", version, disable_help_subcommand = true)]
struct Cli {
    /// Definition file with structure/map/fuzzy/multi blocks.
    #[arg(long, global = true)]
    defs: Option<String>,
    /// Output format.
    #[arg(long, global = true, default_value = "text", value_parser = ["text", "structured"])]
    format: String,
    /// Work budget in elementary checks (env: FINALG_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Verify a structure, map, fuzzy overlay or multi structure by name.
    Verify { name: String },
    /// Minimum generating set and dimension (n-dimension for multis).
    Dim {
        name: String,
        #[arg(long, value_parser = ["single_step", "iterated"])]
        mode: Option<String>,
    },
    /// Span of a set and whether it generates.
    Span {
        name: String,
        #[arg(long)]
        set: String,
        #[arg(long, value_parser = ["single_step", "iterated"])]
        mode: Option<String>,
    },
    /// Linear independence of a set.
    Independent {
        name: String,
        #[arg(long)]
        set: String,
    },
    /// Substructure check, optionally with subscalars, a target family and
    /// full classification.
    Sub {
        name: String,
        #[arg(long)]
        set: String,
        #[arg(long)]
        scalars: Option<String>,
        #[arg(long = "as")]
        as_family: Option<String>,
        #[arg(long)]
        classify: bool,
    },
    /// Direct-sum / union decomposition check; parts separated by ';'.
    Decompose {
        name: String,
        #[arg(long)]
        parts: String,
        #[arg(long, value_parser = ["direct_sum", "pseudo_direct_sum", "direct_union", "pseudo_direct_union"])]
        mode: String,
    },
    /// Simplicity verdicts.
    Simple {
        name: String,
        #[arg(long, default_value = "simple", value_parser = ["simple", "pseudo_simple", "strongly_simple"])]
        kind: String,
    },
    /// Enumerate all linear maps between two structures.
    Homs { source: String, target: String },
    /// Projection check of an operator onto a subset.
    Project {
        map: String,
        #[arg(long)]
        onto: String,
    },
}

fn gen_mode(s: Option<String>) -> Option<GenMode> {
    s.map(|m| match m.as_str() {
        "single_step" => GenMode::SingleStep,
        _ => GenMode::Iterated,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        CliCommand::Verify { name } => RunCommand::Verify { name },
        CliCommand::Dim { name, mode } => RunCommand::Dim { name, mode: gen_mode(mode) },
        CliCommand::Span { name, set, mode } => {
            RunCommand::Span { name, set, mode: gen_mode(mode) }
        }
        CliCommand::Independent { name, set } => RunCommand::Independent { name, set },
        CliCommand::Sub { name, set, scalars, as_family, classify } => {
            RunCommand::Sub { name, set, scalars, as_family, classify }
        }
        CliCommand::Decompose { name, parts, mode } => {
            RunCommand::Decompose { name, parts, mode }
        }
        CliCommand::Simple { name, kind } => RunCommand::Simple { name, kind },
        CliCommand::Homs { source, target } => RunCommand::Homs { source, target },
        CliCommand::Project { map, onto } => RunCommand::Project { map, onto },
    };

    let Some(defs_path) = cli.defs else {
        eprintln!("error: --defs FILE is required");
        return ExitCode::from(2);
    };
    let source = match fs::read_to_string(&defs_path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {defs_path}: {e}");
            return ExitCode::from(2);
        }
    };
    let file = match parse_definition(&source) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let registry = match resolve(&file) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let limit = cli
        .budget
        .or_else(|| {
            std::env::var("FINALG_BUDGET").ok().and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_BUDGET);
    let budget = Budget::new(limit);
    match run(&command, &registry, &budget) {
        Ok(report) => {
            let text = match cli.format.as_str() {
                "structured" => report.emit_structured(),
                _ => report.emit_text(),
            };
            print!("{text}");
            ExitCode::from(u8::try_from(report.exit).unwrap_or(1))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
