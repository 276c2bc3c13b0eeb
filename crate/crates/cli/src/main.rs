mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use toric_core::cone::{split_degenerate, Cone};
use toric_core::divisors::ToricData;
use toric_core::luna::{check_strongly_stable, luna_strata};
use toric_core::roots::{connection_graph, default_box_bound, enumerate_roots};
use toric_core::strata::{stratify, StrataError, StratifyOptions, DEFAULT_COEFF_BOUND};

use input::{read_cone, read_weights, InputError};

#[derive(Parser)]
#[command(name = "toric-strata", version, about = "Orbit stratification of affine toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Box bound for root and connection searches (default: 10 * max |ray coordinate|).
    #[arg(long, global = true)]
    bound: Option<u64>,
    /// Coefficient bound for semigroup membership searches.
    #[arg(long, global = true, default_value_t = DEFAULT_COEFF_BOUND)]
    coeff_bound: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Exit with status 2 when any finding stays unresolved.
    #[arg(long, global = true)]
    strict: bool,
    /// Divide non-primitive rays by their content instead of rejecting them.
    #[arg(long, global = true)]
    normalize: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Strata of the cone, cross-checked three ways.
    Stratify { path: PathBuf },
    /// Demazure roots inside the search box.
    Roots { path: PathBuf },
    /// Connection verdicts for adjacent faces.
    Connections { path: PathBuf },
    /// Luna strata of a weight system.
    Luna { path: PathBuf },
    /// Strong stability of a weight system.
    Stable { path: PathBuf },
    /// Class group, divisor classes and per-face subgroups.
    Classgroup { path: PathBuf },
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal consistency failure (please report): {msg}");
            ExitCode::from(1)
        }
    }
}

fn emit(cli: &Cli, text: String, json: serde_json::Value) {
    match cli.format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&json).expect("serializable")),
    }
}

fn load_cone(cli: &Cli, path: &PathBuf) -> Result<Cone, Failure> {
    let (rank, rays, normalize) = read_cone(path)?;
    Cone::new(rank, rays, normalize || cli.normalize)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    match &cli.command {
        Command::Stratify { path } => {
            let (rank, rays, normalize) = read_cone(path)?;
            let options = StratifyOptions {
                box_bound: cli.bound,
                coeff_bound: cli.coeff_bound,
                strict: cli.strict,
                normalize: normalize || cli.normalize,
            };
            let (report, code) = match stratify(rank, rays, &options) {
                Ok(r) => (r, ExitCode::SUCCESS),
                Err(StrataError::Unresolved(r)) => (*r, ExitCode::from(2)),
                Err(StrataError::Cone(e)) => return Err(Failure::Input(format!("{}: {e}", path.display()))),
                Err(e) => return Err(Failure::Internal(e.to_string())),
            };
            match cli.format {
                Format::Text => print!("{}", render::stratification(&report)),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializable")),
            }
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            Ok(code)
        }
        Command::Roots { path } => {
            let cone = load_cone(cli, path)?;
            let bound = cli.bound.unwrap_or_else(|| default_box_bound(&cone));
            let roots = enumerate_roots(&cone, bound).map_err(|e| Failure::Input(e.to_string()))?;
            emit(cli, render::roots(&cone, &roots, bound), render::roots_json(&roots, bound));
            Ok(ExitCode::SUCCESS)
        }
        Command::Connections { path } => {
            let cone = load_cone(cli, path)?;
            let bound = cli.bound.unwrap_or_else(|| default_box_bound(&cone));
            if bound == 0 {
                return Err(Failure::Input("--bound must be at least 1".into()));
            }
            let graph = connection_graph(&cone, bound);
            emit(cli, render::connections(&graph, bound), render::connections_json(&graph, bound));
            Ok(if cli.strict && !graph.all_conclusive() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Luna { path } => {
            let w = read_weights(path)?;
            let strata = luna_strata(&w).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let stability = check_strongly_stable(&w);
            emit(
                cli,
                render::luna(&w, &strata, &stability),
                render::luna_json(&w, &strata, &stability),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Stable { path } => {
            let w = read_weights(path)?;
            let stability = check_strongly_stable(&w);
            emit(cli, render::stability(&stability), render::stability_json(&stability));
            Ok(ExitCode::SUCCESS)
        }
        Command::Classgroup { path } => {
            let (rank, rays, normalize) = read_cone(path)?;
            let split = split_degenerate(rank, rays, normalize || cli.normalize)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let t = ToricData::new(split.cone.clone());
            emit(
                cli,
                render::class_group(&t, split.torus_rank),
                render::class_group_json(&t, split.torus_rank),
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}
