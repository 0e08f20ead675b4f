use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use slnrectify_cli::{cmd_apply, cmd_equiv, cmd_lift3, cmd_rectify, cmd_verify, cmd_verify_cert, Outcome, RunConfig, EXIT_PARSE};

/// Certified rectification of polynomial embeddings of the line into SL_n.
#[derive(Parser)]
#[command(name = "slnrectify", version)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Opts {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 64)]
    max_trials: usize,
    #[arg(long, global = true, default_value_t = 24)]
    max_degree: u32,
    #[arg(long, global = true, default_value_t = 1_000_000)]
    groebner_budget: u64,
    /// Write the output document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether a curve is a closed embedding.
    Verify { curve: PathBuf },
    /// Rectify a curve to E_n1(t) and write the certificate.
    Rectify { curve: PathBuf },
    /// Write a word carrying the first curve to the second.
    Equiv { f: PathBuf, g: PathBuf },
    /// Apply a word to a curve.
    Apply { word: PathBuf, curve: PathBuf },
    /// Replay a certificate and recheck every recorded fact.
    VerifyCert { certificate: PathBuf },
    /// Lift a curve in C^3 to SL_2.
    Lift3 {
        triple: PathBuf,
        /// Try a tame normalization when g2 does not divide g1*g3 - 1.
        #[arg(long)]
        normalize: bool,
    },
}

fn read(path: &Path) -> Result<String, Outcome> {
    fs::read_to_string(path).map_err(|e| Outcome {
        code: EXIT_PARSE,
        artifact: None,
        secondary: None,
        report: format!("{}: {e}", path.display()),
    })
}

fn run(cli: &Cli) -> Result<Outcome, Outcome> {
    let o = &cli.opts;
    let cfg = RunConfig {
        seed: o.seed,
        max_trials: o.max_trials,
        max_degree: o.max_degree,
        groebner_budget: o.groebner_budget,
    };
    cfg.validate().map_err(|msg| Outcome {
        code: EXIT_PARSE,
        artifact: None,
        secondary: None,
        report: msg,
    })?;
    Ok(match &cli.cmd {
        Command::Verify { curve } => cmd_verify(&read(curve)?, &cfg),
        Command::Rectify { curve } => cmd_rectify(&read(curve)?, &cfg),
        Command::Equiv { f, g } => cmd_equiv(&read(f)?, &read(g)?, &cfg),
        Command::Apply { word, curve } => cmd_apply(&read(word)?, &read(curve)?),
        Command::VerifyCert { certificate } => cmd_verify_cert(&read(certificate)?, &cfg),
        Command::Lift3 { triple, normalize } => cmd_lift3(&read(triple)?, &cfg, *normalize),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).unwrap_or_else(|o| o);
    match (&outcome.artifact, &cli.opts.out) {
        (Some(doc), Some(path)) => {
            if let Err(e) = fs::write(path, doc) {
                eprintln!("{}: {e}", path.display());
                return ExitCode::from(EXIT_PARSE as u8);
            }
            if let Some(extra) = &outcome.secondary {
                let tame = path.with_extension("tame");
                if let Err(e) = fs::write(&tame, extra) {
                    eprintln!("{}: {e}", tame.display());
                    return ExitCode::from(EXIT_PARSE as u8);
                }
            }
            println!("{}", outcome.report);
        }
        (Some(doc), None) => {
            print!("{doc}");
            eprintln!("{}", outcome.report);
            if let Some(extra) = &outcome.secondary {
                eprint!("{extra}");
            }
        }
        (None, _) if outcome.code == 0 => println!("{}", outcome.report),
        (None, _) => eprintln!("{}", outcome.report),
    }
    ExitCode::from(outcome.code as u8)
}
