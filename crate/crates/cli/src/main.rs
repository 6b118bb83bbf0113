//! `pseudoalg`: build Lie pseudoalgebras and their modules from JSON and check them.
//!
//! Exit codes: 0 when every check passes, 1 on a mathematical failure,
//! 2 when the input cannot be read or is malformed.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pseudoalg::Error;

use commands::Outcome;

#[derive(Parser, Debug)]
#[command(name = "pseudoalg", version, about = "Exact checks for Lie pseudoalgebras over U(d)")]
struct Cli {
    /// Also write the report as JSON to this file.
    #[arg(long, global = true, value_name = "OUT")]
    json: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check structure constants, the traceform and the symplectic data of an algebra file.
    Validate {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Random Hopf-algebra identities in U(d'), reproducible from the seed.
    Hopf {
        #[arg(long)]
        algebra: PathBuf,
        /// Maximal PBW degree of the sampled elements.
        #[arg(long, default_value_t = 4)]
        degree: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Skew-symmetry and Jacobi identity of a pseudoalgebra.
    VerifyAlgebra {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        pseudo: PathBuf,
    },
    /// The module axiom for a tensor or twisted module.
    VerifyModule {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        pseudo: PathBuf,
        #[arg(long)]
        module: PathBuf,
    },
    /// Admissible twist parameters for a type H algebra over d ⊂ d'.
    AdmissibleT {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        pseudo: PathBuf,
    },
    /// Singular vectors and the kernel of a module up to PBW degree D.
    Singular {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        pseudo: PathBuf,
        #[arg(long)]
        module: PathBuf,
        #[arg(long, default_value_t = 2)]
        degree: i64,
    },
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("PSEUDOALG_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("PSEUDOALG_THREADS must be a positive integer, got {raw:?}"))?;
    if n == 0 {
        return Err("PSEUDOALG_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn dispatch(cmd: Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Validate { algebra } => commands::validate(&algebra),
        Command::Hopf {
            algebra,
            degree,
            seed,
            samples,
        } => commands::hopf(&algebra, degree, seed, samples),
        Command::VerifyAlgebra { algebra, pseudo } => commands::verify_algebra(&algebra, &pseudo),
        Command::VerifyModule {
            algebra,
            pseudo,
            module,
        } => commands::verify_module(&algebra, &pseudo, &module),
        Command::AdmissibleT { algebra, pseudo } => commands::admissible_t(&algebra, &pseudo),
        Command::Singular {
            algebra,
            pseudo,
            module,
            degree,
        } => commands::singular(&algebra, &pseudo, &module, degree),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let outcome = match dispatch(cli.command) {
        Ok(o) => o,
        Err(e) => Outcome::from_error(&e),
    };
    print!("{}", outcome.text);
    if let Some(path) = &cli.json {
        let body = serde_json::to_string_pretty(&outcome.json).expect("reports serialize");
        if let Err(e) = std::fs::write(path, body + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(outcome.code)
}
