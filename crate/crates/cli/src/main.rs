use std::path::PathBuf;
use std::process::ExitCode;

use bjorling_cli::checks::{Suite, Tolerances};
use bjorling_cli::commands;
use bjorling_cli::CliError;
use clap::{Parser, Subcommand, ValueEnum};

/// Minimal surfaces from Bjorling data: meshes, Weierstrass reports and checks.
#[derive(Parser)]
#[command(name = "bjorling", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the surface of a JSON job and write an OBJ mesh and a JSON report.
    Generate {
        #[arg(long)]
        config: PathBuf,
        /// Directory for outputs given by relative paths.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the Weierstrass and regularity report of a job.
    Analyze {
        #[arg(long)]
        config: PathBuf,
    },
    /// List the built-in examples, or run one by name.
    Examples {
        #[arg(default_value = "list")]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance checks.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::Fast)]
        suite: SuiteArg,
        /// Replace every tolerance with this value.
        #[arg(long)]
        tol_override: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Fast,
    Full,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate { config, out } => {
            let w = commands::generate(&config, out.as_deref())?;
            println!("wrote {} and {}", w.mesh.display(), w.report.display());
        }
        Command::Analyze { config } => print!("{}", commands::analyze_config(&config)?),
        Command::Examples { name, out } if name == "list" => {
            let _ = out;
            print!("{}", commands::list_examples());
        }
        Command::Examples { name, out } => {
            let w = commands::run_example(&name, out.as_deref())?;
            if let Some(l) = w.lambda {
                println!("lambda = {l:.17}");
            }
            println!("wrote {} and {}", w.mesh.display(), w.report.display());
        }
        Command::Verify { suite, tol_override } => {
            let suite = match suite {
                SuiteArg::Fast => Suite::Fast,
                SuiteArg::Full => Suite::Full,
            };
            let tol = tol_override.map(Tolerances::uniform).unwrap_or_default();
            let (checks, text) = commands::verify(suite, &tol);
            print!("{text}");
            let failed = checks.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                return Err(CliError::ChecksFailed(failed));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bjorling: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
