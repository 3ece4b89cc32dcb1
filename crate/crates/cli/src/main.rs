use std::io::{Read, Write};
use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand};
use qtemp_cli::input::{InputDocument, Kind, Settings};
use qtemp_cli::report::{cmd_bipartite, cmd_temp};
use qtemp_cli::sweep::{parse_values, sweep_csv, Axis};
use qtemp_cli::verify::{parse_suites, run_suites};
use qtemp_cli::{CliError, ExitCode};
use qtemp_core::models::TwoQubitXYParams;
use qtemp_core::Clip;

/// Nonequilibrium temperatures of quantum states.
#[derive(Parser)]
#[command(name = "qtemp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Eigenvalue floor for matrix logarithms.
    #[arg(long)]
    clip: Option<f64>,
    /// Uniform validation tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Treat rank-deficient states as errors.
    #[arg(long)]
    strict: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Temperature of a single system (`kind: single`).
    Temp {
        /// Input document, `-` for stdin.
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Full bipartite report (`kind: bipartite` or `model`).
    Bipartite {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep one parameter of the two-qubit model and write CSV.
    Sweep {
        /// One of beta, lambda, omega_S, omega_B.
        #[arg(long)]
        axis: String,
        /// Comma-separated values.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        /// `kind: model` document with the base parameters.
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long = "omega-s", default_value_t = 2.0)]
        omega_s: f64,
        #[arg(long = "omega-b", default_value_t = 1.0)]
        omega_b: f64,
        #[arg(long, default_value_t = 0.1)]
        lambda: f64,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long)]
        clip: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an invariant suite: gibbs, passivity, basis-invariance,
    /// extension, relation, heat or all.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_input(path: &PathBuf) -> Result<InputDocument, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
    };
    InputDocument::parse(&text)
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Temp { input, common } => {
            let doc = read_input(&input)?;
            let settings = Settings::resolve(&doc.options, common.clip, common.tol, common.strict)?;
            emit(&cmd_temp(&doc, &settings)?.to_json(), common.out.as_ref())?;
        }
        Command::Bipartite { input, common } => {
            let doc = read_input(&input)?;
            let settings = Settings::resolve(&doc.options, common.clip, common.tol, common.strict)?;
            emit(&cmd_bipartite(&doc, &settings)?.to_json(), common.out.as_ref())?;
        }
        Command::Sweep { axis, values, model, omega_s, omega_b, lambda, beta, clip, out } => {
            let axis: Axis = axis.parse()?;
            let values = parse_values(&values)?;
            let (base, doc_clip) = match model {
                Some(path) => {
                    let doc = read_input(&path)?;
                    if doc.kind != Kind::Model {
                        return Err(CliError::Input("sweep --model needs a kind: model document".into()));
                    }
                    let p = doc.model_params.ok_or_else(|| CliError::Input("model input needs model_params".into()))?;
                    (p, doc.options.clip)
                }
                None => (TwoQubitXYParams { omega_s, omega_b, lambda, beta }, None),
            };
            let clip = match clip.or(doc_clip) {
                Some(c) => Clip::new(c)?,
                None => Clip::default(),
            };
            emit(&sweep_csv(&base, axis, &values, clip)?, out.as_ref())?;
        }
        Command::Verify { suite, seed, count, out } => {
            let suites = parse_suites(&suite)?;
            let (summary, ok) = run_suites(&suites, seed, count)?;
            emit(&summary, out.as_ref())?;
            if !ok {
                return Ok(ExitCode::Verification);
            }
        }
    }
    Ok(ExitCode::Ok)
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { ExitCode::Input as i32 } else { 0 };
            let _ = e.print();
            process::exit(code);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qtemp: {e}");
            e.exit_code()
        }
    };
    process::exit(code as i32);
}
