use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use debate_lab::scenario::{
    builtin, list_scenarios, run_scenario, write_csv, write_jsonl, OutputFormat,
};
use debate_lab::Error;

#[derive(Parser)]
#[command(name = "debate-lab", version, about = "Exact feature-debate experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a builtin scenario or a JSON config and emit its result table.
    Run {
        /// Builtin scenario name (see `debate-lab list`).
        #[arg(long)]
        scenario: Option<String>,
        /// Path to a scenario config JSON file; overrides the builtin.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; the config's `out` field, then stdout, when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format; defaults to the config's `format` field, then CSV.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// List the builtin scenarios.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn run() -> Result<(), Error> {
    match Cli::parse().command {
        Command::List => {
            for (name, description) in list_scenarios() {
                println!("{name:<20} {description}");
            }
            Ok(())
        }
        Command::Run {
            scenario,
            config,
            seed,
            out,
            format,
        } => {
            let mut cfg = match (&scenario, &config) {
                (_, Some(path)) => {
                    let text = fs::read_to_string(path)
                        .map_err(|e| Error::config(path.display().to_string(), e.to_string()))?;
                    serde_json::from_str(&text)
                        .map_err(|e| Error::config(path.display().to_string(), e.to_string()))?
                }
                (Some(name), None) => builtin(name)?,
                (None, None) => {
                    return Err(Error::config(
                        "run",
                        "pass --scenario <name> and/or --config <path>",
                    ))
                }
            };
            if let Some(name) = scenario {
                cfg.name = name;
            }
            let format = format.unwrap_or(match cfg.format {
                Some(OutputFormat::Jsonl) => Format::Jsonl,
                Some(OutputFormat::Csv) | None => Format::Csv,
            });
            let out = out.or_else(|| cfg.out.as_ref().map(PathBuf::from));
            let rows = run_scenario(&cfg, seed)?;
            let mut buffer = Vec::new();
            match format {
                Format::Csv => write_csv(&rows, &mut buffer),
                Format::Jsonl => write_jsonl(&rows, &mut buffer),
            }
            .map_err(|e| Error::config("output", e.to_string()))?;
            match out {
                Some(path) => fs::write(&path, buffer)
                    .map_err(|e| Error::config(path.display().to_string(), e.to_string()))?,
                None => std::io::stdout()
                    .write_all(&buffer)
                    .map_err(|e| Error::config("stdout", e.to_string()))?,
            }
            Ok(())
        }
    }
}
