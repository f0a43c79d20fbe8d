use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use nhqubit_cli::{compare, config, init_threads, presets, run, thread_count, CliError, Scenario, THREADS_VAR};

#[derive(Parser)]
#[command(name = "nhqubit", version, about = "PT and Anti-PT qubit dephasing scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write CSV files plus manifest.json.
    Run {
        /// Scenario file. May be omitted when --preset is given.
        config: Option<PathBuf>,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Built-in preset applied beneath the config file.
        #[arg(long)]
        preset: Option<String>,
    },
    /// List built-in presets.
    ListPresets,
    /// Compare the decoherence of two single-variant scenarios.
    Compare { a: PathBuf, b: PathBuf },
}

fn read(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    config::load(&text, &path.display().to_string(), None)
}

fn execute(cli: Cli) -> Result<(), CliError> {
    init_threads(thread_count(std::env::var(THREADS_VAR).ok().as_deref())?);
    match cli.command {
        Command::Run { config: path, out, preset } => {
            let scenario = match (&path, preset.as_deref()) {
                (None, None) => return Err(CliError::Config("give a config file, --preset, or both".into())),
                (None, Some(p)) => config::load("", "<none>", Some(p))?,
                (Some(path), p) => {
                    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                    config::load(&text, &path.display().to_string(), p)?
                }
            };
            let bundle = run(&scenario)?;
            bundle.write(&out)?;
            let mut names: Vec<&str> = bundle.files.iter().map(|(n, _)| n.as_str()).collect();
            names.push("manifest.json");
            println!("{}: wrote {} to {}", scenario.name, names.join(", "), out.display());
        }
        Command::ListPresets => {
            for p in presets::PRESETS {
                println!("{}\t{}\t{}", p.name, p.description, presets::summary(p)?);
            }
        }
        Command::Compare { a, b } => {
            print!("{}", compare(&read(&a)?, &read(&b)?)?.render());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nhqubit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
