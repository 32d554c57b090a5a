use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use conheap_core::frontend::{run_command, Command, Format, Options};
use conheap_core::propositions::DEFAULT_SAMPLES;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Human,
    Machine,
}

/// Exact checks of connection heaps and trusses on model files.
///
/// Commands: check-algebroid, torsion, curvature, heap, group, levi-civita,
/// torsion-equiv, autoparallel, endo-apply, verify, laws.
#[derive(Debug, Parser)]
#[command(name = "conheap", version)]
struct Cli {
    /// The command to run.
    command: String,
    /// Model file; not needed for `laws`.
    model: Option<PathBuf>,
    /// Connection to use, in order; repeatable. Defaults to all declared.
    #[arg(long = "connection", value_name = "NAME")]
    connections: Vec<String>,
    #[arg(long, value_name = "NAME")]
    metric: Option<String>,
    #[arg(long, value_name = "NAME")]
    endo: Option<String>,
    #[arg(long, value_name = "NAME")]
    section: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random instances per check.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, value_enum, default_value = "human")]
    format: FormatArg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command: Command = match cli.command.parse() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let opts = Options {
        connections: cli.connections,
        metric: cli.metric,
        endo: cli.endo,
        section: cli.section,
        seed: cli.seed,
        samples: cli.samples,
    };
    let format = match cli.format {
        FormatArg::Human => Format::Human,
        FormatArg::Machine => Format::Machine,
    };
    match run_command(command, cli.model.as_deref(), &opts) {
        Ok(report) => {
            print!("{}", report.render(format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
