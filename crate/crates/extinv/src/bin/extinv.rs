//! Command-line front end.
//!
//! Exit codes: 0 when every asserted flag passes, 1 when a check fails,
//! 2 on usage or input errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use extinv::pipeline::Method;
use extinv::runner::{run, Command};

#[derive(Parser)]
#[command(
    name = "extinv",
    about = "Generating invariants of finite matrix groups on exterior and skew polynomial algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Direct,
    Arrangement,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Direct => Method::Direct,
            MethodArg::Arrangement => Method::Arrangement,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write the machine-readable report as JSON to this path
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Enumerate the group and summarize it
    Group {
        problem: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute generating invariants and the degree bound beta
    Invariants {
        problem: PathBuf,
        /// Generator computation to run
        #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
        method: MethodArg,
        /// Degree cap override for the capped rules
        #[arg(long, value_name = "N")]
        cap: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Dimension series of the invariant ring, cross-checked degreewise
    Molien {
        problem: PathBuf,
        #[arg(long, value_name = "N")]
        cap: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the Noether degree bound beta <= |G|
    Noether {
        problem: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
        method: MethodArg,
        #[arg(long, value_name = "N")]
        cap: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Degreewise check of the elimination identity behind the bound
    Gansub {
        problem: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Minimal generators of the intersection ideal of an arrangement,
    /// or a seeded random battery with --random
    Arrangement {
        problem: Option<PathBuf>,
        /// Run the seeded random-arrangement battery instead of a file
        #[arg(long)]
        random: bool,
        /// Seed for --random
        #[arg(long, value_name = "N", default_value_t = 2024)]
        seed: u64,
        /// Number of trials for --random
        #[arg(long, value_name = "N", default_value_t = 20)]
        trials: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare symmetric and exterior degree bounds over copies of the
    /// group's space
    Transfer {
        problem: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the built-in worked examples and check their expected outputs
    Examples {
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, output) = match cli.command {
        CliCommand::Group { problem, output } => (Command::Group { problem }, output),
        CliCommand::Invariants { problem, method, cap, output } => (
            Command::Invariants { problem, method: method.into(), cap },
            output,
        ),
        CliCommand::Molien { problem, cap, output } => (Command::Molien { problem, cap }, output),
        CliCommand::Noether { problem, method, cap, output } => (
            Command::Noether { problem, method: method.into(), cap },
            output,
        ),
        CliCommand::Gansub { problem, output } => (Command::Gansub { problem }, output),
        CliCommand::Arrangement { problem, random, seed, trials, output } => {
            let command = if random {
                Command::ArrangementBattery { seed, trials }
            } else {
                match problem {
                    Some(problem) => Command::Arrangement { problem },
                    None => {
                        eprintln!("error: `arrangement` needs a problem file or --random");
                        return ExitCode::from(2);
                    }
                }
            };
            (command, output)
        }
        CliCommand::Transfer { problem, output } => (Command::Transfer { problem }, output),
        CliCommand::Examples { output } => (Command::Examples, output),
    };

    let started = Instant::now();
    let report = match run(&command) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let elapsed = started.elapsed();

    print!("{}", report.human());
    println!("  elapsed: {elapsed:.2?}");

    if let Some(path) = output.json {
        if let Err(e) = std::fs::write(&path, report.to_json()) {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }

    if report.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
