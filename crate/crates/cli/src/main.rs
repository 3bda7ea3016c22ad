//! `fastpd` command-line front end.
//!
//! Exit codes: 0 on success, 2 for invalid input, 3 when augmentation is
//! refused by the partition-list budget.

mod args;
mod commands;
mod inputs;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn exit_code(err: &anyhow::Error) -> u8 {
    let budget = err.chain().any(|e| {
        matches!(
            e.downcast_ref::<fastpd::Error>(),
            Some(fastpd::Error::BudgetExceeded { .. })
        )
    });
    if budget {
        3
    } else {
        2
    }
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()?;
    }
    match &cli.command {
        Command::Decompose(a) => commands::decompose_cmd(a),
        Command::Shap(a) => commands::shap_cmd(a),
        Command::Pdplot(a) => commands::pdplot_cmd(a),
        Command::Bench(a) => commands::bench_cmd(a),
        Command::Augment(a) => commands::augment_cmd(a),
        Command::Generate(a) => commands::generate_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
