//! `miuct` binary: exit 0 on success, 1 on runtime failure, 2 on usage
//! errors (the parser's own exit code).

mod args;

use std::process::ExitCode;

use anyhow::Result;
use clap::Parser;

use args::{Cli, Command};
use miuct_core::harness::{emit_match, run_match};
use miuct_core::testbed::{emit_curves, run_testbed};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Bandit(args) => {
            let config = args.to_config()?;
            let curves = run_testbed(&config)?;
            let named: Vec<(&str, &miuct_core::RegretCurve)> = config
                .policies
                .iter()
                .zip(&curves)
                .map(|(p, c)| (p.variant_name(), c))
                .collect();
            emit_curves(&named, &args.out)?;
            for (name, curve) in &named {
                let last = curve.cum_regret.len() - 1;
                println!(
                    "{name}: final cum_regret {:.3}, optimal {:.1}%",
                    curve.cum_regret[last], curve.optimal_pct[last]
                );
            }
            println!("wrote {}", args.out.display());
            Ok(())
        }
        Command::Match(args) => {
            let config = args.to_config()?;
            let (records, summary) = run_match(&config)?;
            emit_match(&records, &summary, &args.out)?;
            println!(
                "{} vs {} on {}: win_rate_a={:.4} n={} wilson95=[{:.4},{:.4}]",
                config.engine_a.describe(),
                config.engine_b.describe(),
                config.game.name(),
                summary.win_rate_a,
                summary.games,
                summary.wilson_low,
                summary.wilson_high
            );
            println!("wrote {}", args.out.display());
            Ok(())
        }
    }
}
