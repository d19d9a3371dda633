// SPDX-License-Identifier: Apache-2.0

//! Scans, verification suites and reports over the `ckit-core` library.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use commands::Family;
use config::{parse_list, ScanConfig};
use output::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
    #[error("precision: {0}")]
    Precision(String),
    #[error("internal: {0}")]
    Internal(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Precision(_) | CliError::Internal(_) => 3,
        }
    }
}

impl From<ckit_core::Error> for CliError {
    fn from(e: ckit_core::Error) -> Self {
        use ckit_core::Error::*;
        match e {
            PrecisionExhausted { .. } | RoundingUnstable { .. } | AmbiguousRootNumber { .. } | PeriodMismatch { .. } => {
                CliError::Precision(e.to_string())
            }
            Internal(_) => CliError::Internal(e.to_string()),
            NotRankZero { .. } => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ckit", version, about = "Congruent-number and twist-family toolkit")]
pub struct Cli {
    /// Worker threads (overrides CKIT_THREADS).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct OutputArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Summary baseline: written when absent, enforced when present.
    #[arg(long)]
    pub baseline: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tunnell counts for square-free n ≤ max.
    TunnellScan {
        #[arg(long)]
        max: u64,
        /// Residues mod 8, comma-separated.
        #[arg(long, default_value = "0,1,2,3,4,5,6,7")]
        classes: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// L(E, 1), root number, period and analytic Sha of one twist.
    Lvalue {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sign: i64,
        #[arg(long, default_value_t = ckit_core::lfunc::series::DEFAULT_DIGITS)]
        digits: u32,
    },
    /// The 2-Selmer group of one twist.
    Selmer {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sign: i64,
        /// Use the Rédei-matrix system (tiling family, n coprime to 6).
        #[arg(long)]
        fastpath: bool,
    },
    /// Class group data of ℚ(√−n).
    Classgroup {
        #[arg(long)]
        n: i64,
    },
    /// Genus, Selmer and analytic-Sha criteria on the tiling family, n ≡ 3, 7 (mod 24).
    Flpt {
        #[arg(long)]
        max: u64,
        /// Largest n at which analytic Sha is evaluated.
        #[arg(long, default_value_t = 300)]
        analytic_max: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: verify::Suite,
        /// Override the suite's default range.
        #[arg(long)]
        max: Option<u64>,
    },
    /// Selmer distribution constants C(p, d).
    Constants {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 40)]
        dmax: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Empirical Selmer-rank distribution beside the limiting constants.
    SelmerDist {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        max: u64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sign: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn with_output(mut cfg: ScanConfig, o: OutputArgs, threads: Option<usize>) -> ScanConfig {
    cfg.out = o.out;
    cfg.format = o.format;
    cfg.baseline = o.baseline;
    cfg.threads = threads;
    cfg
}

fn check_sign(sign: i64) -> Result<(), CliError> {
    if sign == 1 || sign == -1 {
        Ok(())
    } else {
        Err(CliError::Usage("--sign must be 1 or -1".into()))
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    config::init_threads(cli.threads)?;
    let threads = cli.threads;
    match cli.command {
        Command::TunnellScan { max, classes, output } => {
            let cfg = ScanConfig::new(max, vec![(8, parse_list(&classes)?)])?;
            commands::cmd_tunnell_scan(&with_output(cfg, output, threads))
        }
        Command::Lvalue { family, n, sign, digits } => {
            check_sign(sign)?;
            commands::cmd_lvalue(family, n, sign, digits)
        }
        Command::Selmer { family, n, sign, fastpath } => {
            check_sign(sign)?;
            commands::cmd_selmer(family, n, sign, fastpath)
        }
        Command::Classgroup { n } => commands::cmd_classgroup(n),
        Command::Flpt { max, analytic_max, output } => {
            let cfg = ScanConfig::new(max, vec![(24, vec![3, 7])])?;
            commands::cmd_flpt(&with_output(cfg, output, threads), analytic_max)
        }
        Command::Verify { suite, max } => {
            let checks = verify::run(suite, max)?;
            for c in &checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            match checks.iter().find(|c| !c.passed) {
                Some(c) => Err(CliError::Failure(format!("{}: {}", c.name, c.detail))),
                None => Ok(()),
            }
        }
        Command::Constants { p, dmax, output } => {
            let cfg = ScanConfig::new(1, vec![])?;
            commands::cmd_constants(p, dmax, &with_output(cfg, output, threads))
        }
        Command::SelmerDist { family, max, sign, output } => {
            check_sign(sign)?;
            let cfg = ScanConfig::new(max, vec![])?;
            commands::cmd_selmer_dist(family, sign, &with_output(cfg, output, threads))
        }
    }
}
