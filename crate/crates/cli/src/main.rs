mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hrep_core::io::{builtin_group, load_group_file, InputError};
use hrep_core::FiniteGroup;

use crate::commands::{Failure, Output};

/// Heisenberg representations, transfers and induced determinants of finite
/// groups, computed exactly.
#[derive(Debug, Parser)]
#[command(name = "hrep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON group file.
    #[arg(long, global = true, conflicts_with = "builtin")]
    input: Option<PathBuf>,
    /// Builtin group, e.g. d8, q16, heis3, es_p3_exp_p2:5, cp:d8,q8, ab:2,4.
    #[arg(long, global = true)]
    builtin: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest group order any enumeration may touch.
    #[arg(long, global = true, default_value_t = 512)]
    max_order: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Center, derived subgroup, lower central series, squares, abelianization.
    GroupInfo,
    /// All Heisenberg pairs with dimension, 2-rank mod Z and isotropic count.
    Heisenberg,
    /// Transfer table into the subgroup generated by the given elements.
    Transfer {
        /// Comma-separated generator ids.
        #[arg(long, value_delimiter = ',', required = true)]
        subgroup: Vec<usize>,
    },
    /// Determinants of every Heisenberg representation, computed three ways.
    Det,
    /// Every applicable identity on one group; exit 1 if any fails.
    Verify,
    /// Determinant dichotomy for the two nonabelian groups of order p³.
    P3 {
        #[arg(long)]
        p: usize,
    },
    /// `verify` over the whole builtin zoo.
    Suite,
}

impl Cli {
    fn group(&self) -> Result<FiniteGroup, Failure> {
        let group = match (&self.input, &self.builtin) {
            (Some(path), None) => load_group_file(path),
            (None, Some(name)) => builtin_group(name),
            _ => {
                return Err(Failure::Input(
                    "pass exactly one of --input FILE or --builtin NAME".into(),
                ))
            }
        }
        .map_err(|e: InputError| Failure::Input(e.to_string()))?;
        if group.order() > self.max_order {
            return Err(Failure::Bound(format!(
                "group order {} exceeds --max-order {}",
                group.order(),
                self.max_order
            )));
        }
        Ok(group)
    }

    fn run(&self) -> Result<Output, Failure> {
        match &self.command {
            Command::GroupInfo => commands::group_info(&self.group()?),
            Command::Heisenberg => commands::heisenberg(self.group()?.into(), self.max_order),
            Command::Transfer { subgroup } => commands::transfer(&self.group()?, subgroup),
            Command::Det => commands::det(self.group()?.into(), self.max_order),
            Command::Verify => commands::verify(self.group()?.into(), self.seed, self.max_order),
            Command::P3 { p } => commands::p3(*p),
            Command::Suite => commands::suite(self.seed, self.max_order),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.run() {
        Ok(output) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&output.json).expect("values serialize")
                ),
                Format::Tsv => print!("{}", output.tsv),
            }
            for line in &output.diagnostics {
                eprintln!("hrep: {line}");
            }
            if output.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(failure) => {
            eprintln!("hrep: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
