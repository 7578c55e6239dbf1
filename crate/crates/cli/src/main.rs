//! `normtower`: reproducible drivers for the stage, assembly, tower, graph,
//! projective-line and tree computations. Every command writes one JSON
//! report and exits with 0 (pass), 1 (property failure), 2 (budget) or
//! 3 (invalid input).

mod combinatorics;
mod groups;
mod report;
mod stages;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use normtower::grouptop::Backend;
use normtower::towerlab::RepresentativePolicy;
use normtower::{Error, SearchConfig};
use serde::Serialize;

use report::Outcome;

#[derive(Parser, Serialize, Debug)]
#[command(name = "normtower", version, about = "Normaliser and automorphism tower computations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub budget: Budget,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,

    /// Print a one-line summary to stderr (repeat for more).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    #[serde(skip)]
    pub verbose: u8,
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct Budget {
    /// Normaliser backend.
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Auto)]
    pub backend: BackendArg,

    /// Backtrack node cap for normaliser searches.
    #[arg(long, global = true, default_value_t = 20_000_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub node_cap: u64,

    /// Largest permutation degree any command will build.
    #[arg(long, global = true, default_value_t = 1024,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub max_degree: u64,

    /// Largest abstract group order for automorphism searches.
    #[arg(long, global = true, default_value_t = normtower::absgroup::CATALOG_ORDER_BOUND as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub max_order: u64,
}

impl Budget {
    pub fn search(&self) -> SearchConfig {
        SearchConfig {
            backend: self.backend.into(),
            node_cap: self.node_cap,
            ..SearchConfig::default()
        }
    }

    pub fn check_degree(&self, degree: usize) -> normtower::Result<()> {
        if degree as u64 > self.max_degree {
            return Err(Error::Budget {
                what: "degree",
                limit: self.max_degree,
            });
        }
        Ok(())
    }
}

#[derive(ValueEnum, Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum BackendArg {
    Auto,
    Exhaustive,
    Backtrack,
    CrossCheck,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Auto => Backend::Auto,
            BackendArg::Exhaustive => Backend::Exhaustive,
            BackendArg::Backtrack => Backend::Backtrack,
            BackendArg::CrossCheck => Backend::CrossCheck,
        }
    }
}

#[derive(ValueEnum, Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum PolicyArg {
    Min,
    Max,
}

impl From<PolicyArg> for RepresentativePolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Min => RepresentativePolicy::Min,
            PolicyArg::Max => RepresentativePolicy::Max,
        }
    }
}

#[derive(Subcommand, Serialize, Debug)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Build stage n over a rigid seed and check its tower and conditions.
    Stage(stages::StageArgs),
    /// Assemble the main construction, identify seeds by E and re-measure.
    Relabel(stages::RelabelArgs),
    /// Build D^n_m and check its tower height and top level.
    D(stages::DArgs),
    /// Automorphism tower of an abstract group.
    Tower(groups::TowerArgs),
    /// Projective line check for PGL(2,q) extended by Galois subgroups.
    Pgl(groups::PglArgs),
    /// Graph automorphisms, canonical forms, rigid families, tree coding.
    Graph(combinatorics::GraphArgs),
    /// Normal trees: validation, end-extension, isomorphism extension.
    Tree(combinatorics::TreeArgs),
}

fn run(cli: &Cli) -> normtower::Result<Outcome> {
    match &cli.command {
        Command::Stage(a) => stages::stage(a, &cli.budget),
        Command::Relabel(a) => stages::relabel(a, &cli.budget),
        Command::D(a) => stages::d(a, &cli.budget),
        Command::Tower(a) => groups::tower(a, &cli.budget),
        Command::Pgl(a) => groups::pgl(a, &cli.budget),
        Command::Graph(a) => combinatorics::graph(a, &cli.budget),
        Command::Tree(a) => combinatorics::tree(a, &cli.budget),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(report::EXIT_INVALID),
            };
        }
    };
    let result = run(&cli);
    let (document, code, summary) = report::finish(&cli, result);
    if cli.verbose > 0 {
        eprintln!("{summary}");
    }
    if let Err(e) = report::emit(&document, cli.out.as_deref()) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(report::EXIT_INVALID);
    }
    ExitCode::from(code)
}
