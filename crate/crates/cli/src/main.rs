//! `adf`: node sets, cubature rules, Lebesgue tables and interpolant
//! evaluation on the `A_d` fundamental domain and simplex.

mod budget;
mod commands;
mod error;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use adf_core::chebyshev::DEFAULT_DEGREE_CAP;
use adf_core::export::NodeDomain;
use adf_core::interpolation::Kind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{Format, RuleChoice, Settings};
use error::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "adf", version, about = "Discrete Fourier analysis on the A_d lattice domain and simplex")]
struct Cli {
    /// Largest accepted dimension.
    #[arg(long, global = true, default_value_t = 8)]
    max_dim: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Dimension d of the lattice.
    #[arg(short = 'd', long = "dimension")]
    dimension: usize,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DomainArg {
    Omega,
    Simplex,
    SimplexInterior,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    In,
    InStar,
    Ln,
    LnStar,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::In => Kind::In,
            KindArg::InStar => Kind::InStar,
            KindArg::Ln => Kind::Ln,
            KindArg::LnStar => Kind::LnStar,
        }
    }
}

impl From<DomainArg> for NodeDomain {
    fn from(d: DomainArg) -> Self {
        match d {
            DomainArg::Omega => NodeDomain::Omega,
            DomainArg::Simplex => NodeDomain::Simplex,
            DomainArg::SimplexInterior => NodeDomain::SimplexInterior,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List lattice nodes with exact coordinates, stratum and weights.
    Nodes {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'n', long = "order", value_parser = clap::value_parser!(u32).range(1..))]
        order: u32,
        #[arg(long, value_enum)]
        domain: DomainArg,
    },
    /// Export a cubature rule together with an exactness self-check.
    Cubature {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'n', long = "order", value_parser = clap::value_parser!(u32).range(1..))]
        order: u32,
        #[arg(long, value_enum)]
        kind: RuleChoice,
        /// Highest degree swept by the self-check.
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP as u32)]
        degree_cap: u32,
    },
    /// Tabulate estimated Lebesgue constants for a list of orders.
    Lebesgue {
        #[command(flatten)]
        common: Common,
        /// Orders to tabulate, e.g. `-n 2,4,8` or `-n 2 -n 4`.
        #[arg(short = 'n', long = "order", required = true, value_delimiter = ',',
              value_parser = clap::value_parser!(u32).range(1..))]
        orders: Vec<u32>,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Grid resolution per unit order: order n is scanned on a grid of order `grid * n`.
        #[arg(long, default_value_t = 8)]
        grid: u32,
    },
    /// Evaluate an interpolant built from node samples.
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'n', long = "order", value_parser = clap::value_parser!(u32).range(1..))]
        order: u32,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// JSON file `{"samples": [{"index": [...], "value": ...}, ...]}`.
        #[arg(long)]
        samples: PathBuf,
        /// JSON file `{"points": [[...], ...]}`; defaults to the nodes themselves.
        #[arg(long)]
        points: Option<PathBuf>,
    },
}

impl Common {
    fn settings(&self, max_dim: usize) -> CliResult<Settings> {
        if self.dimension == 0 || self.dimension > max_dim {
            return Err(CliError::Validation(format!(
                "dimension must be between 1 and {max_dim}, got {}",
                self.dimension
            )));
        }
        Ok(Settings {
            dimension: self.dimension,
            format: self.format,
            output: self.output.clone(),
            max_cells: budget::max_cells()?,
        })
    }
}

fn run(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Nodes { common, order, domain } => {
            commands::nodes(&common.settings(cli.max_dim)?, domain.into(), order)
        }
        Command::Cubature { common, order, kind, degree_cap } => {
            let (text, check) = commands::cubature(&common.settings(cli.max_dim)?, kind, order, degree_cap)?;
            eprintln!(
                "self-check: {} functions of degree <= {} in the {} basis, max residual {:.3e}",
                check.functions, check.degree, check.basis, check.max_residual
            );
            Ok(text)
        }
        Command::Lebesgue { common, orders, kind, grid } => {
            commands::lebesgue(&common.settings(cli.max_dim)?, kind.into(), &orders, grid)
        }
        Command::Eval { common, order, kind, samples, points } => {
            commands::eval(&common.settings(cli.max_dim)?, kind.into(), order, &samples, points.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let to_stdout = match &cli.command {
        Command::Nodes { common, .. }
        | Command::Cubature { common, .. }
        | Command::Lebesgue { common, .. }
        | Command::Eval { common, .. } => common.output.is_none(),
    };
    match run(cli) {
        Ok(text) => {
            if to_stdout {
                let mut out = std::io::stdout().lock();
                if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                    eprintln!("error[io]: stdout: {e}");
                    return ExitCode::from(4);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            ExitCode::from(e.exit_code())
        }
    }
}
