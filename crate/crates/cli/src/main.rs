use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use diagcoh::caps::Caps;
use diagcoh::diagramcoh::Convention;
use diagcoh::linalg::Ring;

mod commands;
mod report;
mod verify;

use report::Report;

#[derive(Parser)]
#[command(name = "diagcoh", version, about = "Cohomology of natural systems, group diagrams and ψ-rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Override size limits, e.g. `order=12,cochain=65536`. Keys: objects,
    /// morphisms, order, dim, degree, cochain.
    #[arg(long, global = true)]
    caps: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Baues-Wirsching cohomology of a natural system.
    Bw {
        category: PathBuf,
        system: PathBuf,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        /// Coefficients `z`, `q` or `f<p>`; overrides the file.
        #[arg(long)]
        ring: Option<Ring>,
    },
    /// Group cohomology through bar cochains.
    Group {
        group: PathBuf,
        module: PathBuf,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        #[arg(long)]
        ring: Option<Ring>,
    },
    /// Cohomology of a group diagram with E_2, E_∞ and the convergence check.
    Diagram {
        bundle: PathBuf,
        #[arg(long)]
        convention: Convention,
        /// Total degree bound; defaults to pmax + qmax, or 3.
        #[arg(long)]
        nmax: Option<usize>,
        /// Columns shown in the tables.
        #[arg(long)]
        pmax: Option<usize>,
        /// Rows shown in the tables.
        #[arg(long)]
        qmax: Option<usize>,
        #[arg(long)]
        ring: Option<Ring>,
    },
    /// Every page of the spectral sequence of a group diagram.
    Spectral {
        bundle: PathBuf,
        #[arg(long)]
        convention: Convention,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        #[arg(long)]
        ring: Option<Ring>,
    },
    /// ψ-ring axioms, derivations, sections, free rings and the derivation system.
    Psi {
        file: PathBuf,
        #[arg(value_enum)]
        action: PsiAction,
        #[arg(long, default_value_t = 2)]
        nmax: usize,
    },
    /// Rerun the property suites with a fixed seed.
    Verify {
        #[arg(value_enum, default_value_t = verify::Scope::All)]
        scope: verify::Scope,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PsiAction {
    Check,
    Derivations,
    Sections,
    Free,
    Bw,
}

fn run(cli: &Cli) -> Result<Report> {
    let caps = match &cli.caps {
        Some(s) => {
            let caps: Caps = s.parse().context("reading --caps")?;
            eprintln!("warning: size limits overridden: {caps:?}");
            caps
        }
        None => Caps::default(),
    };
    match &cli.command {
        Command::Bw {
            category,
            system,
            nmax,
            ring,
        } => commands::bw(category, system, *nmax, *ring, &caps),
        Command::Group {
            group,
            module,
            nmax,
            ring,
        } => commands::group(group, module, *nmax, *ring, &caps),
        Command::Diagram {
            bundle,
            convention,
            nmax,
            pmax,
            qmax,
            ring,
        } => commands::diagram(bundle, *convention, *nmax, *pmax, *qmax, *ring, &caps),
        Command::Spectral {
            bundle,
            convention,
            nmax,
            ring,
        } => commands::spectral(bundle, *convention, *nmax, *ring, &caps),
        Command::Psi { file, action, nmax } => commands::psi(file, *action, *nmax, &caps),
        Command::Verify { scope, seed } => Ok(verify::run(*scope, *seed)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => report.json_string(),
                Format::Text => report.text.clone(),
            };
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: writing `{}`: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
