//! Command-line driver for the verification suite.  Every subcommand
//! builds one report; the process exits 0 when all checks pass, 1 when
//! a check fails, and 2 when the invocation or configuration prevents
//! the report from being produced at all.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use g2cal::config::{builtin_group_config, group_from_config, parse_group_config};
use g2cal::g2::G2Structure;
use g2cal::report::Report;
use g2cal::suite::{self, SuiteOptions};
use g2cal::torus::FiniteActionGroup;
use g2cal::Error;

#[derive(Parser)]
#[command(
    name = "g2cal",
    version,
    about = "Exact-arithmetic verification suite for a calibrated torus construction"
)]
struct Cli {
    /// Group preset name ("joyce") or path to a TOML group config.
    #[arg(long, global = true, default_value = "joyce")]
    group: String,

    /// Denominator of the brute-force verification grid.
    #[arg(
        long,
        global = true,
        default_value_t = 4,
        value_parser = clap::value_parser!(u32).range(2..)
    )]
    grid_denominator: u32,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Report rendering.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// Aligned human-readable lines.
    Text,
    /// Deterministic JSON.
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Run the whole verification battery.
    VerifyAll,
    /// Census of the group's fixed loci on its torus.
    FixedSets,
    /// Censuses of the actions induced on coordinate slices.
    SliceCensus,
    /// The adapted almost-complex pair for the two reference directions.
    DualPair,
    /// Surface fixed-locus data, Hodge pair, and Euler and Betti bookkeeping.
    Hodge,
    /// The full two-sided mirror pipeline.
    MirrorReport,
    /// Calibrated and cocalibrated coordinate planes.
    Planes,
}

fn load_group(spec: &str) -> g2cal::Result<FiniteActionGroup> {
    if spec == "joyce" {
        return group_from_config(&builtin_group_config());
    }
    let text = fs::read_to_string(spec)
        .map_err(|e| Error::Config(format!("cannot read group config '{spec}': {e}")))?;
    group_from_config(&parse_group_config(&text)?)
}

fn build_report(cli: &Cli) -> g2cal::Result<Report> {
    let g2 = G2Structure::standard();
    let opts = SuiteOptions {
        grid_denominator: cli.grid_denominator,
    };
    match cli.command {
        Command::VerifyAll => suite::verify_all(&g2, &load_group(&cli.group)?, &opts),
        Command::FixedSets => suite::fixed_sets_report(&g2, &load_group(&cli.group)?, &opts),
        Command::SliceCensus => suite::slice_census_report(&load_group(&cli.group)?, &opts),
        Command::DualPair => suite::dual_pair_report(&g2),
        Command::Hodge => suite::hodge_report(&g2, &load_group(&cli.group)?, &opts),
        Command::MirrorReport => {
            suite::mirror_report_rendered(&g2, &load_group(&cli.group)?, &opts)
        }
        Command::Planes => suite::planes_report(&g2),
    }
}

fn emit(cli: &Cli, report: &Report) -> g2cal::Result<()> {
    let rendered = match cli.format {
        Format::Text => report.to_text(),
        Format::Structured => report.to_json()?,
    };
    match &cli.output {
        Some(path) => fs::write(path, rendered)
            .map_err(|e| Error::Config(format!("cannot write '{}': {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match build_report(&cli) {
        Ok(report) => {
            if let Err(e) = emit(&cli, &report) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if report.has_failures() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
