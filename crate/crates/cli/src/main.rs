//! Command-line pipelines: construct designs, verify them, turn them into
//! LDPC or repeat-accumulate parity-check matrices and simulate their BER.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "bibd-codes", version, about = "LDPC and RA codes from block designs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Family {
    Netto,
    Buratti,
    Rdf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Query {
    Rbibd,
    Crcbibd,
    Cdf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Sra,
    Wqra,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Source {
    Cdf,
    Kts,
    Crcbibd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Bibd,
    Resolution,
    Girth,
    Rank,
    Regularity,
    Mindist,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Precision {
    F32,
    F64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a cyclic difference family and write it as a design file.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        p: u64,
        /// Block size; Netto families always use 3.
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Write every block instead of the base blocks only.
        #[arg(long)]
        expand: bool,
        /// Node budget of the radical family search.
        #[arg(long, default_value_t = bibd_codes::designs::DEFAULT_RDF_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Look up whether a design with the given parameters exists.
    Catalog {
        #[arg(long, value_enum)]
        query: Query,
        #[arg(long, alias = "p")]
        v: u64,
        #[arg(long)]
        k: u64,
    },
    /// Check a design file or an alist matrix.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "bibd,resolution,girth,rank,regularity"
        )]
        checks: Vec<Check>,
        /// Largest weight searched when the code is too big to enumerate.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Turn a design into an sRA or weight-q RA parity-check matrix.
    Transform {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_enum)]
        source: Source,
        #[arg(long)]
        g1: Option<usize>,
        /// Orbits (cdf) or resolution classes forming H1: a comma list,
        /// `all` for every unused one, or `none`.
        #[arg(long)]
        h1_classes: String,
        /// Class orbit used for H2 (crcbibd); defaults to the first orbit of
        /// length k.
        #[arg(long)]
        orbit: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the incidence matrix of a design as an alist file.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Encode messages with a parity-check matrix.
    Encode {
        #[arg(long)]
        h: PathBuf,
        /// RA sidecar; selects the accumulator encoder.
        #[arg(long)]
        sidecar: Option<PathBuf>,
        /// Messages as 0/1 strings, one per line.
        #[arg(long, conflicts_with = "random")]
        messages: Option<PathBuf>,
        /// Number of random messages.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sum-product decode channel LLRs, one whitespace-separated frame per line.
    Decode {
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        llr: PathBuf,
        #[arg(long, default_value_t = 50)]
        max_iter: usize,
        #[arg(long)]
        min_sum: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo BER simulation over BPSK/AWGN.
    Simulate {
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        sidecar: Option<PathBuf>,
        /// Eb/N0 points in dB.
        #[arg(long, value_delimiter = ',', required = true)]
        snr: Vec<f64>,
        #[arg(long, default_value_t = 100)]
        min_frame_errors: u64,
        #[arg(long, default_value_t = 1_000_000)]
        max_frames: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        max_iter: usize,
        #[arg(long)]
        min_sum: bool,
        #[arg(long, value_enum, default_value = "f64")]
        precision: Precision,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Construct {
            family,
            p,
            k,
            expand,
            budget,
            out,
        } => commands::construct(family, p, k, expand, budget, &out).map(|_| true),
        Command::Catalog { query, v, k } => commands::catalog(query, v, k).map(|_| true),
        Command::Verify { input, checks, cap } => commands::verify(&input, &checks, cap),
        Command::Transform {
            input,
            kind,
            source,
            g1,
            h1_classes,
            orbit,
            out,
        } => commands::transform(&input, kind, source, g1, &h1_classes, orbit, &out).map(|_| true),
        Command::Export { input, out } => commands::export(&input, &out).map(|_| true),
        Command::Encode {
            h,
            sidecar,
            messages,
            random,
            seed,
            out,
        } => commands::encode(
            &h,
            sidecar.as_deref(),
            messages.as_deref(),
            random,
            seed,
            out.as_deref(),
        )
        .map(|_| true),
        Command::Decode {
            h,
            llr,
            max_iter,
            min_sum,
            out,
        } => commands::decode(&h, &llr, max_iter, min_sum, out.as_deref()).map(|_| true),
        Command::Simulate {
            h,
            sidecar,
            snr,
            min_frame_errors,
            max_frames,
            seed,
            max_iter,
            min_sum,
            precision,
            out,
        } => commands::simulate(commands::SimulateArgs {
            h: &h,
            sidecar: sidecar.as_deref(),
            snr: &snr,
            min_frame_errors,
            max_frames,
            seed,
            max_iter,
            min_sum,
            precision,
            out: &out,
        })
        .map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}: {e:#}", commands::error_name(&e));
            ExitCode::from(1)
        }
    }
}
