//! Argument definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "stabkit",
    version,
    about = "Stabilizer codes, Clifford simulation and fault-tolerance analysis"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Seed for every random choice of the run.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Largest qubit count for state-vector simulation
    /// (default: STABKIT_DENSE_LIMIT or 16).
    #[arg(long, global = true)]
    pub dense_limit: Option<usize>,
    /// Largest number of cases an exhaustive check may enumerate.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format for tabular reports.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Stabilizer code queries.
    #[command(subcommand)]
    Code(CodeCommand),
    /// CSS codes from classical parity-check matrices.
    #[command(subcommand)]
    Css(CssCommand),
    /// Clifford circuit simulation.
    #[command(subcommand)]
    Sim(SimCommand),
    /// Fault-tolerant gadgets and threshold estimates.
    #[command(subcommand)]
    Ft(FtCommand),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct CodeSource {
    /// Bundled code: five_qubit, seven_qubit, nine_qubit (or an alias).
    #[arg(long)]
    pub code: Option<String>,
    /// Code file.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum CodeCommand {
    /// Minimum distance by enumeration.
    Distance {
        #[command(flatten)]
        source: CodeSource,
    },
    /// `[[n,k,d]]`.
    Params {
        #[command(flatten)]
        source: CodeSource,
    },
    /// Lists broken invariants; exits 1 if there are any.
    Check {
        #[command(flatten)]
        source: CodeSource,
    },
    /// Syndrome of an error and the table decoder's correction.
    Syndrome {
        #[command(flatten)]
        source: CodeSource,
        /// Pauli string, e.g. `IXIII`.
        #[arg(long)]
        error: String,
    },
    /// Prints the code in file format.
    Show {
        #[command(flatten)]
        source: CodeSource,
    },
    /// Knill-Laflamme conditions for all Paulis up to a weight.
    Kl {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long, default_value_t = 1)]
        weight: usize,
    },
    /// Hamming, Gilbert-Varshamov and Singleton verdicts for small codes.
    Bounds {
        #[arg(long, default_value_t = 10)]
        max_n: u64,
        #[arg(long, default_value_t = 2)]
        max_k: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum CssCommand {
    /// Z checks from the first matrix, X checks from the second.
    Build {
        /// Parity-check matrix file, or `hamming` for the [7,4,3] code.
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
        #[arg(long, default_value = "css")]
        name: String,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Tableau,
    Dense,
}

#[derive(Subcommand, Debug)]
pub enum SimCommand {
    /// Measurement outcomes, one line of bits per shot.
    Run {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long, default_value_t = 1)]
        shots: u64,
        #[arg(long, value_enum, default_value_t = Engine::Tableau)]
        engine: Engine,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrepArg {
    Verify,
    Project,
}

#[derive(Args, Debug, Clone)]
pub struct GadgetArgs {
    #[arg(long, default_value = "steane7")]
    pub code: String,
    /// steane-ec, broken-steane-ec, knill-ec, shor-ec, knill-measure,
    /// measure-z, measure-x, prep-z, prep-x, projection-z, projection-x,
    /// x, z, h, p, cnot.
    #[arg(long)]
    pub gadget: String,
    /// Shor EC repetitions (default 2t+1).
    #[arg(long)]
    pub rounds: Option<usize>,
    #[arg(long, value_enum, default_value_t = PrepArg::Verify)]
    pub prep: PrepArg,
}

#[derive(Args, Debug, Clone)]
pub struct ExRecArgs {
    #[arg(long, default_value = "steane7")]
    pub code: String,
    /// `cnot` (standalone exRec), `sample` (prepare, CNOT, H, measure) or
    /// `prep-measure`.
    #[arg(long, default_value = "cnot")]
    pub exrec: String,
    #[arg(long, value_enum, default_value_t = PrepArg::Verify)]
    pub prep: PrepArg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseArg {
    Depolarizing,
}

#[derive(Subcommand, Debug)]
pub enum FtCommand {
    /// Exhaustive check of one gadget property; `support` checks the
    /// Steane EC output support.
    Check {
        #[command(flatten)]
        gadget: GadgetArgs,
        #[arg(long)]
        property: String,
        #[arg(long, default_value_t = 1)]
        t: usize,
    },
    /// Gadget circuit in the simulator text format.
    BuildGadget {
        #[command(flatten)]
        gadget: GadgetArgs,
    },
    /// Monte Carlo failure rates over a grid of noise strengths, as CSV.
    Threshold {
        #[command(flatten)]
        exrec: ExRecArgs,
        #[arg(long, value_enum, default_value_t = NoiseArg::Depolarizing)]
        noise: NoiseArg,
        /// `lo:hi:logN`, `lo:hi:linN` or a comma-separated list.
        #[arg(long, default_value = "1e-5:1e-1:log20")]
        p_grid: String,
        /// Trials per point; scientific notation allowed.
        #[arg(long, default_value = "1e4")]
        trials: String,
    },
    /// Fault-set counts and the resulting threshold lower bound.
    Count {
        #[command(flatten)]
        exrec: ExRecArgs,
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Also run every pair of faults through the exRec.
        #[arg(long)]
        malignant: bool,
    },
    /// Dense check of the encoded pi/8 gate by magic-state teleportation.
    Teleport,
    /// Concatenation levels needed to reach a target logical rate.
    Levels {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        threshold: f64,
        #[arg(long)]
        target: f64,
        #[arg(long, default_value_t = 1)]
        t: usize,
    },
}
