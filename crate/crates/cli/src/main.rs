use std::error::Error;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

#[derive(Parser, Debug)]
#[command(name = "qgvc", version, about = "SU(2) plaquette operators, qudit circuit synthesis and simulation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the plaquette operator at dimension d and summarize it.
    BuildOp {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=9))]
        d: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Synthesize a standalone subcircuit.
    Synth {
        #[command(subcommand)]
        kind: SynthKind,
    },
    /// Compile a term, a plaquette or a full Trotter step.
    Compile(CompileArgs),
    /// Time series of the observed face's electric energy.
    Simulate(SimulateArgs),
}

#[derive(Subcommand, Debug)]
enum SynthKind {
    /// Uniformly controlled rotation over all d^k control words.
    Ucr {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=9))]
        d: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=4))]
        k: u64,
        /// Rotation angle used for every word.
        #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, value_enum, default_value_t = AxisArg::Z)]
        axis: AxisArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Conditionally controlled rotation over a preset word sequence.
    Ccr {
        #[arg(long, value_enum)]
        preset: Preset,
        #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
        theta: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Verification gates.
    Gate {
        #[command(flatten)]
        which: GateChoice,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GateChoice {
    /// Three-input qutrit OR.
    #[arg(long)]
    lor3_qutrit: bool,
    /// Four-input qutrit OR built from two halves and a combine gate.
    #[arg(long)]
    lor4_qutrit: bool,
    /// AND over k qutrits, each guarded to {0, 1}.
    #[arg(long, value_name = "K")]
    land: Option<usize>,
    /// Qutrit Toffoli.
    #[arg(long)]
    toffoli: bool,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum AxisArg {
    Y,
    Z,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Preset {
    /// The 82-word qutrit parity sequence used by plaquette terms.
    Eq9,
    /// Five words over two qutrits: 00, 02, 11, 20, 22.
    Five,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Scope {
    Term,
    Plaquette,
    TrotterStep,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Style {
    Primary,
    Alternate,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Faces {
    Single,
    Pair,
}

#[derive(Args, Debug)]
struct CompileArgs {
    #[arg(value_enum)]
    scope: Scope,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..=9))]
    d: u64,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value_t = Style::Primary)]
    style: Style,
    #[arg(long, value_enum, default_value_t = Faces::Single)]
    faces: Faces,
    /// Subspace assignment of the term, e.g. 0110.
    #[arg(long, default_value = "0000")]
    pqrs: String,
    /// Run the gating stages outside the X-parity stages.
    #[arg(long)]
    gating_outside: bool,
    /// Cancel Hadamard pairs after compiling.
    #[arg(long)]
    eliminate_h: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long, default_value_t = 0.2)]
    g2: f64,
    /// Total evolution time.
    #[arg(long, default_value_t = 0.3)]
    t: f64,
    /// Trotter steps.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=100_000))]
    nt: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SimMode {
    Exact,
    Trotter,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(value_enum)]
    mode: SimMode,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..=3))]
    d: u64,
    #[arg(long, default_value_t = 0.2)]
    g2: f64,
    #[arg(long, default_value_t = 0.02)]
    t0: f64,
    #[arg(long, default_value_t = 0.92)]
    tmax: f64,
    #[arg(long, default_value_t = 0.1)]
    dt: f64,
    /// Trotter steps.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=100_000))]
    nt: u64,
    /// Apply each term exactly instead of running the compiled circuit.
    #[arg(long)]
    ideal: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the main artifact (operator, circuit or series) to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn configure_threads() -> Result<(), Box<dyn Error>> {
    let Ok(raw) = std::env::var("QGVC_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("QGVC_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Box<dyn Error>> {
    configure_threads()?;
    let text = match cli.command {
        Command::BuildOp { d, out } => commands::build_op(d as usize, &out)?,
        Command::Synth { kind } => commands::synth(kind)?,
        Command::Compile(args) => commands::compile(&args)?,
        Command::Simulate(args) => commands::simulate(&args)?,
    };
    print!("{text}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.render().to_string();
            eprintln!("{}", msg.lines().next().unwrap_or("error: invalid arguments"));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.to_string().replace('\n', " "));
            ExitCode::FAILURE
        }
    }
}
