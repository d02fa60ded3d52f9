use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::{self, Output};
use crate::config::{default_cutoff, FileConfig, Format};
use crate::error::{usage, CliError};
use crate::spec::{generator_file, named_generator, BuiltState, StateParams, StateSpec};

#[derive(Parser)]
#[command(name = "gnl", version, about = "Gaussian graph states and their Schwinger nullifiers")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a state and print its adjacency matrix K
    State(StateCmd),
    /// Solve for the full nullifier space of a state
    Nullifiers(StateCmd),
    /// Check one generator against a state
    Check(CheckCmd),
    /// Graphs invariant under ½(ασ₀ + βσx + γσy + δσz) on two modes
    Twomode(TwoModeCmd),
    /// Expand a state in the truncated Fock basis
    Oracle(OracleCmd),
    /// Export K, Z and the validation report
    Export(StateCmd),
}

#[derive(Args)]
struct StateArgs {
    /// tms, tms-pair, bell:<phi+|phi-|psi+|psi->, hgraph, wire, vacuum or file
    name: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long)]
    spins: Option<usize>,
    #[arg(long)]
    modes: Option<usize>,
    /// Drop the wrap-around bond of the wire
    #[arg(long)]
    open: bool,
    /// Real symmetric graph matrix for hgraph (JSON)
    #[arg(long)]
    g: Option<PathBuf>,
    /// Adjacency matrix for file (JSON)
    #[arg(long)]
    k: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON file with default values for any flag
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct StateCmd {
    #[command(flatten)]
    state: StateArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct GeneratorArgs {
    /// sz|sx|sy|s0[:r,s], local:I, global-x, global-z, chain:S:L, six-mode, exotic-y, four-x|y|z
    #[arg(long = "gen", conflicts_with = "gen_file")]
    generator: Option<String>,
    /// Schwinger expression or Hermitian matrix (JSON)
    #[arg(long)]
    gen_file: Option<PathBuf>,
}

#[derive(Args)]
struct CheckCmd {
    #[command(flatten)]
    state: StateArgs,
    #[command(flatten)]
    generator: GeneratorArgs,
    #[arg(long)]
    cutoff: Option<u32>,
    /// Number of θ points in [0, 2π)
    #[arg(long)]
    thetas: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct TwoModeCmd {
    #[arg(allow_negative_numbers = true)]
    alpha: f64,
    #[arg(allow_negative_numbers = true)]
    beta: f64,
    #[arg(allow_negative_numbers = true)]
    gamma: f64,
    #[arg(allow_negative_numbers = true)]
    delta: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OracleCmd {
    #[command(flatten)]
    state: StateArgs,
    #[command(flatten)]
    generator: GeneratorArgs,
    #[arg(long)]
    cutoff: Option<u32>,
    /// Also print amplitudes in the Schwinger spin basis
    #[arg(long)]
    spin_view: bool,
    /// Amplitudes shown in text output
    #[arg(long)]
    limit: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

fn build_state(args: &StateArgs, cfg: &FileConfig) -> Result<BuiltState, CliError> {
    let name = args.name.clone().or_else(|| cfg.state.clone()).ok_or_else(|| usage("no state given"))?;
    let params = StateParams {
        alpha: args.alpha.or(cfg.alpha),
        spins: args.spins.or(cfg.spins),
        modes: args.modes.or(cfg.modes),
        open: args.open || cfg.open.unwrap_or(false),
        g: args.g.clone().or_else(|| cfg.g.clone()),
        k: args.k.clone().or_else(|| cfg.k.clone()),
    };
    StateSpec::parse(&name, &params)?.build()
}

fn build_generator(
    args: &GeneratorArgs,
    cfg: &FileConfig,
    state: &BuiltState,
) -> Result<Option<gnl_core::SchwingerExpression>, CliError> {
    if let Some(name) = &args.generator {
        return named_generator(name, state).map(Some);
    }
    if let Some(path) = &args.gen_file {
        return generator_file(path).map(Some);
    }
    match (&cfg.generator, &cfg.gen_file) {
        (Some(name), _) => named_generator(name, state).map(Some),
        (None, Some(path)) => generator_file(path).map(Some),
        (None, None) => Ok(None),
    }
}

/// Runs a parsed command and returns its rendered output without writing it.
pub fn execute(cli: &Cli) -> Result<(Output, Option<PathBuf>), CliError> {
    let output = match &cli.command {
        Command::State(c) | Command::Nullifiers(c) | Command::Export(c) => &c.output,
        Command::Check(c) => &c.output,
        Command::Twomode(c) => &c.output,
        Command::Oracle(c) => &c.output,
    };
    let cfg = FileConfig::load(output.config.as_deref())?;
    let format = |default| output.format.or(cfg.format).unwrap_or(default);
    let result = match &cli.command {
        Command::State(c) => commands::state(&build_state(&c.state, &cfg)?, format(Format::Json))?,
        Command::Nullifiers(c) => commands::nullifiers(&build_state(&c.state, &cfg)?, format(Format::Json))?,
        Command::Export(c) => commands::export(&build_state(&c.state, &cfg)?, format(Format::Dot))?,
        Command::Check(c) => {
            let state = build_state(&c.state, &cfg)?;
            let generator =
                build_generator(&c.generator, &cfg, &state)?.ok_or_else(|| usage("check needs --gen or --gen-file"))?;
            let cutoff = c.cutoff.or(cfg.cutoff).unwrap_or_else(|| default_cutoff(state.n()));
            let thetas = c.thetas.or(cfg.thetas).unwrap_or(16);
            commands::check(&state, &generator, cutoff, thetas, format(Format::Text))?
        }
        Command::Twomode(c) => commands::twomode([c.alpha, c.beta, c.gamma, c.delta], format(Format::Text))?,
        Command::Oracle(c) => {
            let state = build_state(&c.state, &cfg)?;
            let generator = build_generator(&c.generator, &cfg, &state)?;
            let cutoff = c.cutoff.or(cfg.cutoff).unwrap_or_else(|| default_cutoff(state.n()));
            let spin_view = c.spin_view || cfg.spin_view.unwrap_or(false);
            let limit = c.limit.or(cfg.limit).unwrap_or(20);
            commands::oracle(&state, cutoff, generator.as_ref(), spin_view, limit, format(Format::Text))?
        }
    };
    Ok((result, output.out.clone().or_else(|| cfg.out.clone())))
}

/// Parses `args` (program name first) and renders the command output.
pub fn execute_args<I, T>(args: I) -> Result<Output, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| usage(e.to_string()))?;
    Ok(execute(&cli)?.0)
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let (result, out) = execute(cli)?;
    match out {
        Some(path) => std::fs::write(&path, &result.body).map_err(|source| CliError::Io { path, source })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(result.body.as_bytes()).and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    return Err(CliError::Io { path: PathBuf::from("<stdout>"), source: e })
                }
                _ => {}
            }
        }
    }
    Ok(result.passed)
}

/// Parses `args` (program name first) and runs; clap handles `--help` and usage errors.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match run(&Cli::parse_from(args)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
