use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quantumness::properties::{run_trial, CheckConfig, RunSummary};
use quantumness::random::{random_density_matrix, random_probabilities, seeded_rng};
use quantumness::{quantumness as measure, Ensemble, NormSpec};
use quantumness_cli::check::{format_report, run_parallel, ReportContext};
use quantumness_cli::ensemble_file::EnsembleFile;
use quantumness_cli::error::CliError;
use quantumness_cli::examples;
use quantumness_cli::sweep::{self, Grid, SweepTable, AGREEMENT_TOL};

/// Quantumness of quantum ensembles: compute, sweep, check.
#[derive(Parser)]
#[command(name = "quantumness", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the quantumness of an ensemble file.
    Compute {
        file: PathBuf,
        /// trace | frobenius | spectral | schatten:<p> | kyfan:<k>
        #[arg(long, default_value = "trace")]
        norm: NormSpec,
    },
    /// Tabulate closed form against matrix pipeline over a parameter grid.
    Sweep(SweepArgs),
    /// Randomized check of the monotonicity properties.
    CheckProperties(CheckArgs),
    /// Write the worked-example tables into a directory.
    Examples {
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a random ensemble file.
    Random {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        members: usize,
        /// Rank of every member; defaults to full rank.
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepKind {
    BlochAngle,
    PhaseDamping,
    Overlap,
}

/// Grid flags take `x` or `start:stop:step`.
#[derive(Args)]
struct SweepArgs {
    kind: SweepKind,
    #[arg(long, default_value = "0.5")]
    p1: Grid,
    #[arg(long, default_value = "1")]
    r1: Grid,
    #[arg(long, default_value = "1")]
    r2: Grid,
    #[arg(long, default_value = "0:3.14:0.01")]
    alpha: Grid,
    #[arg(long, default_value = "0.7853981633974483")]
    theta: Grid,
    #[arg(long, default_value = "0")]
    phi: Grid,
    #[arg(long, default_value = "0:1:0.01")]
    lambda: Grid,
    #[arg(long, default_value = "0:1:0.001")]
    c: Grid,
    #[arg(long, default_value = "0")]
    phase: Grid,
    /// Hilbert-space dimension for the overlap sweep.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    members: usize,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "trace")]
    norm: NormSpec,
    /// Re-run the single trial with this sub-seed.
    #[arg(long)]
    replay: Option<u64>,
    /// List every trial with its sub-seed.
    #[arg(long)]
    verbose: bool,
    /// Also write the report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
}

fn compute(file: &Path, spec: NormSpec) -> Result<(), CliError> {
    let ensemble = EnsembleFile::load(file)?.to_ensemble()?;
    spec.validate_for(ensemble.dim())?;
    println!("{:.12}", measure(&ensemble, spec)?);
    Ok(())
}

fn run_sweep(a: &SweepArgs) -> Result<(), CliError> {
    let table: SweepTable = match a.kind {
        SweepKind::BlochAngle => sweep::bloch_angle(&a.p1, &a.r1, &a.r2, &a.alpha)?,
        SweepKind::PhaseDamping => sweep::phase_damping_sweep(&a.p1, &a.theta, &a.phi, &a.lambda)?,
        SweepKind::Overlap => sweep::overlap_sweep(&a.p1, &a.c, &a.phase, a.dim)?,
    };
    match &a.out {
        Some(path) => {
            let f = fs::File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            table.write_csv(io::BufWriter::new(f))?;
        }
        None => table.write_csv(io::stdout().lock())?,
    }
    let worst = table.max_disagreement();
    if worst > AGREEMENT_TOL {
        return Err(CliError::Violation(format!(
            "formula and matrix columns differ by {worst:e} (tolerance {AGREEMENT_TOL:e})"
        )));
    }
    Ok(())
}

fn check_properties(a: &CheckArgs, command_line: &str) -> Result<(), CliError> {
    let config = CheckConfig {
        dim: a.dim,
        members: a.members,
        spec: a.norm,
    };
    config.validate()?;
    let (summary, outcomes) = match a.replay {
        Some(sub_seed) => {
            let o = run_trial(&config, 0, sub_seed)?;
            let mut s = RunSummary::new();
            s.record(&o);
            (s, vec![o])
        }
        None => run_parallel(&config, a.seed, a.trials)?,
    };
    let ctx = ReportContext {
        command: command_line,
        seed: a.seed,
        config: &config,
    };
    let text = format_report(&ctx, &summary, &outcomes, a.verbose);
    print!("{text}");
    if let Some(path) = &a.report {
        fs::write(path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    if summary.all_passed() {
        Ok(())
    } else {
        Err(CliError::Violation(format!("{} failing trial(s)", summary.failures.len())))
    }
}

fn write_examples(out: &Path) -> Result<(), CliError> {
    let artifacts = examples::write_all(out)?;
    let mut failed = Vec::new();
    for a in &artifacts {
        println!("{} {}", a.file_name, if a.passed { "PASS" } else { "FAIL" });
        if !a.passed {
            failed.push(a.file_name);
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Violation(format!("failing artifacts: {}", failed.join(", "))))
    }
}

fn random(dim: usize, members: usize, rank: Option<usize>, seed: u64, out: &Path) -> Result<(), CliError> {
    if dim == 0 || members == 0 {
        return Err(CliError::Usage("--dim and --members must be positive".into()));
    }
    let rank = rank.unwrap_or(dim);
    let mut rng = seeded_rng(seed);
    let probs = random_probabilities(members, &mut rng)?;
    let states = probs
        .into_iter()
        .map(|p| Ok((p, random_density_matrix(dim, rank, &mut rng)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let ensemble = Ensemble::new(states)?;
    EnsembleFile::from_ensemble(&ensemble).save(out)
}

fn run(cli: &Cli, command_line: &str) -> Result<(), CliError> {
    match &cli.command {
        Command::Compute { file, norm } => compute(file, *norm),
        Command::Sweep(a) => run_sweep(a),
        Command::CheckProperties(a) => check_properties(a, command_line),
        Command::Examples { out } => write_examples(out),
        Command::Random {
            dim,
            members,
            rank,
            seed,
            out,
        } => random(*dim, *members, *rank, *seed, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let command_line = std::iter::once("quantumness".to_string())
        .chain(std::env::args().skip(1))
        .collect::<Vec<_>>()
        .join(" ");
    match run(&cli, &command_line) {
        Ok(()) => {
            let _ = io::stdout().flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
