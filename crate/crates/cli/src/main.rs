use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use monodromy_cli::{run, Assumptions, Command, Format, Inputs, JobError, JobSpec, ModeName};

/// Milnor monodromy invariants of f = P/Q from Newton polyhedra.
#[derive(Parser)]
#[command(name = "monodromy", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Local monodromy zeta function at the origin.
    ZetaLocal(JobArgs),
    /// Monodromy zeta function at infinity.
    ZetaInfinity(JobArgs),
    /// Multiplicities of eigenvalues λ ≠ 1.
    Multiplicity(JobArgs),
    /// Lefschetz numbers Λ(m).
    Lefschetz(JobArgs),
    /// Equivariant Hodge-Deligne polynomials E_λ(u, v).
    ELambda(JobArgs),
    /// Jordan block counts J_{k,λ} by two independent paths.
    Jordan(JobArgs),
    /// The two largest Jordan block sizes from the vertex and edge census.
    JordanExtremes(JobArgs),
    /// Reduced Hodge spectrum.
    Spectrum(JobArgs),
    /// Weighted Ehrhart data of the Cayley cells and of K.
    Ehrhart(JobArgs),
    /// Compare the engine against the brute-force oracles.
    Check(JobArgs),
}

impl Sub {
    fn split(self) -> (Command, JobArgs) {
        match self {
            Sub::ZetaLocal(a) => (Command::ZetaLocal, a),
            Sub::ZetaInfinity(a) => (Command::ZetaInfinity, a),
            Sub::Multiplicity(a) => (Command::Multiplicity, a),
            Sub::Lefschetz(a) => (Command::Lefschetz, a),
            Sub::ELambda(a) => (Command::ELambda, a),
            Sub::Jordan(a) => (Command::Jordan, a),
            Sub::JordanExtremes(a) => (Command::JordanExtremes, a),
            Sub::Spectrum(a) => (Command::Spectrum, a),
            Sub::Ehrhart(a) => (Command::Ehrhart, a),
            Sub::Check(a) => (Command::Check, a),
        }
    }
}

#[derive(Args)]
struct JobArgs {
    /// Number of variables.
    #[arg(short = 'n', required_unless_present = "input")]
    n: Option<usize>,
    /// Numerator, e.g. "x^2 + y^3".
    #[arg(short = 'P', required_unless_present = "input", allow_hyphen_values = true)]
    p: Option<String>,
    /// Denominator (default 1).
    #[arg(short = 'Q', allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, value_enum)]
    mode: Option<ModeName>,
    /// Eigenvalue exp(2πi k/d) given as k/d in lowest terms; repeatable.
    #[arg(long = "lambda", value_name = "K/D", value_delimiter = ',')]
    lambdas: Vec<String>,
    /// Every λ whose order divides the lcm of the facet distances.
    #[arg(long)]
    all_lambdas: bool,
    /// Lefschetz indices (default 1 up to the period of ζ).
    #[arg(short = 'm', value_delimiter = ',')]
    m: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    assume_nondegenerate: bool,
    #[arg(long)]
    assume_isolated: bool,
    #[arg(long)]
    assume_transversal: bool,
    /// JSON file with the same schema as the `inputs` block of machine output.
    #[arg(long, conflicts_with_all = ["n", "p", "q", "mode", "lambdas", "all_lambdas", "m"])]
    input: Option<PathBuf>,
}

fn job(command: Command, a: JobArgs) -> Result<JobSpec, JobError> {
    let flags = Assumptions {
        nondegenerate: a.assume_nondegenerate,
        isolated: a.assume_isolated,
        transversal: a.assume_transversal,
    };
    let mut job = match &a.input {
        Some(path) => JobSpec::from_file(command, path, a.format)?,
        None => {
            let inputs = Inputs {
                command: None,
                n: a.n.expect("required by clap"),
                p: a.p.expect("required by clap"),
                q: a.q.unwrap_or_else(|| "1".into()),
                mode: a.mode,
                lambdas: a.lambdas,
                all_lambdas: a.all_lambdas,
                m: a.m,
                assumptions: flags,
            };
            JobSpec::from_inputs(command, &inputs, a.format)?
        }
    };
    job.assumptions.nondegenerate |= flags.nondegenerate;
    job.assumptions.isolated |= flags.isolated;
    job.assumptions.transversal |= flags.transversal;
    Ok(job)
}

fn main() -> ExitCode {
    let (command, args) = Cli::parse().command.split();
    let job = match job(command, args) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = run(&job);
    match job.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Machine => print!("{}", report.to_machine()),
    }
    if report.success() {
        ExitCode::SUCCESS
    } else {
        if let (Format::Machine, Some(e)) = (job.format, &report.error) {
            eprintln!("error: {e}");
        }
        ExitCode::FAILURE
    }
}
