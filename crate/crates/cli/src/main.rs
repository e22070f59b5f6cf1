//! `nagata`: command-line front end for the unloading bound, the
//! analytic threshold checks and the interpolation oracle.

mod input;
mod output;
mod scan;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nagata_core::analytic::{
    corollary_threshold, proof_chain_check_with, verify_untros_with, MAX_PRECISION,
};
use nagata_core::oracle::{
    alpha_oracle_with, expected_dimension, OracleOptions, DEFAULT_PRIME, DEFAULT_TRIALS,
};
use nagata_core::specialization::specialize;
use nagata_core::unloading::unload;
use nagata_core::{CertifiedBool, MultiplicitySystem, NagataCertificate, ProximityMatrix, SpecializationTrace};
use serde::Serialize;

use output::{emit, Format, Table};
use scan::{Family, MuFactor, ScanSpec};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Cap(String),
    Precision(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Precision(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Cap(m) => write!(f, "resource cap: {m}"),
            CliError::Precision(m) => write!(f, "precision exhausted: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<nagata_core::Error> for CliError {
    fn from(e: nagata_core::Error) -> Self {
        use nagata_core::Error::*;
        match e {
            NonTermination { .. } | Inconclusive { .. } => CliError::Cap(e.to_string()),
            Domain(_) | InvalidCluster(_) | Precondition(_) => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "nagata", version, about = "Lower bounds for multiplicity systems of plane curves")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, env = "NAGATA_FORMAT", default_value = "json")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    LowestIndex,
    HighestIndex,
    UnitSteps,
}

impl From<StrategyArg> for nagata_core::Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::LowestIndex => Self::LowestIndex,
            StrategyArg::HighestIndex => Self::HighestIndex,
            StrategyArg::UnitSteps => Self::UnitSteps,
        }
    }
}

#[derive(Args, Clone, Copy)]
struct OracleArgs {
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl OracleArgs {
    fn options(self, d_max: Option<u32>) -> OracleOptions {
        OracleOptions {
            prime: self.prime,
            trials: self.trials,
            seed: self.seed,
            d_max,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Unload a multiplicity system on a cluster read from a JSON file.
    Unload {
        /// Cluster file: {"r": 3, "prox": [[2,1],[3,2],[3,1]]}.
        #[arg(long)]
        cluster: PathBuf,
        /// Multiplicities, e.g. "1,1,1".
        multiplicities: String,
        #[arg(long, value_enum, default_value = "lowest-index")]
        strategy: StrategyArg,
    },
    /// Print the chain cluster U_i on r points as JSON.
    Chain { r: usize, i: usize },
    /// Specialize a system and report the lower bound for its degree.
    Bound { multiplicities: String },
    /// Check each link of the estimate chain for (r, s); s defaults to s0(r).
    Analytic {
        r: u64,
        s: Option<u64>,
        #[arg(long, default_value_t = MAX_PRECISION)]
        precision: u32,
    },
    /// Threshold table over a range of r, e.g. 10..15.
    Corollary {
        range: String,
        #[arg(long, default_value_t = MAX_PRECISION)]
        precision: u32,
    },
    /// Estimate the least degree of a curve with the given multiplicities.
    Oracle {
        multiplicities: String,
        #[command(flatten)]
        oracle: OracleArgs,
        /// Highest degree scanned (default: sum of multiplicities).
        #[arg(long)]
        d_max: Option<u32>,
    },
    /// Batch bound computation over a quasi-homogeneous family or a list.
    Scan {
        /// Range of r.
        #[arg(long, required_unless_present = "system")]
        r: Option<String>,
        /// Range of nu.
        #[arg(long, required_unless_present = "system")]
        nu: Option<String>,
        /// mu = factor*nu + offset; factor is an integer or "s0".
        #[arg(long, default_value = "s0")]
        mu_factor: String,
        /// Range of offsets added to factor*nu.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        offset: String,
        /// Explicit systems instead of a family (repeatable).
        #[arg(long, conflicts_with_all = ["r", "nu"])]
        system: Vec<String>,
        /// Add the oracle's alpha_hat to each row.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        oracle_args: OracleArgs,
        /// Maximum number of instances.
        #[arg(long, default_value_t = scan::DEFAULT_INSTANCE_CAP)]
        cap: u64,
    },
}

#[derive(Serialize)]
struct BoundOutput<'a> {
    input: &'a MultiplicitySystem,
    sorted: &'a MultiplicitySystem,
    /// 1-based input position of each sorted entry.
    permutation: &'a [usize],
    bound: i64,
    certificate: NagataCertificate,
    trace: &'a SpecializationTrace,
}

#[derive(Serialize)]
struct CorollaryRow {
    r: u64,
    threshold: u64,
    verified: CertifiedBool,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let format = cli.format;
    match cli.command {
        Command::Unload { cluster, multiplicities, strategy } => {
            let text = std::fs::read_to_string(&cluster)
                .map_err(|e| CliError::Input(format!("{}: {e}", cluster.display())))?;
            let cluster = ProximityMatrix::from_json(&text)?;
            let m = input::multiplicities(&multiplicities)?;
            let (_, report) = unload(&cluster, &m, strategy.into())?;
            emit(format, &report, || {
                let mut t = Table::new(vec!["step", "point", "amount", "excess_before", "system"]);
                let mut current = report.initial.entries().to_vec();
                t.push(vec!["0".into(), "".into(), "".into(), "".into(), report.initial.to_string()]);
                for (n, step) in report.steps.iter().enumerate() {
                    current[step.point - 1] += step.amount;
                    for q in cluster.relations().iter().filter(|(j, _)| *j == step.point) {
                        current[q.1 - 1] -= step.amount;
                    }
                    t.push(vec![
                        (n + 1).to_string(),
                        step.point.to_string(),
                        step.amount.to_string(),
                        step.excess_before.to_string(),
                        MultiplicitySystem::from(current.clone()).to_string(),
                    ]);
                }
                t.footer.push(format!("final {}", report.final_system));
                t
            })
        }
        Command::Chain { r, i } => {
            let cluster = ProximityMatrix::chain(r, i)?;
            println!("{}", cluster.to_json());
            Ok(())
        }
        Command::Bound { multiplicities } => {
            let m = input::multiplicities(&multiplicities)?;
            let (sorted, permutation) = input::normalize(&m)?;
            let trace = specialize(&sorted)?;
            let out = BoundOutput {
                input: &m,
                sorted: &sorted,
                permutation: &permutation,
                bound: trace.bound,
                certificate: trace.certificate(),
                trace: &trace,
            };
            emit(format, &out, || {
                let mut t = Table::new(vec!["family", "steps", "system"]);
                for stage in &trace.stages {
                    t.push(vec![
                        stage.family.to_string(),
                        stage.report.steps.len().to_string(),
                        stage.system_after.to_string(),
                    ]);
                }
                t.footer.push(format!("sorted {sorted}, permutation {permutation:?}"));
                t.footer.push(format!("bound {}", trace.bound));
                let cert = trace.certificate();
                t.footer.push(format!("certified {}: {}", cert.certified, cert.comparison));
                t
            })
        }
        Command::Analytic { r, s, precision } => {
            if r <= 9 {
                return Err(CliError::Input(format!("analytic needs r > 9, got {r}")));
            }
            let s = match s {
                Some(s) => s,
                None => corollary_threshold(r)?,
            };
            let report = proof_chain_check_with(r, s, precision)?;
            emit(format, &report, || {
                let mut t = Table::new(vec!["link", "relation", "lhs", "rhs", "holds", "provenance"]);
                for link in &report.links {
                    t.push(vec![
                        link.id.clone(),
                        link.relation.clone(),
                        link.lhs.decimal.clone(),
                        link.rhs.decimal.clone(),
                        if link.holds.certified { link.holds.value.to_string() } else { "undecided".into() },
                        format!("{:?}", link.provenance).to_lowercase(),
                    ]);
                }
                let failed = report.failed_links();
                t.footer.push(format!(
                    "r = {}, s = {}, s0 = {}; failed: {}",
                    report.r,
                    report.s,
                    report.s0,
                    if failed.is_empty() { "none".into() } else { failed.join(", ") }
                ));
                t
            })?;
            if report.precision_exhausted() {
                return Err(CliError::Precision(format!("some link undecided at {precision} bits")));
            }
            Ok(())
        }
        Command::Corollary { range, precision } => {
            let range = input::nonnegative_range(&range, "r")?;
            let mut rows = Vec::new();
            for r in range {
                let threshold = corollary_threshold(r)?;
                let verified = verify_untros_with(r, threshold, precision)?;
                rows.push(CorollaryRow { r, threshold, verified });
            }
            emit(format, &rows, || {
                let mut t = Table::new(vec!["r", "threshold", "verified", "precision"]);
                for row in &rows {
                    t.push(vec![
                        row.r.to_string(),
                        row.threshold.to_string(),
                        if row.verified.certified { row.verified.value.to_string() } else { "undecided".into() },
                        row.verified.precision_used.to_string(),
                    ]);
                }
                t
            })?;
            if let Some(row) = rows.iter().find(|row| !row.verified.certified) {
                return Err(CliError::Precision(format!("r = {} undecided at {precision} bits", row.r)));
            }
            Ok(())
        }
        Command::Oracle { multiplicities, oracle, d_max } => {
            let m = input::multiplicities(&multiplicities)?;
            let (sorted, _) = input::normalize(&m)?;
            let result = alpha_oracle_with(&sorted, oracle.options(d_max))?;
            emit(format, &result, || {
                let mut t = Table::new(vec!["degree", "dimension", "expected"]);
                for (&d, &dim) in &result.dims {
                    t.push(vec![d.to_string(), dim.to_string(), expected_dimension(d, &sorted).to_string()]);
                }
                t.footer.push(format!("alpha_hat {} ({})", result.alpha_hat, result.exactness));
                t
            })
        }
        Command::Scan { r, nu, mu_factor, offset, system, oracle, oracle_args, cap } => {
            let family = if system.is_empty() {
                let factor = match mu_factor.trim() {
                    "s0" => MuFactor::S0,
                    f => MuFactor::Fixed(
                        f.parse()
                            .map_err(|_| CliError::Input(format!("mu factor must be an integer or s0, got {f:?}")))?,
                    ),
                };
                Family::QuasiHomogeneous {
                    r: input::nonnegative_range(r.as_deref().unwrap_or_default(), "r")?,
                    nu: input::nonnegative_range(nu.as_deref().unwrap_or_default(), "nu")?,
                    factor,
                    offset: input::range(&offset)?,
                }
            } else {
                Family::Explicit(
                    system
                        .iter()
                        .map(|s| input::multiplicities(s))
                        .collect::<Result<_, _>>()?,
                )
            };
            let spec = ScanSpec {
                family,
                cap,
                oracle: oracle.then(|| oracle_args.options(None)),
            };
            let rows = scan::run(&spec)?;
            emit(format, &rows, || scan::table(&rows))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nagata: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
