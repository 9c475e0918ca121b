//! Experiment harness: instance generation, cost evaluation, ratio
//! sweeps, and online simulation with CSV output.
//!
//! Exit codes: 0 success, 2 validation error (bad files, bad parameters,
//! scheme preconditions), 3 capacity error (enumeration budget, exact
//! tour cap, generator rejection budget exhausted), 1 anything else.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use disroute::instance::InstanceError;
use disroute::io::{self, InstanceData, IoError, LoadedInstance};
use disroute::offline::{self, EvalError, EvalLimits, OracleKind};
use disroute::online;
use disroute::partition::{PartitionError, SchemeKind, DEFAULT_LAMBDA};
use disroute::tsp::DEFAULT_EXACT_CAP;
use disroute::{FamilyParams, OfflineInstance, PartitionScheme, Real};

#[derive(Parser)]
#[command(
    name = "disroute",
    about = "Static partition schemes for distributed multi-depot routing",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file from a named family.
    Gen(GenArgs),
    /// Evaluate the distributed cost of a scheme on an instance.
    Eval(EvalArgs),
    /// Compare a scheme against the exact optimum.
    Ratio(RatioArgs),
    /// Ratio sweep over seeds and fleet sizes with a summary table.
    Sweep(SweepArgs),
    /// Simulate the distributed online algorithm on a release-dated instance.
    Online(OnlineArgs),
    /// Check an instance file (structure and metric axioms).
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Voronoi,
    Level,
    Local,
}

impl From<SchemeArg> for SchemeKind {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Voronoi => SchemeKind::Voronoi,
            SchemeArg::Level => SchemeKind::Level,
            SchemeArg::Local => SchemeKind::Local,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OracleArg {
    Exact,
    Heuristic,
}

impl From<OracleArg> for OracleKind {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::Exact => OracleKind::Exact,
            OracleArg::Heuristic => OracleKind::Heuristic,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum FamilyArg {
    LineVoronoi,
    Simplex,
    LocalAdversarial,
    RandomLine,
    RandomBoundedRatio,
}

#[derive(Args)]
struct LimitArgs {
    /// Exact tour solver cap on requests per server.
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    exact_cap: usize,
    /// Enumeration budget for the optimal-assignment oracle (m^n).
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
}

impl LimitArgs {
    fn limits(&self) -> EvalLimits {
        EvalLimits {
            exact_cap: self.exact_cap,
            enumeration_budget: self.budget,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Number of servers.
    #[arg(long)]
    m: Option<usize>,
    /// Number of requests (random families).
    #[arg(long)]
    n: Option<usize>,
    /// Horizontal offset of the line-voronoi family.
    #[arg(long)]
    k: Option<Real>,
    /// Cluster radius of the simplex family.
    #[arg(long)]
    eps: Option<Real>,
    /// Depot-spread bound (bounded-ratio family) or spread parameter of
    /// the local-adversarial family.
    #[arg(long)]
    f: Option<Real>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output instance file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum)]
    scheme: SchemeArg,
    #[arg(long, value_enum, default_value_t = OracleArg::Exact)]
    oracle: OracleArg,
    /// Level-partition disk growth factor, in (1/2, 1).
    #[arg(long, default_value_t = DEFAULT_LAMBDA)]
    lambda: Real,
    #[command(flatten)]
    limit: LimitArgs,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RatioArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum)]
    scheme: SchemeArg,
    #[arg(long, default_value_t = DEFAULT_LAMBDA)]
    lambda: Real,
    #[command(flatten)]
    limit: LimitArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    scheme: SchemeArg,
    /// Random family to sweep; level schemes need random-line instances.
    #[arg(long, value_enum, default_value_t = FamilyArg::RandomLine)]
    family: FamilyArg,
    /// Fleet sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    m: Vec<usize>,
    /// Spread bounds for the bounded-ratio family, comma separated.
    #[arg(long, value_delimiter = ',')]
    f: Vec<Real>,
    /// Instances per (m, f) cell.
    #[arg(long, default_value_t = 50)]
    seeds: u64,
    /// Base seed; instance i uses seed + i.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Largest request count; each instance draws n from 0..=n_max.
    #[arg(long, default_value_t = 7)]
    n_max: usize,
    #[arg(long, default_value_t = DEFAULT_LAMBDA)]
    lambda: Real,
    #[command(flatten)]
    limit: LimitArgs,
    /// Per-instance rows are written here; the summary goes to stdout.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct OnlineArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum)]
    scheme: SchemeArg,
    #[arg(long, default_value_t = DEFAULT_LAMBDA)]
    lambda: Real,
    #[command(flatten)]
    limit: LimitArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    instance: PathBuf,
}

enum CliError {
    Validation(String),
    Capacity(String),
    Other(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::Other(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Capacity(m) | CliError::Other(m) => m,
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Io(err) => CliError::Other(err.to_string()),
            IoError::Invalid(err) => CliError::from(err),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<InstanceError> for CliError {
    fn from(e: InstanceError) -> Self {
        match e {
            InstanceError::RejectionBudgetExhausted { .. } => CliError::Capacity(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<PartitionError> for CliError {
    fn from(e: PartitionError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::CapExceeded { .. } | EvalError::BudgetExceeded { .. } => {
                CliError::Capacity(e.to_string())
            }
            EvalError::Tsp(err) => CliError::Validation(err.to_string()),
        }
    }
}

impl From<online::SimError> for CliError {
    fn from(e: online::SimError) -> Self {
        match e {
            online::SimError::NoGeodesic => CliError::Validation(e.to_string()),
            online::SimError::Eval(err) => CliError::from(err),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Other(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Ratio(args) => cmd_ratio(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Online(args) => cmd_online(args),
        Command::Validate(args) => cmd_validate(args),
    }
}

fn require<T>(value: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Validation(format!("family {family} requires --{flag}")))
}

fn family_params(args: &GenArgs) -> Result<FamilyParams, CliError> {
    Ok(match args.family {
        FamilyArg::LineVoronoi => FamilyParams::LineVoronoi {
            m: require(args.m, "m", "line_voronoi")?,
            k: require(args.k, "k", "line_voronoi")?,
        },
        FamilyArg::Simplex => FamilyParams::Simplex {
            m: require(args.m, "m", "simplex")?,
            eps: require(args.eps, "eps", "simplex")?,
        },
        FamilyArg::LocalAdversarial => FamilyParams::LocalAdversarial {
            f: require(args.f, "f", "local_adversarial")?,
        },
        FamilyArg::RandomLine => FamilyParams::RandomLine {
            m: require(args.m, "m", "random_line")?,
            n: require(args.n, "n", "random_line")?,
            seed: args.seed,
        },
        FamilyArg::RandomBoundedRatio => FamilyParams::RandomBoundedRatio {
            m: require(args.m, "m", "random_bounded_ratio")?,
            n: require(args.n, "n", "random_bounded_ratio")?,
            max_ratio: require(args.f, "f", "random_bounded_ratio")?,
            seed: args.seed,
        },
    })
}

fn cmd_gen(args: GenArgs) -> Result<(), CliError> {
    let params = family_params(&args)?;
    let inst = params.generate()?;
    io::save_offline(&inst, Some(params.name()), &args.out)?;
    println!(
        "wrote {} ({}, m={}, n={})",
        args.out.display(),
        params.name(),
        inst.server_count(),
        inst.request_count()
    );
    Ok(())
}

fn instance_id(path: &Path) -> String {
    path.file_stem().map_or_else(
        || "instance".to_string(),
        |s| s.to_string_lossy().into_owned(),
    )
}

fn load(path: &Path) -> Result<(LoadedInstance, String, String), CliError> {
    let loaded = io::load(path)?;
    let family = loaded.family.clone().unwrap_or_else(|| "file".to_string());
    Ok((loaded, instance_id(path), family))
}

fn build_scheme(
    kind: SchemeArg,
    inst: &OfflineInstance,
    lambda: Real,
) -> Result<PartitionScheme, CliError> {
    Ok(PartitionScheme::build(
        kind.into(),
        inst.depots().clone(),
        Some(lambda),
    )?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_eval(args: EvalArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let (loaded, id, family) = load(&args.instance)?;
    let inst = loaded.to_offline();
    let scheme = build_scheme(args.scheme, &inst, args.lambda)?;
    let report = offline::dis_cost(&scheme, &inst, args.oracle.into(), &args.limit.limits())?;
    let per_server: Vec<String> = report.per_server.iter().map(|c| c.to_string()).collect();
    let mut csv = String::from("instance_id,family,m,n,scheme,oracle,dis,per_server,runtime_ms\n");
    writeln!(
        csv,
        "{id},{family},{},{},{},{},{},{},{}",
        inst.server_count(),
        inst.request_count(),
        report.scheme,
        report.oracle,
        report.total,
        per_server.join(";"),
        started.elapsed().as_millis()
    )
    .unwrap();
    emit(args.out.as_deref(), &csv)
}

fn cmd_ratio(args: RatioArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let (loaded, id, family) = load(&args.instance)?;
    let inst = loaded.to_offline();
    let scheme = build_scheme(args.scheme, &inst, args.lambda)?;
    let report = offline::approx_ratio(&scheme, &inst, &args.limit.limits())?;
    let mut csv = String::from("instance_id,family,m,n,scheme,dis,opt,ratio,runtime_ms\n");
    writeln!(
        csv,
        "{id},{family},{},{},{},{},{},{},{}",
        inst.server_count(),
        inst.request_count(),
        scheme.kind(),
        report.dis,
        report.opt,
        report.ratio,
        started.elapsed().as_millis()
    )
    .unwrap();
    emit(args.out.as_deref(), &csv)
}

fn cmd_online(args: OnlineArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let (loaded, id, family) = load(&args.instance)?;
    // Files without release dates run with every request released at 0.
    let inst = match loaded.data {
        InstanceData::Online(inst) => inst,
        InstanceData::Offline(inst) => {
            let zeros = vec![0.0; inst.request_count()];
            inst.with_release_dates(zeros)?
        }
    };
    let scheme = build_scheme(args.scheme, &inst.locations(), args.lambda)?;
    let report = online::check_reduction(&scheme, &inst, &args.limit.limits())?;
    let mut csv = String::from(
        "instance_id,family,m,n,scheme,doa,bound,lower_bound,realized_ratio,holds,runtime_ms\n",
    );
    writeln!(
        csv,
        "{id},{family},{},{},{},{},{},{},{},{},{}",
        inst.server_count(),
        inst.request_count(),
        scheme.kind(),
        report.online_total,
        report.offline_bound,
        report.lower_bound,
        report.realized_ratio,
        report.holds,
        started.elapsed().as_millis()
    )
    .unwrap();
    emit(args.out.as_deref(), &csv)
}

fn cmd_validate(args: ValidateArgs) -> Result<(), CliError> {
    let (loaded, id, _) = load(&args.instance)?;
    println!(
        "{id}: ok ({}, m={}, n={})",
        match loaded.data {
            InstanceData::Offline(_) => "offline",
            InstanceData::Online(_) => "online",
        },
        loaded.server_count(),
        loaded.request_count()
    );
    Ok(())
}

struct SweepCell {
    m: usize,
    /// Spread bound for bounded-ratio sweeps.
    f: Option<Real>,
    seed: u64,
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let scheme_kind: SchemeKind = args.scheme.into();
    let family = match args.family {
        FamilyArg::RandomLine => "random_line",
        FamilyArg::RandomBoundedRatio => "random_bounded_ratio",
        _ => {
            return Err(CliError::Validation(
                "sweep supports the random_line and random_bounded_ratio families".to_string(),
            ))
        }
    };
    if scheme_kind == SchemeKind::Level && args.family != FamilyArg::RandomLine {
        return Err(CliError::Validation(
            "the level scheme requires collinear depots; sweep it on random_line".to_string(),
        ));
    }
    let fs: Vec<Option<Real>> = match args.family {
        FamilyArg::RandomBoundedRatio => {
            if args.f.is_empty() {
                return Err(CliError::Validation(
                    "random_bounded_ratio sweeps need --f".to_string(),
                ));
            }
            args.f.iter().copied().map(Some).collect()
        }
        _ => vec![None],
    };

    // Lay the grid out first so rows keep a deterministic order however
    // the evaluations are scheduled.
    let mut cells = Vec::new();
    let mut next_seed = args.seed;
    for &f in &fs {
        for &m in &args.m {
            for _ in 0..args.seeds {
                cells.push(SweepCell {
                    m,
                    f,
                    seed: next_seed,
                });
                next_seed += 1;
            }
        }
    }

    let limits = args.limit.limits();
    let rows: Vec<Result<(String, Real), CliError>> = cells
        .par_iter()
        .map(|cell| {
            let started = Instant::now();
            // The request count is part of the draw, derived from the
            // instance seed.
            let n = ChaCha8Rng::seed_from_u64(cell.seed ^ 0x5eed_cafe).gen_range(0..=args.n_max);
            let params = match cell.f {
                None => FamilyParams::RandomLine {
                    m: cell.m,
                    n,
                    seed: cell.seed,
                },
                Some(f) => FamilyParams::RandomBoundedRatio {
                    m: cell.m,
                    n,
                    max_ratio: f,
                    seed: cell.seed,
                },
            };
            let inst = params.generate()?;
            let scheme =
                PartitionScheme::build(scheme_kind, inst.depots().clone(), Some(args.lambda))?;
            let report = offline::approx_ratio(&scheme, &inst, &limits)?;
            let id = match cell.f {
                None => format!("{family}-m{}-s{}", cell.m, cell.seed),
                Some(f) => format!("{family}-m{}-f{}-s{}", cell.m, f, cell.seed),
            };
            let row = format!(
                "{id},{family},{},{n},{},{},{},{},{}\n",
                cell.m,
                scheme_kind,
                report.dis,
                report.opt,
                report.ratio,
                started.elapsed().as_millis()
            );
            Ok((row, report.ratio))
        })
        .collect();

    let mut csv = String::from("instance_id,family,m,n,scheme,dis,opt,ratio,runtime_ms\n");
    let mut ratios = Vec::with_capacity(cells.len());
    for row in rows {
        let (row, ratio) = row?;
        csv.push_str(&row);
        ratios.push(ratio);
    }
    fs::write(&args.out, &csv)?;

    // Summary per (m, f) cell group, in grid order.
    println!("scheme,family,m,f,count,max_ratio,mean_ratio");
    let mut index = 0;
    for &f in &fs {
        for &m in &args.m {
            let group = &ratios[index..index + args.seeds as usize];
            index += group.len();
            let max = group.iter().copied().fold(0.0, Real::max);
            let mean = group.iter().sum::<Real>() / group.len() as Real;
            let f_text = f.map_or_else(String::new, |f| f.to_string());
            println!(
                "{scheme_kind},{family},{m},{f_text},{},{max},{mean}",
                group.len()
            );
        }
    }
    Ok(())
}
