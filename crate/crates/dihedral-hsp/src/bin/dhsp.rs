//! Command-line experiment runner. Thin argument handling over
//! `dihedral_hsp::harness`; all logic lives in the library.
//!
//! Exit codes: 0 ok, 2 invalid spec, 3 simulator resource cap,
//! 4 verification failure.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dihedral_hsp::error::Error;
use dihedral_hsp::harness::{
    self, DistSpec, ExperimentSpec, PeakSpec, SubgroupSelector,
};
use dihedral_hsp::oracle::{read_oracle_dump, write_oracle_dump, HiddenFunction};
use dihedral_hsp::{Backend, DihedralGroup, Order2Spec, StatisticVariant, Subgroup};

#[derive(Parser)]
#[command(
    name = "dhsp",
    version,
    about = "Hidden subgroup experiments on dihedral groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full solver against a chosen hidden subgroup; write CSV
    /// trial records and a JSON summary
    Solve(SolveArgs),
    /// Exact outcome distributions per backend, with optional empirical
    /// comparison
    Dist(DistArgs),
    /// Peak-statistic success-rate study, or a deterministic replay of
    /// injected samples
    Peak(PeakArgs),
    /// Representation-theoretic identity checks for D_N
    VerifyReps(VerifyRepsArgs),
    /// Write a replayable oracle table
    DumpOracle(DumpOracleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    ClosedForm,
    StateVector,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::ClosedForm => Backend::ClosedForm,
            BackendArg::StateVector => Backend::StateVector,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    CosMin,
    PaperSin,
}

impl From<VariantArg> for StatisticVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::CosMin => StatisticVariant::CosMin,
            VariantArg::PaperSin => StatisticVariant::PaperSin,
        }
    }
}

#[derive(Args)]
struct SelectorArgs {
    /// Hidden reflection subgroup {(0,0),(k0,1)}
    #[arg(long, conflicts_with_all = ["trivial", "gens", "random", "exhaustive"])]
    k0: Option<u64>,
    /// Trivial hidden subgroup
    #[arg(long, conflicts_with_all = ["gens", "random", "exhaustive"])]
    trivial: bool,
    /// Explicit generators, e.g. "4,0;1,1"
    #[arg(long, conflicts_with_all = ["random", "exhaustive"])]
    gens: Option<String>,
    /// Fresh random subgroup per trial
    #[arg(long, conflicts_with = "exhaustive")]
    random: bool,
    /// Every subgroup of D_N
    #[arg(long)]
    exhaustive: bool,
}

impl SelectorArgs {
    fn to_selector(&self) -> Result<SubgroupSelector, Error> {
        if let Some(k0) = self.k0 {
            Ok(SubgroupSelector::Reflection(k0))
        } else if self.trivial {
            Ok(SubgroupSelector::Trivial)
        } else if let Some(gens) = &self.gens {
            Ok(SubgroupSelector::Generators(parse_generators(gens)?))
        } else if self.random {
            Ok(SubgroupSelector::Random)
        } else if self.exhaustive {
            Ok(SubgroupSelector::Exhaustive)
        } else {
            Err(Error::BadSpec(
                "choose a subgroup: --k0, --trivial, --gens, --random or --exhaustive".into(),
            ))
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    n: u64,
    #[command(flatten)]
    selector: SelectorArgs,
    #[arg(long, default_value_t = 10)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = BackendArg::ClosedForm)]
    backend: BackendArg,
    #[arg(long, value_enum, default_value_t = VariantArg::CosMin)]
    variant: VariantArg,
    /// Output prefix: writes `<out>.csv` and `<out>.json`
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write per-trial results with reduction traces as a JSON array
    #[arg(long)]
    json_results: Option<PathBuf>,
    /// Append the wall-time column to the CSV (breaks byte reproducibility)
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct DistArgs {
    #[arg(long, required_unless_present = "from_dump")]
    n: Option<u64>,
    #[arg(long, conflicts_with_all = ["trivial", "half_turn", "from_dump"])]
    k0: Option<u64>,
    #[arg(long, conflicts_with_all = ["half_turn", "from_dump"])]
    trivial: bool,
    /// The rotation subgroup {(0,0),(N/2,0)} (even N)
    #[arg(long, conflicts_with = "from_dump")]
    half_turn: bool,
    /// Also run the state-vector backend and report the total variation
    #[arg(long)]
    compare_backends: bool,
    /// Empirical sample count for a chi-square comparison (0 = off)
    #[arg(long, default_value_t = 0)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Replay an oracle dump through the state-vector backend
    #[arg(long)]
    from_dump: Option<PathBuf>,
    /// Write the empirical draws as `<prefix>.csv` plus a `<prefix>.json`
    /// metadata sidecar (needs --samples)
    #[arg(long, requires = "samples")]
    dump_samples: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PeakArgs {
    #[arg(long)]
    n: u64,
    /// Study a single k0 instead of sweeping 1..=N/2
    #[arg(long)]
    k0: Option<u64>,
    #[arg(long, default_value_t = 200)]
    trials: u64,
    /// Samples per trial (default ⌈64 ln N⌉)
    #[arg(long)]
    m: Option<u64>,
    /// Replay explicit samples, e.g. "0,2,2,0"
    #[arg(long)]
    samples: Option<String>,
    #[arg(long, default_value_t = 0)]
    branch: u8,
    #[arg(long, value_enum, default_value_t = VariantArg::CosMin)]
    variant: VariantArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyRepsArgs {
    #[arg(long)]
    n: u64,
    /// Check the indicator theorem over every subgroup of D_N
    #[arg(long)]
    all_subgroups: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DumpOracleArgs {
    #[arg(long)]
    n: u64,
    #[command(flatten)]
    selector: SelectorArgs,
    /// Label permutation seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Destination file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_generators(text: &str) -> Result<Vec<(i64, u8)>, Error> {
    text.split(';')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let fields: Vec<&str> = part.split(',').map(str::trim).collect();
            if fields.len() != 2 {
                return Err(Error::BadSpec(format!("bad generator '{part}'")));
            }
            let a: i64 = fields[0]
                .parse()
                .map_err(|_| Error::BadSpec(format!("bad rotation part '{}'", fields[0])))?;
            let b: u8 = fields[1]
                .parse()
                .map_err(|_| Error::BadSpec(format!("bad reflection bit '{}'", fields[1])))?;
            if b > 1 {
                return Err(Error::BadSpec("reflection bit must be 0 or 1".into()));
            }
            Ok((a, b))
        })
        .collect()
}

fn parse_sample_list(text: &str) -> Result<Vec<u64>, Error> {
    text.split(',')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| Error::BadSpec(format!("bad sample '{part}'")))
        })
        .collect()
}

fn emit_json<T: serde::Serialize>(value: &T, out: Option<&Path>) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).expect("report serialization");
    println!("{text}");
    if let Some(path) = out {
        std::fs::write(path, text + "\n")?;
    }
    Ok(())
}

fn cmd_solve(args: &SolveArgs) -> Result<(), Error> {
    let spec = ExperimentSpec {
        n: args.n,
        selector: args.selector.to_selector()?,
        trials: args.trials,
        seed: args.seed,
        backend: args.backend.into(),
        variant: args.variant.into(),
    };
    let run = harness::run_solve(&spec)?;
    if let Some(prefix) = &args.out {
        let mut csv = File::create(with_extension(prefix, "csv"))?;
        harness::write_solve_csv(&run.records, args.timing, &mut csv)?;
        let json = serde_json::to_string_pretty(&run.summary).expect("summary serialization");
        let mut file = File::create(with_extension(prefix, "json"))?;
        writeln!(file, "{json}")?;
    }
    if let Some(path) = &args.json_results {
        let json = serde_json::to_string_pretty(&run.details).expect("details serialization");
        let mut file = File::create(path)?;
        writeln!(file, "{json}")?;
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&run.summary).expect("summary serialization")
    );
    Ok(())
}

fn with_extension(prefix: &Path, ext: &str) -> PathBuf {
    let mut path = prefix.to_path_buf();
    match path.extension() {
        Some(existing) if existing == ext => path,
        _ => {
            path.set_extension(ext);
            path
        }
    }
}

fn cmd_dist(args: &DistArgs) -> Result<(), Error> {
    if let Some(dump) = &args.from_dump {
        let oracle = read_oracle_dump(BufReader::new(File::open(dump)?))?;
        let report = harness::distribution_from_oracle(&oracle)?;
        return emit_json(&report, args.out.as_deref());
    }
    let n = args
        .n
        .ok_or_else(|| Error::BadSpec("--n is required".into()))?;
    let hidden = if args.trivial {
        Order2Spec::Trivial
    } else if args.half_turn {
        Order2Spec::HalfTurn
    } else if let Some(k0) = args.k0 {
        Order2Spec::Reflection(k0)
    } else {
        return Err(Error::BadSpec(
            "choose a subgroup: --k0, --trivial or --half-turn".into(),
        ));
    };
    let report = harness::run_distribution(&DistSpec {
        n,
        hidden,
        compare_backends: args.compare_backends,
        samples: args.samples,
        seed: args.seed,
    })?;
    if let Some(prefix) = &args.dump_samples {
        let (set, meta) = harness::sample_dump(n, hidden, args.samples, args.seed);
        let mut csv = File::create(with_extension(prefix, "csv"))?;
        harness::write_sample_csv(&set, &mut csv)?;
        let json = serde_json::to_string_pretty(&meta).expect("metadata serialization");
        let mut file = File::create(with_extension(prefix, "json"))?;
        writeln!(file, "{json}")?;
    }
    emit_json(&report, args.out.as_deref())
}

fn cmd_peak(args: &PeakArgs) -> Result<(), Error> {
    let replay = args.samples.as_deref().map(parse_sample_list).transpose()?;
    let report = harness::run_peak_study(&PeakSpec {
        n: args.n,
        k0: args.k0,
        trials: args.trials,
        m: args.m,
        branch: args.branch,
        variant: args.variant.into(),
        seed: args.seed,
        replay,
    })?;
    emit_json(&report, args.out.as_deref())
}

fn cmd_verify_reps(args: &VerifyRepsArgs) -> Result<bool, Error> {
    let report = harness::run_verify_reps(args.n, args.all_subgroups)?;
    emit_json(&report, args.out.as_deref())?;
    Ok(report.ok)
}

fn cmd_dump_oracle(args: &DumpOracleArgs) -> Result<(), Error> {
    let group = DihedralGroup::new(args.n);
    let hidden = match args.selector.to_selector()? {
        SubgroupSelector::Trivial => Subgroup::trivial(group),
        SubgroupSelector::Reflection(k0) => {
            if k0 >= args.n {
                return Err(Error::BadSpec(format!(
                    "k0 = {k0} out of range for N = {}",
                    args.n
                )));
            }
            Subgroup::reflection(group, k0 as i64)
        }
        SubgroupSelector::Generators(pairs) => {
            let gens: Vec<_> = pairs.iter().map(|&(a, b)| group.element(a, b)).collect();
            Subgroup::closure(group, &gens)
        }
        _ => {
            return Err(Error::BadSpec(
                "dump-oracle needs an explicit subgroup (--k0, --trivial or --gens)".into(),
            ))
        }
    };
    let oracle = HiddenFunction::build(group, &hidden, args.seed)?;
    match &args.out {
        Some(path) => {
            let mut file = File::create(path)?;
            write_oracle_dump(&oracle, &mut file)?;
        }
        None => {
            let stdout = std::io::stdout();
            write_oracle_dump(&oracle, &mut stdout.lock())?;
        }
    }
    Ok(())
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::BadSpec(_) => 2,
        Error::AmplitudeCap { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome: Result<bool, Error> = match &cli.command {
        Command::Solve(args) => cmd_solve(args).map(|()| true),
        Command::Dist(args) => cmd_dist(args).map(|()| true),
        Command::Peak(args) => cmd_peak(args).map(|()| true),
        Command::VerifyReps(args) => cmd_verify_reps(args),
        Command::DumpOracle(args) => cmd_dump_oracle(args).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(4),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
