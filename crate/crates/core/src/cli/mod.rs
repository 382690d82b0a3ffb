//! Command-line front end: argument model, dispatch, artifacts and exit
//! codes.

mod recipes;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::circuit::{census, schedule_from_json, schedule_to_json, LocationCensus, Schedule, Structure};
use crate::malignancy::{
    count_malignant_pairs_with, oracle_crosscheck, AlphaMatrix, CrossCheckError, MalignancyFlags, SimError,
};
use crate::montecarlo::{find_pseudothreshold, logical_rate_sweep, sweep_csv, McError, NoiseModel, Sampler, SearchConfig};
use crate::threshold::{threshold_report, ThresholdError, ThresholdInput};
use crate::tiles::{
    build_cnot_exrec, build_ed, build_prep, deviation_report, exrec_from_json, exrec_to_json, EdVariant, ExRec,
    ExRecError, PrepKind, TileSize, TileSpec,
};
use crate::TOOL_VERSION;

pub use recipes::{table3, Table3, Table3Row};

pub const DATA_DIR_ENV: &str = "KNILL2D_DATA_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_COMPUTATION: i32 = 3;

/// Schedule data directory: `$KNILL2D_DATA_DIR` or the bundled `data/v1`.
pub fn data_dir() -> PathBuf {
    match std::env::var_os(DATA_DIR_ENV) {
        Some(d) if !d.is_empty() => PathBuf::from(d),
        _ => Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join("v1"),
    }
}

#[derive(Debug, Parser, Serialize)]
#[command(name = "knill2d", version, about = "C4 postselection tiles: schedules, malignant pairs, thresholds")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum Command {
    /// Build, export and inspect schedules.
    #[command(subcommand)]
    Schedule(ScheduleCmd),
    /// Malignant-pair counting.
    #[command(subcommand)]
    Malignancy(MalignancyCmd),
    /// Analytic threshold from an alpha matrix and a census.
    #[command(subcommand)]
    Threshold(ThresholdCmd),
    /// Monte Carlo pseudo-threshold search.
    #[command(subcommand)]
    Pseudothreshold(PseudoCmd),
    /// Logical error rate sweeps.
    #[command(subcommand, name = "logical-rate")]
    LogicalRate(RateCmd),
    /// Self-contained reproduction recipes.
    #[command(subcommand)]
    Reproduce(ReproduceCmd),
    /// Compare the frame engine with the state-vector oracle.
    #[command(name = "oracle-check")]
    OracleCheck(OracleCheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum TileArg {
    #[value(name = "5x5")]
    FiveByFive,
    #[value(name = "4x4")]
    FourByFour,
    #[value(name = "nonlocal")]
    Nonlocal,
}

impl From<TileArg> for TileSize {
    fn from(t: TileArg) -> TileSize {
        match t {
            TileArg::FiveByFive => TileSize::FiveByFive,
            TileArg::FourByFour => TileSize::FourByFour,
            TileArg::Nonlocal => TileSize::Nonlocal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum VariantArg {
    Plus,
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum StructureArg {
    #[value(name = "I")]
    One,
    #[value(name = "II")]
    Two,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum ScheduleCmd {
    /// Export a single-tile ED schedule as JSON.
    Export {
        #[arg(long, value_enum)]
        ed: VariantArg,
        #[arg(long, value_enum)]
        structure: StructureArg,
        #[arg(long, value_enum, default_value = "5x5")]
        tile: TileArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export an encoded-state preparation schedule.
    Prep {
        #[arg(long, value_enum)]
        kind: VariantArg,
        #[arg(long, value_enum, default_value = "5x5")]
        tile: TileArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the two-tile CNOT exRec.
    Exrec {
        #[arg(long, value_enum, default_value = "5x5")]
        tile: TileArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a schedule or exRec file and print its census.
    Census { file: PathBuf },
    /// Published-versus-reconstructed differences of the shipped schedules.
    Deviations {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct FlagArgs {
    #[arg(long, default_value_t = false, action = clap::ArgAction::Set)]
    pub strict_malignancy: bool,
    #[arg(long, default_value_t = false, action = clap::ArgAction::Set)]
    pub spectator_counts: bool,
}

impl FlagArgs {
    fn flags(&self) -> MalignancyFlags {
        MalignancyFlags { strict_malignancy: self.strict_malignancy, spectator_counts: self.spectator_counts }
    }
}

#[derive(Debug, Subcommand, Serialize)]
pub enum MalignancyCmd {
    /// Count malignant pairs of an exRec.
    Count {
        /// exRec file, or a tile name (5x5, 4x4, nonlocal) for a shipped one.
        #[arg(long)]
        exrec: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        flags: FlagArgs,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Debug, Subcommand, Serialize)]
pub enum ThresholdCmd {
    /// Solve A eps^2 + B eps = 1.
    Solve {
        #[arg(long)]
        alpha: PathBuf,
        /// Census JSON; defaults to the census embedded in the alpha file.
        #[arg(long)]
        census: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        /// File of gamma values (comma or newline separated) to tabulate.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct NoiseArgs {
    #[arg(long)]
    pub exrec: String,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub meas_prep_factor: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[command(flatten)]
    pub flags: FlagArgs,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum PseudoCmd {
    Run {
        #[command(flatten)]
        noise: NoiseArgs,
        /// Widening cap, as a multiple of --trials.
        #[arg(long, default_value_t = 16)]
        max_factor: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand, Serialize)]
pub enum RateCmd {
    /// e(p) on a geometric grid, as CSV.
    Sweep {
        #[command(flatten)]
        noise: NoiseArgs,
        #[arg(long, default_value_t = 1e-4)]
        pmin: f64,
        #[arg(long, default_value_t = 1e-2)]
        pmax: f64,
        #[arg(long, default_value_t = 9)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand, Serialize)]
pub enum ReproduceCmd {
    /// Census and thresholds of the 4x4 and 5x5 tiles.
    Table3 {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct OracleCheckArgs {
    #[arg(long, value_enum, default_value = "plus")]
    pub ed: VariantArg,
    #[arg(long, default_value_t = 2)]
    pub max_faults: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("validation failed: {0}")]
    Validation(String, Value),
    #[error("{0}")]
    Computation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Validation(..) => EXIT_VALIDATION,
            CliError::Computation(_) => EXIT_COMPUTATION,
        }
    }

    /// Machine-readable form written to stderr.
    pub fn to_json(&self) -> Value {
        let (kind, detail) = match self {
            CliError::Usage(_) => ("usage", Value::Null),
            CliError::Validation(_, d) => ("validation", d.clone()),
            CliError::Computation(_) => ("computation", Value::Null),
        };
        json!({ "error": { "kind": kind, "message": self.to_string(), "detail": detail, "exit_code": self.exit_code() } })
    }
}

impl From<ExRecError> for CliError {
    fn from(e: ExRecError) -> CliError {
        match e {
            ExRecError::Invalid { name, report } => CliError::Validation(
                format!("schedule {name:?} has {} violations", report.violations.len()),
                serde_json::to_value(&report).unwrap_or(Value::Null),
            ),
            ExRecError::Json(m) => CliError::Usage(m),
            other => CliError::Validation(other.to_string(), Value::Null),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> CliError {
        match e {
            SimError::ExRec(inner) => inner.into(),
            other => CliError::Computation(other.to_string()),
        }
    }
}

impl From<McError> for CliError {
    fn from(e: McError) -> CliError {
        match e {
            McError::Sim(inner) => inner.into(),
            McError::Model(m) => CliError::Usage(format!("invalid noise model: {m}")),
            McError::NoTrials => CliError::Usage("trials must be at least 1".into()),
            other => CliError::Computation(other.to_string()),
        }
    }
}

impl From<ThresholdError> for CliError {
    fn from(e: ThresholdError) -> CliError {
        match e {
            ThresholdError::BadGamma(_) => CliError::Usage(e.to_string()),
            ThresholdError::Degenerate => CliError::Computation(e.to_string()),
        }
    }
}

impl From<CrossCheckError> for CliError {
    fn from(e: CrossCheckError) -> CliError {
        match e {
            CrossCheckError::Sim(inner) => inner.into(),
            other => CliError::Computation(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Computation(format!("cannot write {}: {e}", p.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(CliError::Computation(format!("cannot write to stdout: {e}")))
                }
                _ => Ok(()),
            }
        }
    }
}

/// Every JSON artifact carries the tool version, the configuration and the
/// content hashes of the schedules it was computed from.
fn artifact(config: &RunConfig, hashes: BTreeMap<String, String>, result: Value) -> String {
    let v = json!({
        "tool_version": TOOL_VERSION,
        "config": config,
        "schedule_hashes": hashes,
        "result": result,
    });
    serde_json::to_string_pretty(&v).expect("artifact serializes")
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Loads an exRec from a file, or resolves a tile name through the data
/// directory and falls back to building it.
pub fn load_exrec(spec: &str) -> Result<ExRec, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        let rec = exrec_from_json(&read(path)?)?;
        rec.check()?;
        return Ok(rec);
    }
    let size: TileSize = spec.parse().map_err(|_| CliError::Usage(format!("no exRec file or tile named {spec:?}")))?;
    let shipped = data_dir().join("schedules").join(format!("cnot_exrec_{}.json", size.label()));
    if shipped.is_file() {
        let rec = exrec_from_json(&read(&shipped)?)?;
        rec.check()?;
        return Ok(rec);
    }
    Ok(build_cnot_exrec(size))
}

fn structure(s: StructureArg) -> Structure {
    match s {
        StructureArg::One => Structure::I,
        StructureArg::Two => Structure::II,
    }
}

fn variant(v: VariantArg) -> EdVariant {
    match v {
        VariantArg::Plus => EdVariant::Plus,
        VariantArg::Zero => EdVariant::Zero,
    }
}

fn parse_gammas(text: &str) -> Result<Vec<f64>, CliError> {
    text.split([',', '\n', '\r', ' ', '\t'])
        .filter(|t| !t.trim().is_empty() && !t.trim().eq_ignore_ascii_case("gamma"))
        .map(|t| t.trim().parse::<f64>().map_err(|e| CliError::Usage(format!("bad gamma {t:?}: {e}"))))
        .collect()
}

fn census_checked(s: &Schedule) -> Result<LocationCensus, CliError> {
    census(s).map_err(|r| {
        CliError::Validation(format!("schedule {:?} has {} violations", s.name, r.violations.len()), to_value(&r))
    })
}

/// Executes one parsed command.
pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let mut hashes = BTreeMap::new();
    match &config.command {
        Command::Schedule(cmd) => match cmd {
            ScheduleCmd::Export { ed, structure: st, tile, out } => {
                let s = build_ed(variant(*ed), &TileSpec::new((*tile).into(), structure(*st)));
                census_checked(&s)?;
                emit(out.as_deref(), &schedule_to_json(&s))
            }
            ScheduleCmd::Prep { kind, tile, out } => {
                let kind = if *kind == VariantArg::Plus { PrepKind::Plus } else { PrepKind::Zero };
                let s = build_prep(kind, &TileSpec::new((*tile).into(), Structure::I));
                census_checked(&s)?;
                emit(out.as_deref(), &schedule_to_json(&s))
            }
            ScheduleCmd::Exrec { tile, out } => emit(out.as_deref(), &exrec_to_json(&build_cnot_exrec((*tile).into()))),
            ScheduleCmd::Census { file } => {
                let text = read(file)?;
                let (name, sched) = match exrec_from_json(&text) {
                    Ok(rec) => {
                        rec.check()?;
                        hashes.insert(rec.name.clone(), rec.content_hash());
                        (rec.name.clone(), rec.noisy)
                    }
                    Err(_) => {
                        let s = schedule_from_json(&text).map_err(|e| CliError::Usage(e.to_string()))?;
                        hashes.insert(s.name.clone(), crate::circuit::content_hash(&s));
                        (s.name.clone(), s)
                    }
                };
                let c = census_checked(&sched)?;
                emit(None, &artifact(config, hashes, json!({ "schedule": name, "census": c })))
            }
            ScheduleCmd::Deviations { out } => {
                emit(out.as_deref(), &serde_json::to_string_pretty(&deviation_report()).expect("serializes"))
            }
        },
        Command::Malignancy(MalignancyCmd::Count { exrec, out, flags, jobs }) => {
            let rec = load_exrec(exrec)?;
            hashes.insert(rec.name.clone(), rec.content_hash());
            let c = census_checked(&rec.noisy)?;
            let count = count_malignant_pairs_with(&rec, flags.flags(), *jobs)?;
            let doc = json!({
                "format": crate::malignancy::ALPHA_FORMAT,
                "version": 1,
                "upper": count.alpha.upper,
                "total": count.alpha.total(),
                "census": c,
                "flags": count.flags,
                "pairs_checked": count.pairs_checked,
                "malignant_singles": count.malignant_singles,
                "diff_vs_reference": count.alpha.diff(&AlphaMatrix::reference()),
                "schedule_hash": rec.content_hash(),
                "tool_version": TOOL_VERSION,
                "config": config,
            });
            emit(out.as_deref(), &serde_json::to_string_pretty(&doc).expect("serializes"))
        }
        Command::Threshold(ThresholdCmd::Solve { alpha, census: census_path, gamma, table, out }) => {
            let alpha_text = read(alpha)?;
            let a = AlphaMatrix::from_json(&alpha_text).map_err(CliError::Usage)?;
            let census: LocationCensus = match census_path {
                Some(p) => serde_json::from_str(&read(p)?).map_err(|e| CliError::Usage(format!("bad census: {e}")))?,
                None => {
                    let v: Value = serde_json::from_str(&alpha_text).map_err(|e| CliError::Usage(e.to_string()))?;
                    serde_json::from_value(v.get("census").cloned().unwrap_or(Value::Null))
                        .map_err(|_| CliError::Usage("alpha file has no census; pass --census".into()))?
                }
            };
            let gammas = match table {
                Some(p) => parse_gammas(&read(p)?)?,
                None => vec![*gamma],
            };
            let reports = gammas
                .iter()
                .map(|&g| {
                    threshold_report(&ThresholdInput { label: alpha.display().to_string(), alpha: a.clone(), census, gamma: g })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let result = if reports.len() == 1 { to_value(&reports[0]) } else { to_value(&reports) };
            emit(out.as_deref(), &artifact(config, hashes, result))
        }
        Command::Pseudothreshold(PseudoCmd::Run { noise, max_factor, out }) => {
            if noise.trials == 0 {
                return Err(McError::NoTrials.into());
            }
            let rec = load_exrec(&noise.exrec)?;
            hashes.insert(rec.name.clone(), rec.content_hash());
            let sampler = Sampler::new(&rec, noise.flags.flags())?;
            let model = NoiseModel::new(0.0, noise.gamma).with_meas_prep_factor(noise.meas_prep_factor);
            model.at(1e-3).validate()?;
            let mut cfg = SearchConfig::new(model, noise.trials, noise.seed);
            cfg.max_trials_per_point = noise.trials.saturating_mul((*max_factor).max(1));
            cfg.jobs = noise.jobs;
            let r = find_pseudothreshold(&sampler, &cfg)?;
            emit(out.as_deref(), &artifact(config, hashes, to_value(&r)))?;
            if r.resolved {
                Ok(())
            } else {
                Err(CliError::Computation("no sign change of e(p) - p found within the bracket".into()))
            }
        }
        Command::LogicalRate(RateCmd::Sweep { noise, pmin, pmax, points, out }) => {
            if !(*pmin > 0.0 && pmin <= pmax && *pmax <= 1.0) {
                return Err(CliError::Usage("need 0 < pmin <= pmax <= 1".into()));
            }
            let rec = load_exrec(&noise.exrec)?;
            let sampler = Sampler::new(&rec, noise.flags.flags())?;
            let model = NoiseModel::new(*pmax, noise.gamma).with_meas_prep_factor(noise.meas_prep_factor);
            model.validate()?;
            let rows =
                logical_rate_sweep(&sampler, &model, (*pmin, *pmax), *points, noise.trials, noise.seed, noise.jobs)?;
            emit(out.as_deref(), sweep_csv(&rows).trim_end())
        }
        Command::Reproduce(ReproduceCmd::Table3 { out }) => {
            let t = table3()?;
            for (name, h) in &t.schedule_hashes {
                hashes.insert(name.clone(), h.clone());
            }
            emit(out.as_deref(), &artifact(config, hashes, to_value(&t)))
        }
        Command::OracleCheck(args) => {
            let s = build_ed(variant(args.ed), &TileSpec::new(TileSize::FiveByFive, Structure::I)).with_idles();
            hashes.insert(s.name.clone(), crate::circuit::content_hash(&s));
            let r = oracle_crosscheck(&s, args.max_faults)?;
            emit(args.out.as_deref(), &artifact(config, hashes, to_value(&r)))?;
            if r.passed() {
                Ok(())
            } else {
                Err(CliError::Computation(format!("{} oracle mismatches", r.mismatches.len())))
            }
        }
    }
}

/// Parses `args`, runs, reports errors as JSON on stderr, and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    EXIT_OK
                }
                _ => {
                    let _ = e.print();
                    let err = CliError::Usage(e.kind().to_string());
                    eprintln!("{}", err.to_json());
                    EXIT_USAGE
                }
            };
        }
    };
    match run(&config) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
