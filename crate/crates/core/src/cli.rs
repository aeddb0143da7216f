//! Command-line configuration and plot-ready output files.
//!
//! An ensemble is written as up to three files in the output directory:
//!
//! * `histogram.csv`: `bin_left,bin_right,density`, one row per bin.
//! * `runs.csv`: `run_index,c_ab,c_abp,c_apb,c_apbp,s,violated_reduced,violated_chsh`,
//!   one row per run, flags as `0`/`1`.
//! * `summary.json`: the configuration plus summary statistics.
//!
//! CSV floats use 17 significant digits in scientific notation; lines end in
//! `\n`. Output depends only on the configuration, so identical invocations
//! give byte-identical files. Wall-clock time is recorded only with
//! `--timing`.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::ensemble::{run_ensemble, AncillaMode, EnsembleResult, SimulationConfig};
use crate::error::{Error, Result};
use crate::protocol::ScheduleMode;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "SEQBELL_THREADS";

pub const HISTOGRAM_FILE: &str = "histogram.csv";
pub const RUNS_FILE: &str = "runs.csv";
pub const SUMMARY_FILE: &str = "summary.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    #[default]
    Both,
}

impl OutputFormat {
    fn csv(self) -> bool {
        matches!(self, OutputFormat::Csv | OutputFormat::Both)
    }

    fn json(self) -> bool {
        matches!(self, OutputFormat::Json | OutputFormat::Both)
    }
}

const SIM_FLAGS: [&str; 8] = [
    "n_ancilla",
    "pairs",
    "runs",
    "mode",
    "schedule",
    "seed",
    "bin_width",
    "trunc_eps",
];

/// Simulate sequential CHSH runs whose pairs share one bosonic ancilla.
#[derive(Debug, Parser)]
#[command(name = "seqbell", version)]
struct Args {
    /// Particles in the initial two-mode condensate (N).
    #[arg(long, default_value_t = 1)]
    n_ancilla: usize,
    /// Pairs per run (M).
    #[arg(long, default_value_t = 400)]
    pairs: usize,
    /// Number of runs (R).
    #[arg(long, default_value_t = 10_000)]
    runs: usize,
    #[arg(long, value_enum, default_value_t = AncillaMode::Reused)]
    mode: AncillaMode,
    #[arg(long, value_enum, default_value_t = ScheduleMode::Balanced)]
    schedule: ScheduleMode,
    /// Master seed; run seeds are derived from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Histogram bin width over [-1, 1].
    #[arg(long, default_value_t = 0.02, allow_negative_numbers = true)]
    bin_width: f64,
    /// Drop ancilla amplitudes below this modulus (0 keeps everything).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    trunc_eps: f64,
    /// Output directory.
    #[arg(long, value_name = "DIR", default_value = ".")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputFormat::Both)]
    format: OutputFormat,
    /// Re-run the configuration echoed in a previous summary.json.
    #[arg(long, value_name = "FILE", conflicts_with_all = SIM_FLAGS)]
    from_summary: Option<PathBuf>,
    /// Record wall-clock time in summary.json (makes it non-reproducible).
    #[arg(long)]
    timing: bool,
}

/// A validated command line.
#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub config: SimulationConfig,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
    pub timing: bool,
}

fn usage(flag: &str, msg: impl std::fmt::Display) -> clap::Error {
    Args::command().error(ErrorKind::ValueValidation, format!("invalid value for '--{flag}': {msg}"))
}

/// Parses and validates `argv` (program name first).
pub fn parse_config<I, T>(argv: I) -> std::result::Result<Invocation, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = Args::try_parse_from(argv)?;
    let config = match &args.from_summary {
        Some(path) => {
            let summary = Summary::read(path).map_err(|e| usage("from-summary", e))?;
            summary.config
        }
        None => SimulationConfig {
            n_ancilla: args.n_ancilla,
            pairs: args.pairs,
            runs: args.runs,
            mode: args.mode,
            schedule_mode: args.schedule,
            master_seed: args.seed,
            bin_width: args.bin_width,
            trunc_eps: args.trunc_eps,
        },
    };
    check_config(&config)?;
    Ok(Invocation {
        config,
        out_dir: args.out,
        format: args.format,
        timing: args.timing,
    })
}

fn check_config(c: &SimulationConfig) -> std::result::Result<(), clap::Error> {
    if c.pairs == 0 {
        return Err(usage("pairs", "must be positive"));
    }
    if c.schedule_mode == ScheduleMode::Balanced && c.pairs % 4 != 0 {
        return Err(usage(
            "pairs",
            format!("M must be divisible by 4 with --schedule balanced (got {})", c.pairs),
        ));
    }
    if c.runs == 0 {
        return Err(usage("runs", "must be at least 1"));
    }
    if !(c.bin_width > 0.0 && c.bin_width <= 2.0) {
        return Err(usage("bin-width", format!("{} is outside (0, 2]", c.bin_width)));
    }
    if !(c.trunc_eps >= 0.0 && c.trunc_eps.is_finite()) {
        return Err(usage("trunc-eps", format!("{} must be non-negative", c.trunc_eps)));
    }
    c.validate().map_err(|e| usage("config", e))
}

/// Worker cap from `SEQBELL_THREADS`; unset or empty means no cap.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if v.trim().is_empty() => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::Config(format!("{THREADS_ENV}={v} is not a positive integer"))),
        },
        Err(_) => Ok(None),
    }
}

/// Runs the ensemble on a pool of at most `threads` workers.
pub fn run_with_threads(config: &SimulationConfig, threads: Option<usize>) -> Result<EnsembleResult> {
    match threads {
        None => run_ensemble(config),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(|| run_ensemble(config)),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summary {
    pub config: SimulationConfig,
    pub mean_c: f64,
    pub std_c: f64,
    pub violation_probability: f64,
    pub mean_s: f64,
    /// Seconds; `null` unless requested.
    pub wall_time: Option<f64>,
}

impl Summary {
    pub fn from_result(result: &EnsembleResult, wall_time: Option<f64>) -> Self {
        Self {
            config: result.config.clone(),
            mean_c: result.stats.mean_c,
            std_c: result.stats.std_c,
            violation_probability: result.stats.violation_probability,
            mean_s: result.stats.mean_s,
            wall_time,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text).map_err(|source| Error::Json {
            path: path.to_owned(),
            source,
        })
    }
}

/// Rendered contents of every output file.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputBundle {
    pub histogram_csv: String,
    pub runs_csv: String,
    pub summary: Summary,
}

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

fn render_csv<const N: usize>(header: [&str; N], rows: impl Iterator<Item = [String; N]>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    // writing into a Vec cannot fail
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(&row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("ascii csv")
}

impl OutputBundle {
    pub fn from_result(result: &EnsembleResult, wall_time: Option<f64>) -> Self {
        let h = &result.histogram;
        let histogram_csv = render_csv(
            ["bin_left", "bin_right", "density"],
            (0..h.num_bins()).map(|i| [float(h.bin_left(i)), float(h.bin_right(i)), float(h.density(i))]),
        );
        let runs_csv = render_csv(
            [
                "run_index",
                "c_ab",
                "c_abp",
                "c_apb",
                "c_apbp",
                "s",
                "violated_reduced",
                "violated_chsh",
            ],
            result.records.iter().enumerate().map(|(i, r)| {
                let c = &r.correlators;
                [
                    i.to_string(),
                    float(c.ab),
                    float(c.abp),
                    float(c.apb),
                    float(c.apbp),
                    float(r.s_value),
                    flag(r.violated_reduced).to_owned(),
                    flag(r.violated_chsh).to_owned(),
                ]
            }),
        );
        Self {
            histogram_csv,
            runs_csv,
            summary: Summary::from_result(result, wall_time),
        }
    }
}

/// Writes the selected files into `out_dir`, creating it if needed, and
/// returns their paths.
pub fn emit(bundle: &OutputBundle, out_dir: &Path, format: OutputFormat) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut files: Vec<(&str, String)> = Vec::new();
    if format.csv() {
        files.push((HISTOGRAM_FILE, bundle.histogram_csv.clone()));
        files.push((RUNS_FILE, bundle.runs_csv.clone()));
    }
    if format.json() {
        files.push((SUMMARY_FILE, bundle.summary.to_json()));
    }
    files
        .into_iter()
        .map(|(name, contents)| {
            let path = out_dir.join(name);
            fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
            Ok(path)
        })
        .collect()
}
