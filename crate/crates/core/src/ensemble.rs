//! Monte Carlo ensembles of independent runs.
//!
//! Each run draws its own schedule and outcomes from a ChaCha8 stream seeded
//! with [`run_seed`]`(master_seed, run_index)`, so an ensemble is a pure
//! function of its [`SimulationConfig`] no matter how runs are scheduled
//! across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::protocol::{
    make_schedule, run_experiment_fresh, run_experiment_traced, RunRecord, ScheduleMode,
};
use crate::quantum::AncillaState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum AncillaMode {
    /// One ancilla prepares every pair of a run.
    #[default]
    Reused,
    /// A fresh condensate per pair; pairs are i.i.d.
    Fresh,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfig {
    pub n_ancilla: usize,
    pub pairs: usize,
    pub runs: usize,
    pub mode: AncillaMode,
    pub schedule_mode: ScheduleMode,
    pub master_seed: u64,
    pub bin_width: f64,
    pub trunc_eps: f64,
}

impl Default for SimulationConfig {
    /// One shared particle, 400 pairs per run, 10^4 runs.
    fn default() -> Self {
        Self {
            n_ancilla: 1,
            pairs: 400,
            runs: 10_000,
            mode: AncillaMode::Reused,
            schedule_mode: ScheduleMode::Balanced,
            master_seed: 0,
            bin_width: 0.02,
            trunc_eps: 0.0,
        }
    }
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.pairs == 0 {
            return Err(Error::Config("pairs must be positive".into()));
        }
        if self.schedule_mode == ScheduleMode::Balanced && self.pairs % 4 != 0 {
            return Err(Error::UnbalancedPairs(self.pairs));
        }
        if self.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        if !(self.bin_width > 0.0 && self.bin_width <= 2.0) {
            return Err(Error::Config(format!("bin width {} outside (0, 2]", self.bin_width)));
        }
        if !(self.trunc_eps >= 0.0 && self.trunc_eps.is_finite()) {
            return Err(Error::Config(format!("truncation threshold {} is negative", self.trunc_eps)));
        }
        Ok(())
    }
}

/// Per-run seed: SplitMix64 finalizer applied to
/// `master_seed + 0x9E3779B97F4A7C15 * (run_index + 1)` (wrapping).
pub fn run_seed(master_seed: u64, run_index: u64) -> u64 {
    let mut z = master_seed.wrapping_add(0x9E37_79B9_7F4A_7C15_u64.wrapping_mul(run_index.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Executes run `index` of `config`.
pub fn run_single(config: &SimulationConfig, index: usize) -> Result<RunRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(run_seed(config.master_seed, index as u64));
    let schedule = make_schedule(config.pairs, config.schedule_mode, &mut rng)?;
    match config.mode {
        AncillaMode::Reused => {
            let anc0 = AncillaState::bec(config.n_ancilla, None)?;
            run_experiment_traced(&anc0, &schedule, &mut rng, config.trunc_eps, |_| {})
        }
        AncillaMode::Fresh => run_experiment_fresh(config.n_ancilla, &schedule, &mut rng),
    }
}

/// Probability density over `[-1, 1]` with left-closed bins anchored at `-1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub bin_width: f64,
    pub counts: Vec<u64>,
    pub samples: u64,
}

impl Histogram {
    pub fn num_bins(&self) -> usize {
        self.counts.len()
    }

    pub fn bin_left(&self, i: usize) -> f64 {
        -1.0 + i as f64 * self.bin_width
    }

    pub fn bin_right(&self, i: usize) -> f64 {
        self.bin_left(i + 1)
    }

    /// `count / (samples * bin_width)`, so that `sum(density * width) = 1`.
    pub fn density(&self, i: usize) -> f64 {
        self.counts[i] as f64 / (self.samples as f64 * self.bin_width)
    }

    pub fn densities(&self) -> Vec<f64> {
        (0..self.num_bins()).map(|i| self.density(i)).collect()
    }

    pub fn integral(&self) -> f64 {
        self.densities().iter().map(|d| d * self.bin_width).sum()
    }
}

/// Correlator values are ratios of integers and routinely land on bin
/// edges; anything within this fraction of a bin below an edge counts as
/// on it.
const EDGE_SLACK: f64 = 1e-9;

pub fn histogram(values: &[f64], bin_width: f64) -> Result<Histogram> {
    if values.is_empty() {
        return Err(Error::Empty("histogram values"));
    }
    if !(bin_width > 0.0 && bin_width.is_finite()) {
        return Err(Error::Config(format!("bin width {bin_width} must be positive")));
    }
    let num_bins = ((2.0 / bin_width) - EDGE_SLACK).ceil().max(1.0) as usize;
    let mut counts = vec![0u64; num_bins];
    for &v in values {
        if !(-1.0..=1.0).contains(&v) {
            return Err(Error::Config(format!("value {v} outside [-1, 1]")));
        }
        let idx = (((v + 1.0) / bin_width) + EDGE_SLACK).floor() as usize;
        counts[idx.min(num_bins - 1)] += 1;
    }
    Ok(Histogram {
        bin_width,
        counts,
        samples: values.len() as u64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    /// Sample mean of `C(a',b')`.
    pub mean_c: f64,
    /// Sample standard deviation of `C(a',b')` (`n - 1` denominator; 0 for one run).
    pub std_c: f64,
    /// Fraction of runs with `C(a',b') > 0`.
    pub violation_probability: f64,
    pub mean_s: f64,
}

pub fn summary_stats(records: &[RunRecord]) -> Result<SummaryStats> {
    if records.is_empty() {
        return Err(Error::Empty("run records"));
    }
    let n = records.len() as f64;
    let mean_c = records.iter().map(|r| r.correlators.apbp).sum::<f64>() / n;
    let std_c = if records.len() > 1 {
        let ss: f64 = records.iter().map(|r| (r.correlators.apbp - mean_c).powi(2)).sum();
        (ss / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    let violations = records.iter().filter(|r| r.correlators.apbp > 0.0).count();
    let mean_s = records.iter().map(|r| r.s_value).sum::<f64>() / n;
    Ok(SummaryStats {
        mean_c,
        std_c,
        violation_probability: violations as f64 / n,
        mean_s,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleResult {
    pub config: SimulationConfig,
    /// Indexed by run.
    pub records: Vec<RunRecord>,
    /// Density of `C(a',b')` over runs.
    pub histogram: Histogram,
    pub stats: SummaryStats,
}

impl EnsembleResult {
    pub fn apbp_values(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.correlators.apbp).collect()
    }
}

/// Runs `config.runs` independent experiments in parallel on the current
/// rayon pool.
pub fn run_ensemble(config: &SimulationConfig) -> Result<EnsembleResult> {
    config.validate()?;
    let records = (0..config.runs)
        .into_par_iter()
        .map(|i| run_single(config, i))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<f64> = records.iter().map(|r| r.correlators.apbp).collect();
    let histogram = histogram(&values, config.bin_width)?;
    let stats = summary_stats(&records)?;
    Ok(EnsembleResult {
        config: config.clone(),
        records,
        histogram,
        stats,
    })
}
