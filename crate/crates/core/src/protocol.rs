//! A single CHSH run: `M` pairs measured in a pre-drawn schedule of basis
//! combinations, either sequentially through one shared ancilla or with an
//! independent ancilla per pair.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::{
    correlator_exact, measure_pair, sample_index, AncillaState, MeasurementBasis, OutcomePair,
};

/// One of the four CHSH setting combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BasisPair {
    AB,
    ABPrime,
    APrimeB,
    APrimeBPrime,
}

impl BasisPair {
    pub const ALL: [BasisPair; 4] = [
        BasisPair::AB,
        BasisPair::ABPrime,
        BasisPair::APrimeB,
        BasisPair::APrimeBPrime,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            BasisPair::AB => "(a,b)",
            BasisPair::ABPrime => "(a,b')",
            BasisPair::APrimeB => "(a',b)",
            BasisPair::APrimeBPrime => "(a',b')",
        }
    }

    pub fn bases(self) -> (MeasurementBasis, MeasurementBasis) {
        let occ = MeasurementBasis::occupation();
        let rot = MeasurementBasis::rotated();
        match self {
            BasisPair::AB => (occ, occ),
            BasisPair::ABPrime => (occ, rot),
            BasisPair::APrimeB => (rot, occ),
            BasisPair::APrimeBPrime => (rot, rot),
        }
    }
}

impl fmt::Display for BasisPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ScheduleMode {
    /// Exactly `M/4` pairs per combination, in random order.
    #[default]
    Balanced,
    /// Each combination drawn independently and uniformly.
    Uniform,
}

/// Basis combinations for each of the `M` pairs of a run, fixed before the
/// run starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSchedule {
    entries: Vec<BasisPair>,
}

impl BasisSchedule {
    pub fn new(entries: Vec<BasisPair>) -> Self {
        Self { entries }
    }

    /// Every pair measured in the same combination.
    pub fn constant(pair: BasisPair, m: usize) -> Self {
        Self::new(vec![pair; m])
    }

    pub fn entries(&self) -> &[BasisPair] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn count(&self, pair: BasisPair) -> usize {
        self.entries.iter().filter(|&&p| p == pair).count()
    }
}

pub fn make_schedule<R: Rng + ?Sized>(m: usize, mode: ScheduleMode, rng: &mut R) -> Result<BasisSchedule> {
    if m == 0 {
        return Err(Error::Config("M must be positive".into()));
    }
    let entries = match mode {
        ScheduleMode::Balanced => {
            if m % 4 != 0 {
                return Err(Error::UnbalancedPairs(m));
            }
            let mut entries: Vec<BasisPair> = BasisPair::ALL
                .iter()
                .flat_map(|&p| std::iter::repeat_n(p, m / 4))
                .collect();
            entries.shuffle(rng);
            entries
        }
        ScheduleMode::Uniform => (0..m).map(|_| BasisPair::ALL[rng.random_range(0..4)]).collect(),
    };
    Ok(BasisSchedule { entries })
}

/// Outcome counts `n++, n+-, n-+, n--` per basis combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OutcomeCounts {
    counts: [[u64; 4]; 4],
}

impl OutcomeCounts {
    pub fn record(&mut self, pair: BasisPair, outcome: OutcomePair) {
        self.counts[pair.index()][outcome.index()] += 1;
    }

    pub fn get(&self, pair: BasisPair, outcome: OutcomePair) -> u64 {
        self.counts[pair.index()][outcome.index()]
    }

    pub fn for_pair(&self, pair: BasisPair) -> [u64; 4] {
        self.counts[pair.index()]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    /// `(n_same - n_diff) / (n_same + n_diff)` for one combination.
    pub fn correlator(&self, pair: BasisPair) -> Result<f64> {
        let [pp, pm, mp, mm] = self.for_pair(pair);
        let same = pp + mm;
        let diff = pm + mp;
        if same + diff == 0 {
            return Err(Error::UnsampledCorrelator(pair.label()));
        }
        Ok((same as f64 - diff as f64) / (same + diff) as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Correlators {
    pub ab: f64,
    pub abp: f64,
    pub apb: f64,
    pub apbp: f64,
}

impl Correlators {
    pub fn get(&self, pair: BasisPair) -> f64 {
        match pair {
            BasisPair::AB => self.ab,
            BasisPair::ABPrime => self.abp,
            BasisPair::APrimeB => self.apb,
            BasisPair::APrimeBPrime => self.apbp,
        }
    }

    /// `-C(a,b) + C(a,b') + C(a',b)`: the part that does not depend on the
    /// ancilla coherence.
    pub fn coherence_free_sum(&self) -> f64 {
        -self.ab + self.abp + self.apb
    }
}

pub fn compute_correlators(counts: &OutcomeCounts) -> Result<Correlators> {
    Ok(Correlators {
        ab: counts.correlator(BasisPair::AB)?,
        abp: counts.correlator(BasisPair::ABPrime)?,
        apb: counts.correlator(BasisPair::APrimeB)?,
        apbp: counts.correlator(BasisPair::APrimeBPrime)?,
    })
}

/// CHSH statistic `S = |-C(a,b) + C(a,b') + C(a',b) + C(a',b')|`.
pub fn chsh_s(c: &Correlators) -> f64 {
    (c.coherence_free_sum() + c.apbp).abs()
}

/// Result of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub counts: OutcomeCounts,
    pub correlators: Correlators,
    pub s_value: f64,
    /// `S > 2`.
    pub violated_chsh: bool,
    /// `C(a',b') > 0`.
    pub violated_reduced: bool,
}

impl RunRecord {
    pub fn from_counts(counts: OutcomeCounts) -> Result<Self> {
        let correlators = compute_correlators(&counts)?;
        let s_value = chsh_s(&correlators);
        Ok(Self {
            counts,
            correlators,
            s_value,
            violated_chsh: s_value > 2.0,
            violated_reduced: correlators.apbp > 0.0,
        })
    }
}

/// One measured pair of a sequential run, with the ancilla it left behind.
#[derive(Debug, Clone, Copy)]
pub struct Step<'a> {
    pub index: usize,
    pub pair: BasisPair,
    pub outcome: OutcomePair,
    pub ancilla: &'a AncillaState,
}

/// Sequential run through a single shared ancilla.
pub fn run_experiment<R: Rng + ?Sized>(
    anc0: &AncillaState,
    schedule: &BasisSchedule,
    rng: &mut R,
) -> Result<RunRecord> {
    run_experiment_traced(anc0, schedule, rng, 0.0, |_| {})
}

/// [`run_experiment`] with optional amplitude truncation (`trunc_eps > 0`)
/// and a callback invoked after every pair.
pub fn run_experiment_traced<R, F>(
    anc0: &AncillaState,
    schedule: &BasisSchedule,
    rng: &mut R,
    trunc_eps: f64,
    mut observe: F,
) -> Result<RunRecord>
where
    R: Rng + ?Sized,
    F: FnMut(&Step<'_>),
{
    let mut counts = OutcomeCounts::default();
    let mut ancilla = anc0.clone();
    for (index, &pair) in schedule.entries().iter().enumerate() {
        let (basis_a, basis_b) = pair.bases();
        let joint = ancilla.inject();
        let m = measure_pair(&joint, &basis_a, &basis_b, rng);
        counts.record(pair, m.outcome);
        ancilla = m.post.truncated(trunc_eps);
        observe(&Step {
            index,
            pair,
            outcome: m.outcome,
            ancilla: &ancilla,
        });
    }
    RunRecord::from_counts(counts)
}

/// Run in which every pair gets its own freshly prepared `n`-particle
/// condensate, so pairs are independent and identically distributed.
pub fn run_experiment_fresh<R: Rng + ?Sized>(
    n: usize,
    schedule: &BasisSchedule,
    rng: &mut R,
) -> Result<RunRecord> {
    let gamma = AncillaState::bec(n, None)?.next_pair_coherence();
    let mut probs = [[0.0; 4]; 4];
    for pair in BasisPair::ALL {
        let (a, b) = pair.bases();
        let e = correlator_exact(gamma, a.theta(), b.theta())?;
        probs[pair.index()] = OutcomePair::ALL.map(|o| 0.25 * (1.0 + o.product() as f64 * e));
    }
    let mut counts = OutcomeCounts::default();
    for &pair in schedule.entries() {
        let idx = sample_index(&probs[pair.index()], rng.random::<f64>());
        counts.record(pair, OutcomePair::ALL[idx]);
    }
    RunRecord::from_counts(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn corr(ab: f64, abp: f64, apb: f64, apbp: f64) -> Correlators {
        Correlators { ab, abp, apb, apbp }
    }

    #[test]
    fn chsh_examples() {
        assert_abs_diff_eq!(chsh_s(&corr(-1.0, 0.5, 0.5, 0.5)), 2.5, epsilon = 1e-15);
        assert_abs_diff_eq!(chsh_s(&corr(-1.0, 0.5, 0.5, 0.0)), 2.0, epsilon = 1e-15);
        assert_eq!(chsh_s(&corr(0.0, 0.0, 0.0, 0.0)), 0.0);
    }

    #[test]
    fn boundary_is_not_a_violation() {
        let mut counts = OutcomeCounts::default();
        let [pp, pm, mp, _] = OutcomePair::ALL;
        // C(a,b) = -1, C(a,b') = C(a',b) = 1/2, C(a',b') = 0
        counts.record(BasisPair::AB, pm);
        for pair in [BasisPair::ABPrime, BasisPair::APrimeB] {
            for o in [pp, pp, pp, mp] {
                counts.record(pair, o);
            }
        }
        counts.record(BasisPair::APrimeBPrime, pp);
        counts.record(BasisPair::APrimeBPrime, mp);
        let rec = RunRecord::from_counts(counts).unwrap();
        assert_abs_diff_eq!(rec.s_value, 2.0, epsilon = 1e-15);
        assert!(!rec.violated_chsh);
        assert!(!rec.violated_reduced);
    }

    #[test]
    fn schedule_balanced() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = make_schedule(4, ScheduleMode::Balanced, &mut rng).unwrap();
        for pair in BasisPair::ALL {
            assert_eq!(s.count(pair), 1);
        }
        let s = make_schedule(400, ScheduleMode::Balanced, &mut rng).unwrap();
        assert_eq!(s.count(BasisPair::APrimeBPrime), 100);
        assert_eq!(s.len(), 400);
    }

    #[test]
    fn schedule_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            make_schedule(3, ScheduleMode::Balanced, &mut rng),
            Err(Error::UnbalancedPairs(3))
        ));
        assert!(make_schedule(0, ScheduleMode::Uniform, &mut rng).is_err());
        let s = make_schedule(3, ScheduleMode::Uniform, &mut rng).unwrap();
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn unsampled_correlator_is_an_error() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let schedule = BasisSchedule::constant(BasisPair::AB, 8);
        let err = run_experiment(&AncillaState::vacuum(), &schedule, &mut rng).unwrap_err();
        assert!(matches!(err, Error::UnsampledCorrelator("(a,b')")));
    }

    #[test]
    fn occupation_bases_are_perfectly_anticorrelated() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let anc = AncillaState::bec(10_000, None).unwrap();
        let mut entries = vec![BasisPair::AB; 40];
        entries.extend(BasisPair::ALL);
        let rec = run_experiment(&anc, &BasisSchedule::new(entries), &mut rng).unwrap();
        assert_eq!(rec.correlators.ab, -1.0);
        assert_eq!(rec.counts.total(), 44);
    }

    #[test]
    fn ancilla_grows_by_one_per_pair() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let schedule = make_schedule(40, ScheduleMode::Balanced, &mut rng).unwrap();
        let mut totals = Vec::new();
        run_experiment_traced(&AncillaState::bec(2, None).unwrap(), &schedule, &mut rng, 0.0, |s| {
            totals.push(s.ancilla.total());
            assert!((s.ancilla.norm_sqr() - 1.0).abs() < 1e-9);
        })
        .unwrap();
        assert_eq!(totals, (3..43).collect::<Vec<_>>());
    }

    #[test]
    fn runs_are_deterministic() {
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let schedule = make_schedule(80, ScheduleMode::Balanced, &mut rng).unwrap();
            let reused = run_experiment(&AncillaState::bec(1, None).unwrap(), &schedule, &mut rng).unwrap();
            let fresh = run_experiment_fresh(1, &schedule, &mut rng).unwrap();
            (reused, fresh)
        };
        assert_eq!(run(11), run(11));
    }
}
