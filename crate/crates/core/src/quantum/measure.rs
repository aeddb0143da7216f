use num_complex::Complex64;
use rand::Rng;

use super::basis::{MeasurementBasis, OutcomePair};
use super::state::{AncillaState, JointPairState};

/// One branch of a pair measurement: Born probability and the ancilla it
/// leaves behind (absent when the branch has probability zero).
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub outcome: OutcomePair,
    pub probability: f64,
    pub post: Option<AncillaState>,
}

/// All four branches of a pair measurement in [`OutcomePair::ALL`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct PairOutcomes {
    branches: [Branch; 4],
}

impl PairOutcomes {
    pub fn get(&self, outcome: OutcomePair) -> &Branch {
        &self.branches[outcome.index()]
    }

    pub fn branches(&self) -> &[Branch; 4] {
        &self.branches
    }

    /// `P(++) + P(--)`.
    pub fn p_same(&self) -> f64 {
        self.branches.iter().filter(|b| b.outcome.is_same()).map(|b| b.probability).sum()
    }

    /// `<a b>` over the four branches.
    pub fn correlation(&self) -> f64 {
        self.branches
            .iter()
            .map(|b| b.outcome.product() as f64 * b.probability)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairMeasurement {
    pub outcome: OutcomePair,
    pub post: AncillaState,
}

/// Projection weights on the `eg` and `ge` branches for one outcome pair.
fn branch_weights(a: &MeasurementBasis, b: &MeasurementBasis, outcome: OutcomePair) -> (f64, f64) {
    let (ag, ae) = a.vector(outcome.a);
    let (bg, be) = b.vector(outcome.b);
    (ae * bg, ag * be)
}

fn project(joint: &JointPairState, w_eg: f64, w_ge: f64) -> Vec<Complex64> {
    let (eg, ge) = joint.branches();
    eg.iter().zip(ge).map(|(&x, &y)| x * w_eg + y * w_ge).collect()
}

/// Exact Born distribution of a pair measurement with the conditioned
/// ancilla for each outcome.
pub fn outcome_distribution(
    joint: &JointPairState,
    basis_a: &MeasurementBasis,
    basis_b: &MeasurementBasis,
) -> PairOutcomes {
    let branches = OutcomePair::ALL.map(|outcome| {
        let (w_eg, w_ge) = branch_weights(basis_a, basis_b, outcome);
        let amp = project(joint, w_eg, w_ge);
        let probability: f64 = amp.iter().map(|c| c.norm_sqr()).sum();
        let post = (probability > 0.0)
            .then(|| AncillaState::from_window(joint.total(), joint.offset(), amp).ok())
            .flatten();
        Branch {
            outcome,
            probability,
            post,
        }
    });
    PairOutcomes { branches }
}

/// Samples one outcome pair and returns the conditioned ancilla.
///
/// Outcome probabilities come from the branch Gram sums
/// (`|eg|^2`, `|ge|^2`, `Re <ge|eg>`), so only the sampled branch is
/// projected.
pub fn measure_pair<R: Rng + ?Sized>(
    joint: &JointPairState,
    basis_a: &MeasurementBasis,
    basis_b: &MeasurementBasis,
    rng: &mut R,
) -> PairMeasurement {
    let (eg, ge) = joint.branches();
    let s_eg: f64 = eg.iter().map(|c| c.norm_sqr()).sum();
    let s_ge: f64 = ge.iter().map(|c| c.norm_sqr()).sum();
    let s_x: f64 = eg.iter().zip(ge).map(|(x, y)| (x * y.conj()).re).sum();

    let weights = OutcomePair::ALL.map(|o| branch_weights(basis_a, basis_b, o));
    let mut probs = weights.map(|(a, b)| (a * a * s_eg + b * b * s_ge + 2.0 * a * b * s_x).max(0.0));
    loop {
        let idx = sample_index(&probs, rng.random::<f64>());
        let (w_eg, w_ge) = weights[idx];
        match AncillaState::from_window(joint.total(), joint.offset(), project(joint, w_eg, w_ge)) {
            Ok(post) => {
                return PairMeasurement {
                    outcome: OutcomePair::ALL[idx],
                    post,
                }
            }
            // rounding gave weight to a branch that cancels exactly
            Err(_) => probs[idx] = 0.0,
        }
    }
}

/// Inverse-CDF draw over unnormalized weights; zero-weight entries are
/// never returned.
pub(crate) fn sample_index(weights: &[f64], u: f64) -> usize {
    let total: f64 = weights.iter().sum();
    let target = u * total;
    let mut acc = 0.0;
    let mut last = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w <= 0.0 {
            continue;
        }
        acc += w;
        last = i;
        if target < acc {
            return i;
        }
    }
    last
}
