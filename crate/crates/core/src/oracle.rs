//! Brute-force references for the sequential simulator.
//!
//! [`build_full_state`] writes down the state of the ancilla and all `M`
//! pairs before any measurement, and [`exact_outcome_distribution`]
//! enumerates every outcome sequence by projecting that state one pair at a
//! time. Neither goes through [`crate::quantum`]'s injection or measurement
//! code, so agreement with [`sequential_outcome_distribution`] checks the
//! sequential kernel end to end.

use std::collections::BTreeMap;

use nalgebra::{Matrix2, Matrix4, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::protocol::{BasisPair, BasisSchedule};
use crate::quantum::{outcome_distribution, AncillaState, Outcome, OutcomePair, TwoQubitDensity};

/// Largest `(N + 1) * 2^M` accepted by [`build_full_state`].
pub const MAX_FULL_STATE: usize = 1_000_000;

/// Ancilla plus `M` unmeasured pairs.
///
/// Basis states are `|L, N + M - L>_anc (x) |n_1, 1 - n_1> ... |n_M, 1 - n_M>`
/// with `n_k = 1` meaning pair `k` is in `|eg>`. Amplitudes are stored at
/// `L * 2^M + bits`, bit `k - 1` of `bits` holding `n_k`. Labels `(j, n)`
/// of the same ancilla occupation `L = j + sum(n)` share one ancilla ket.
#[derive(Debug, Clone, PartialEq)]
pub struct MultipartiteState {
    n_ancilla: usize,
    pairs: usize,
    amp: Vec<Complex64>,
}

impl MultipartiteState {
    pub fn n_ancilla(&self) -> usize {
        self.n_ancilla
    }

    pub fn pairs(&self) -> usize {
        self.pairs
    }

    pub fn amplitude(&self, left: usize, bits: usize) -> Complex64 {
        self.amp[left << self.pairs | bits]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|c| c.norm_sqr()).sum()
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub fn build_full_state(n: usize, m: usize) -> Result<MultipartiteState> {
    let size = u32::try_from(m)
        .ok()
        .and_then(|m| 1usize.checked_shl(m))
        .and_then(|p| p.checked_mul(n + 1))
        .unwrap_or(usize::MAX);
    if size > MAX_FULL_STATE {
        return Err(Error::TooLarge {
            size,
            limit: MAX_FULL_STATE,
        });
    }
    let dim = 1usize << m;
    let mut amp = vec![Complex64::new(0.0, 0.0); (n + m + 1) * dim];
    for bits in 0..dim {
        let excited_left = bits.count_ones() as usize;
        for j in 0..=n {
            let p_j = binomial(n, j) / 2f64.powi(n as i32);
            amp[(j + excited_left) * dim + bits] = Complex64::new((p_j / dim as f64).sqrt(), 0.0);
        }
    }
    Ok(MultipartiteState {
        n_ancilla: n,
        pairs: m,
        amp,
    })
}

/// Probabilities of complete outcome sequences, keyed by the per-pair
/// outcomes in schedule order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutcomeDistribution {
    probs: BTreeMap<Vec<OutcomePair>, f64>,
}

impl OutcomeDistribution {
    pub fn probability(&self, sequence: &[OutcomePair]) -> f64 {
        self.probs.get(sequence).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[OutcomePair], f64)> {
        self.probs.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.probs.values().sum()
    }

    /// `(1/2) sum |p - q|` over the union of supports.
    pub fn total_variation(&self, other: &Self) -> f64 {
        let mut diff = 0.0;
        for (k, &p) in &self.probs {
            diff += (p - other.probability(k)).abs();
        }
        for (k, &q) in &other.probs {
            if !self.probs.contains_key(k) {
                diff += q;
            }
        }
        0.5 * diff
    }

    /// Probability that the run's `C(a',b')` is strictly positive.
    pub fn violation_probability(&self, schedule: &BasisSchedule) -> f64 {
        self.iter()
            .filter(|(seq, _)| {
                let mut sum = 0i64;
                for (pair, outcome) in schedule.entries().iter().zip(seq.iter()) {
                    if *pair == BasisPair::APrimeBPrime {
                        sum += outcome.product() as i64;
                    }
                }
                sum > 0
            })
            .map(|(_, p)| p)
            .sum()
    }
}

/// `(<u|g>, <u|e>)` for a real basis at `theta`.
fn basis_components(theta: f64, outcome: Outcome) -> (f64, f64) {
    match outcome {
        Outcome::Plus => (theta.cos(), theta.sin()),
        Outcome::Minus => (theta.sin(), -theta.cos()),
    }
}

/// Exact distribution over all `4^M` outcome sequences of `schedule`,
/// obtained by projecting the full state pair by pair. Branches of exactly
/// zero weight are pruned.
pub fn exact_outcome_distribution(
    full: &MultipartiteState,
    schedule: &BasisSchedule,
) -> Result<OutcomeDistribution> {
    if schedule.len() != full.pairs {
        return Err(Error::ScheduleLength {
            expected: full.pairs,
            got: schedule.len(),
        });
    }
    let mut out = OutcomeDistribution::default();
    let mut prefix = Vec::with_capacity(full.pairs);
    // pair k sits in bit 0 once pairs 1..k-1 are projected out
    fn recurse(
        state: &[Complex64],
        remaining: usize,
        schedule: &[BasisPair],
        prefix: &mut Vec<OutcomePair>,
        out: &mut OutcomeDistribution,
    ) {
        let Some((&pair, rest)) = schedule.split_first() else {
            let p: f64 = state.iter().map(|c| c.norm_sqr()).sum();
            out.probs.insert(prefix.clone(), p);
            return;
        };
        let (basis_a, basis_b) = pair.bases();
        let dim = 1usize << remaining;
        let half = dim >> 1;
        let levels = state.len() / dim;
        for outcome in OutcomePair::ALL {
            let (ag, ae) = basis_components(basis_a.theta(), outcome.a);
            let (bg, be) = basis_components(basis_b.theta(), outcome.b);
            let w_eg = ae * bg;
            let w_ge = ag * be;
            let mut next = vec![Complex64::new(0.0, 0.0); levels * half];
            for l in 0..levels {
                for r in 0..half {
                    let eg = state[l * dim + (r << 1 | 1)];
                    let ge = state[l * dim + (r << 1)];
                    next[l * half + r] = eg * w_eg + ge * w_ge;
                }
            }
            if next.iter().all(|c| c.norm_sqr() == 0.0) {
                continue;
            }
            prefix.push(outcome);
            recurse(&next, remaining - 1, rest, prefix, out);
            prefix.pop();
        }
    }
    recurse(&full.amp, full.pairs, schedule.entries(), &mut prefix, &mut out);
    Ok(out)
}

/// Exact outcome distribution of the sequential simulator: inject, branch
/// over all measurement outcomes, recurse on each conditioned ancilla.
pub fn sequential_outcome_distribution(anc0: &AncillaState, schedule: &BasisSchedule) -> OutcomeDistribution {
    let mut out = OutcomeDistribution::default();
    let mut prefix = Vec::with_capacity(schedule.len());
    fn recurse(
        anc: &AncillaState,
        weight: f64,
        schedule: &[BasisPair],
        prefix: &mut Vec<OutcomePair>,
        out: &mut OutcomeDistribution,
    ) {
        let Some((&pair, rest)) = schedule.split_first() else {
            out.probs.insert(prefix.clone(), weight);
            return;
        };
        let (a, b) = pair.bases();
        let dist = outcome_distribution(&anc.inject(), &a, &b);
        for branch in dist.branches() {
            let Some(post) = &branch.post else { continue };
            prefix.push(branch.outcome);
            recurse(post, weight * branch.probability, rest, prefix, out);
            prefix.pop();
        }
    }
    recurse(anc0, 1.0, schedule.entries(), &mut prefix, &mut out);
    out
}

/// `Tr(rho sigma(theta_a) (x) sigma(theta_b))` with
/// `sigma(theta) = cos(2 theta) Z + sin(2 theta) X`, `Z|g> = |g>`.
pub fn correlator_brute_force(rho: &TwoQubitDensity, theta_a: f64, theta_b: f64) -> f64 {
    let pauli = |theta: f64| {
        let (s, c) = (2.0 * theta).sin_cos();
        Matrix2::new(c, s, s, -c).map(|x| Complex64::new(x, 0.0))
    };
    let obs = pauli(theta_a).kronecker(&pauli(theta_b));
    (rho.matrix() * obs).trace().re
}

/// Wootters concurrence `max(0, l1 - l2 - l3 - l4)`, where `l_i` are the
/// decreasing square roots of the eigenvalues of `rho (sy sy) rho* (sy sy)`.
///
/// The eigenvalues are taken from the Hermitian form
/// `sqrt(rho) rho~ sqrt(rho)`, which has the same spectrum.
pub fn wootters_concurrence(rho: &TwoQubitDensity) -> Result<f64> {
    let rho = TwoQubitDensity::new(*rho.matrix())?;
    let m = rho.matrix();

    let eig = SymmetricEigen::new(*m);
    let sqrt_diag = Matrix4::from_diagonal(&eig.eigenvalues.map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0)));
    let sqrt_rho = eig.eigenvectors * sqrt_diag * eig.eigenvectors.adjoint();

    let i = Complex64::i();
    let zero = Complex64::new(0.0, 0.0);
    let sy = Matrix2::new(zero, -i, i, zero);
    let flip = sy.kronecker(&sy);
    let rho_tilde = flip * m.conjugate() * flip;

    let r = sqrt_rho * rho_tilde * sqrt_rho;
    let r = (r + r.adjoint()) * Complex64::new(0.5, 0.0);
    let mut lambdas: Vec<f64> = SymmetricEigen::new(r)
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::pair_density_matrix;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_3;

    const PM: OutcomePair = OutcomePair::new(Outcome::Plus, Outcome::Minus);
    const MP: OutcomePair = OutcomePair::new(Outcome::Minus, Outcome::Plus);

    #[test]
    fn full_state_single_pair_vacuum() {
        let s = build_full_state(0, 1).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // |1,0>|eg> and |0,1>|ge>
        assert_abs_diff_eq!(s.amplitude(1, 1).re, h, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitude(0, 0).re, h, epsilon = 1e-15);
        assert_eq!(s.amplitude(0, 1).norm(), 0.0);
        assert_eq!(s.amplitude(1, 0).norm(), 0.0);
    }

    #[test]
    fn full_state_two_pairs_vacuum() {
        let s = build_full_state(0, 2).unwrap();
        for bits in 0..4usize {
            let left = bits.count_ones() as usize;
            assert_abs_diff_eq!(s.amplitude(left, bits).re, 0.5, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn full_state_norm() {
        for n in 0..=3 {
            for m in 1..=8 {
                assert_abs_diff_eq!(build_full_state(n, m).unwrap().norm_sqr(), 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn full_state_size_guard() {
        assert!(matches!(build_full_state(0, 30), Err(Error::TooLarge { .. })));
        assert!(build_full_state(15, 16).is_err());
    }

    #[test]
    fn single_pair_distributions() {
        let full = build_full_state(0, 1).unwrap();
        let d = exact_outcome_distribution(&full, &BasisSchedule::constant(BasisPair::AB, 1)).unwrap();
        assert_eq!(d.len(), 2);
        assert_abs_diff_eq!(d.probability(&[PM]), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(d.probability(&[MP]), 0.5, epsilon = 1e-15);

        let full = build_full_state(1, 1).unwrap();
        let d = exact_outcome_distribution(&full, &BasisSchedule::constant(BasisPair::APrimeBPrime, 1))
            .unwrap();
        let p_same: f64 = d.iter().filter(|(s, _)| s[0].is_same()).map(|(_, p)| p).sum();
        assert_abs_diff_eq!(p_same, 9.0 / 16.0, epsilon = 1e-15);
    }

    #[test]
    fn schedule_length_must_match() {
        let full = build_full_state(0, 2).unwrap();
        assert!(exact_outcome_distribution(&full, &BasisSchedule::constant(BasisPair::AB, 3)).is_err());
    }

    #[test]
    fn concurrence_of_pair_states() {
        for g in [0.0, 1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0] {
            let rho = pair_density_matrix(Complex64::new(g, 0.0)).unwrap();
            assert_abs_diff_eq!(wootters_concurrence(&rho).unwrap(), g, epsilon = 1e-10);
        }
        assert_abs_diff_eq!(
            wootters_concurrence(&TwoQubitDensity::maximally_mixed()).unwrap(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn concurrence_of_product_state() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let rho = TwoQubitDensity::pure([zero, one, zero, zero]).unwrap();
        assert_abs_diff_eq!(wootters_concurrence(&rho).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn brute_force_correlator_matches_closed_form() {
        let rho = pair_density_matrix(Complex64::new(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(correlator_brute_force(&rho, FRAC_PI_3, FRAC_PI_3), 0.125, epsilon = 1e-15);
        let rho = pair_density_matrix(Complex64::new(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(correlator_brute_force(&rho, 0.0, 0.0), -1.0, epsilon = 1e-15);
    }
}
