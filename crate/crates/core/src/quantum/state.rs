use num_complex::Complex64;

use super::density::TwoQubitDensity;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Pure state of the shared two-mode ancilla with `total` particles.
///
/// Amplitude `c_k` belongs to `|k, total - k>`. Only the window of
/// amplitudes between the first and last nonzero entry is stored; entries
/// outside `offset..offset + len` are exactly zero. Measurements in the
/// occupation basis leave the support width unchanged, so a run of `M`
/// pairs costs `O(M * width)` rather than `O(M^2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AncillaState {
    total: usize,
    offset: usize,
    amp: Vec<Complex64>,
}

impl AncillaState {
    /// Two-mode condensate of `n` particles with binomial weights
    /// `P_j = 2^-n * C(n, j)` and optional per-component phases `phi_j`.
    pub fn bec(n: usize, phases: Option<&[f64]>) -> Result<Self> {
        if let Some(phases) = phases {
            if phases.len() != n + 1 {
                return Err(Error::PhaseLength {
                    expected: n + 1,
                    got: phases.len(),
                });
            }
        }
        // log-space keeps large n from underflowing 2^-n
        let mut ln_weight = Vec::with_capacity(n + 1);
        let mut acc = 0.0_f64;
        ln_weight.push(acc);
        for j in 0..n {
            acc += ((n - j) as f64).ln() - ((j + 1) as f64).ln();
            ln_weight.push(acc);
        }
        let peak = ln_weight.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let amp = ln_weight
            .iter()
            .enumerate()
            .map(|(j, &lw)| {
                let modulus = (0.5 * (lw - peak)).exp();
                let phase = phases.map_or(0.0, |p| p[j]);
                Complex64::from_polar(modulus, phase)
            })
            .collect();
        Self::from_window(n, 0, amp)
    }

    /// Vacuum ancilla (no particles).
    pub fn vacuum() -> Self {
        Self {
            total: 0,
            offset: 0,
            amp: vec![Complex64::new(1.0, 0.0)],
        }
    }

    /// Arbitrary ancilla state from its full amplitude vector, normalized.
    pub fn from_amplitudes(amplitudes: &[Complex64]) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::ZeroState);
        }
        Self::from_window(amplitudes.len() - 1, 0, amplitudes.to_vec())
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        let amp: Vec<Complex64> = amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_amplitudes(&amp)
    }

    /// Normalizes and trims an amplitude window starting at `offset`.
    pub(crate) fn from_window(total: usize, offset: usize, mut amp: Vec<Complex64>) -> Result<Self> {
        debug_assert!(offset + amp.len() <= total + 1);
        let norm_sqr: f64 = amp.iter().map(|c| c.norm_sqr()).sum();
        if !(norm_sqr > 0.0) || !norm_sqr.is_finite() {
            return Err(Error::ZeroState);
        }
        let scale = norm_sqr.sqrt().recip();
        amp.iter_mut().for_each(|c| *c *= scale);
        let first = amp.iter().position(|c| *c != ZERO).unwrap_or(0);
        let last = amp.iter().rposition(|c| *c != ZERO).unwrap_or(0);
        amp.truncate(last + 1);
        amp.drain(..first);
        Ok(Self {
            total,
            offset: offset + first,
            amp,
        })
    }

    /// Total particle count `T`.
    pub fn total(&self) -> usize {
        self.total
    }

    /// Amplitude of `|k, T - k>`.
    pub fn amplitude(&self, k: usize) -> Complex64 {
        k.checked_sub(self.offset)
            .and_then(|i| self.amp.get(i))
            .copied()
            .unwrap_or(ZERO)
    }

    /// Full amplitude vector of length `T + 1`.
    pub fn amplitudes(&self) -> Vec<Complex64> {
        (0..=self.total).map(|k| self.amplitude(k)).collect()
    }

    /// Range of left-mode occupations with possibly nonzero amplitude.
    pub fn support(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.amp.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Coherence `sum_k c_k conj(c_{k+1})` handed to the next injected pair.
    ///
    /// This is the `(eg, ge)` element of the next pair's reduced density
    /// matrix, times two.
    pub fn next_pair_coherence(&self) -> Complex64 {
        self.amp
            .windows(2)
            .map(|w| w[0] * w[1].conj())
            .sum()
    }

    /// Drops amplitudes with modulus below `eps` and renormalizes.
    ///
    /// `eps = 0` returns the state unchanged. If every amplitude falls below
    /// `eps` the largest one is kept.
    pub fn truncated(&self, eps: f64) -> Self {
        if eps <= 0.0 {
            return self.clone();
        }
        let keep = self
            .amp
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
            .min(eps);
        let amp = self
            .amp
            .iter()
            .map(|&c| if c.norm() < keep { ZERO } else { c })
            .collect();
        Self::from_window(self.total, self.offset, amp).expect("largest amplitude is kept")
    }

    /// Coherently injects one flying particle, preparing a target pair.
    ///
    /// The `eg` branch gains the particle in the left mode, the `ge` branch
    /// in the right mode, each with weight `1/sqrt(2)`.
    pub fn inject(&self) -> JointPairState {
        let w = self.amp.len();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut eg = Vec::with_capacity(w + 1);
        let mut ge = Vec::with_capacity(w + 1);
        eg.push(ZERO);
        eg.extend(self.amp.iter().map(|&c| c * h));
        ge.extend(self.amp.iter().map(|&c| c * h));
        ge.push(ZERO);
        JointPairState {
            total: self.total + 1,
            offset: self.offset,
            eg,
            ge,
        }
    }
}

/// Ancilla entangled with one freshly prepared target pair.
///
/// `sum_m eg[m] |m, T - m>|eg> + ge[m] |m, T - m>|ge>`, with the same window
/// convention as [`AncillaState`].
#[derive(Debug, Clone, PartialEq)]
pub struct JointPairState {
    total: usize,
    offset: usize,
    eg: Vec<Complex64>,
    ge: Vec<Complex64>,
}

impl JointPairState {
    pub fn total(&self) -> usize {
        self.total
    }

    pub(crate) fn offset(&self) -> usize {
        self.offset
    }

    pub(crate) fn branches(&self) -> (&[Complex64], &[Complex64]) {
        (&self.eg, &self.ge)
    }

    fn dense(&self, branch: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![ZERO; self.total + 1];
        out[self.offset..self.offset + branch.len()].copy_from_slice(branch);
        out
    }

    /// Amplitudes of the `|eg>` branch over the left-mode count, length `T + 1`.
    pub fn amp_eg(&self) -> Vec<Complex64> {
        self.dense(&self.eg)
    }

    /// Amplitudes of the `|ge>` branch over the left-mode count, length `T + 1`.
    pub fn amp_ge(&self) -> Vec<Complex64> {
        self.dense(&self.ge)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.eg
            .iter()
            .chain(&self.ge)
            .map(|c| c.norm_sqr())
            .sum()
    }

    /// Reduced density matrix of the target pair, ancilla traced out.
    pub fn reduced_pair_density(&self) -> TwoQubitDensity {
        let p_eg: f64 = self.eg.iter().map(|c| c.norm_sqr()).sum();
        let p_ge: f64 = self.ge.iter().map(|c| c.norm_sqr()).sum();
        let eg_ge: Complex64 = self.eg.iter().zip(&self.ge).map(|(a, b)| a * b.conj()).sum();
        let mut m = nalgebra::Matrix4::<Complex64>::zeros();
        m[(1, 1)] = Complex64::new(p_ge, 0.0);
        m[(2, 2)] = Complex64::new(p_eg, 0.0);
        m[(2, 1)] = eg_ge;
        m[(1, 2)] = eg_ge.conj();
        TwoQubitDensity::from_matrix_unchecked(m)
    }
}
