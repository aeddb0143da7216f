use std::f64::consts::FRAC_PI_3;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A real single-qubit measurement basis at angle `theta`.
///
/// `u+ = cos(theta)|g> + sin(theta)|e>` carries outcome `+1`,
/// `u- = sin(theta)|g> - cos(theta)|e>` carries outcome `-1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementBasis {
    theta: f64,
}

impl MeasurementBasis {
    /// The rotated setting used for `a'` and `b'`.
    pub const ROTATED_ANGLE: f64 = FRAC_PI_3;

    pub const fn with_angle(theta: f64) -> Self {
        Self { theta }
    }

    /// Occupation basis `{|g>, |e>}`, used for `a` and `b`.
    pub const fn occupation() -> Self {
        Self::with_angle(0.0)
    }

    pub const fn rotated() -> Self {
        Self::with_angle(Self::ROTATED_ANGLE)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Components `(<g|u>, <e|u>)` of the basis vector for `outcome`.
    pub fn vector(&self, outcome: Outcome) -> (f64, f64) {
        let (s, c) = self.theta.sin_cos();
        match outcome {
            Outcome::Plus => (c, s),
            Outcome::Minus => (s, -c),
        }
    }
}

/// A single-qubit measurement result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub fn sign(self) -> i32 {
        match self {
            Outcome::Plus => 1,
            Outcome::Minus => -1,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Plus => "+",
            Outcome::Minus => "-",
        })
    }
}

/// Joint result of measuring both qubits of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OutcomePair {
    pub a: Outcome,
    pub b: Outcome,
}

impl OutcomePair {
    /// Canonical order: `++`, `+-`, `-+`, `--`.
    pub const ALL: [OutcomePair; 4] = [
        OutcomePair::new(Outcome::Plus, Outcome::Plus),
        OutcomePair::new(Outcome::Plus, Outcome::Minus),
        OutcomePair::new(Outcome::Minus, Outcome::Plus),
        OutcomePair::new(Outcome::Minus, Outcome::Minus),
    ];

    pub const fn new(a: Outcome, b: Outcome) -> Self {
        Self { a, b }
    }

    /// Position in [`OutcomePair::ALL`].
    pub fn index(self) -> usize {
        match (self.a, self.b) {
            (Outcome::Plus, Outcome::Plus) => 0,
            (Outcome::Plus, Outcome::Minus) => 1,
            (Outcome::Minus, Outcome::Plus) => 2,
            (Outcome::Minus, Outcome::Minus) => 3,
        }
    }

    /// The product of the two outcome signs.
    pub fn product(self) -> i32 {
        self.a.sign() * self.b.sign()
    }

    pub fn is_same(self) -> bool {
        self.a == self.b
    }
}

impl fmt::Display for OutcomePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_vectors_are_orthonormal() {
        for theta in [0.0, 0.3, FRAC_PI_3, std::f64::consts::FRAC_PI_4, 2.0] {
            let basis = MeasurementBasis::with_angle(theta);
            let (pg, pe) = basis.vector(Outcome::Plus);
            let (mg, me) = basis.vector(Outcome::Minus);
            assert!((pg * pg + pe * pe - 1.0).abs() < 1e-15);
            assert!((mg * mg + me * me - 1.0).abs() < 1e-15);
            assert!((pg * mg + pe * me).abs() < 1e-15);
        }
    }

    #[test]
    fn occupation_basis_is_exact() {
        let basis = MeasurementBasis::occupation();
        assert_eq!(basis.vector(Outcome::Plus), (1.0, 0.0));
        assert_eq!(basis.vector(Outcome::Minus), (0.0, -1.0));
    }

    #[test]
    fn outcome_pair_indexing_matches_order() {
        for (i, pair) in OutcomePair::ALL.iter().enumerate() {
            assert_eq!(pair.index(), i);
        }
        assert_eq!(OutcomePair::ALL[1].product(), -1);
        assert_eq!(OutcomePair::ALL[3].product(), 1);
    }
}
