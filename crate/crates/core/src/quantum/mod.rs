//! Shared-ancilla pair preparation and measurement.
//!
//! The ancilla is a two-mode bosonic state with a fixed total particle count
//! `T`, written in the number basis `|k, T - k>` where `k` counts particles
//! in the left mode. Injecting a flying particle produces a pair of target
//! qubits entangled with the ancilla; measuring the pair projects the
//! ancilla onto the state that prepares the next pair.

mod basis;
mod density;
mod measure;
mod state;

pub use basis::{MeasurementBasis, Outcome, OutcomePair};
pub use density::{correlator_exact, pair_density_matrix, TwoQubitDensity};
pub use measure::{measure_pair, outcome_distribution, Branch, PairMeasurement, PairOutcomes};
pub use state::{AncillaState, JointPairState};

pub(crate) use measure::sample_index;

pub use num_complex::Complex64;
