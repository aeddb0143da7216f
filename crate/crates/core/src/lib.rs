//! Exact simulation of sequential CHSH Bell tests in which every entangled
//! pair of target qubits is produced through one shared two-mode bosonic
//! ancilla.
//!
//! Pairs prepared through a reused ancilla are entangled with each other:
//! each measurement outcome conditions the ancilla, and with it the
//! coherence of every later pair. The result is a broad, run-to-run
//! distribution of the measured correlators, including a finite fraction of
//! runs that violate the CHSH inequality even when the ensemble mean does
//! not.
//!
//! Layout:
//!
//! * [`quantum`]: ancilla and pair states, injection, projective measurement,
//!   reduced density matrices and closed-form correlators.
//! * [`protocol`]: one experimental run of `M` pairs under a basis schedule.
//! * [`ensemble`]: reproducible parallel Monte Carlo over many runs, with
//!   histograms and summary statistics.
//! * [`oracle`]: brute-force references (full multipartite state, exact
//!   outcome enumeration, Wootters concurrence).
//! * [`cli`]: flag parsing and CSV/JSON output for the `seqbell` binary.

pub mod cli;
pub mod ensemble;
pub mod error;
pub mod oracle;
pub mod protocol;
pub mod quantum;

pub use error::{Error, Result};
