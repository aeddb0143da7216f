//! How much entanglement a two-mode condensate hands to one target pair.
//!
//! Prints the next-pair coherence of an `N`-particle condensate next to its
//! large-`N` form `1 - 1/(2N)`, the Wootters concurrence of the resulting
//! pair state, and the CHSH value obtained with the simulator's bases.
//!
//!     cargo run --example bec_coherence

use seqbell::oracle::wootters_concurrence;
use seqbell::protocol::{chsh_s, BasisPair, Correlators};
use seqbell::quantum::{correlator_exact, pair_density_matrix, AncillaState};

pub fn run_example() -> seqbell::Result<()> {
    println!("{:>6} {:>12} {:>12} {:>12} {:>8}", "N", "gamma", "1-1/(2N)", "concurrence", "S");
    for n in [0, 1, 2, 3, 5, 10, 20, 50, 100, 1000] {
        let gamma = AncillaState::bec(n, None)?.next_pair_coherence();
        let asymptotic = if n == 0 { f64::NAN } else { 1.0 - 0.5 / n as f64 };
        let concurrence = wootters_concurrence(&pair_density_matrix(gamma)?)?;
        let c = |pair: BasisPair| {
            let (a, b) = pair.bases();
            correlator_exact(gamma, a.theta(), b.theta())
        };
        let s = chsh_s(&Correlators {
            ab: c(BasisPair::AB)?,
            abp: c(BasisPair::ABPrime)?,
            apb: c(BasisPair::APrimeB)?,
            apbp: c(BasisPair::APrimeBPrime)?,
        });
        println!("{n:>6} {:>12.8} {asymptotic:>12.8} {concurrence:>12.8} {s:>8.4}", gamma.re);
    }
    println!("\nS > 2 requires gamma > 1/3 with these bases.");
    Ok(())
}

#[allow(dead_code)]
fn main() -> seqbell::Result<()> {
    run_example()
}
