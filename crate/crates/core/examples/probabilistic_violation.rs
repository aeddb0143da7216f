//! Probabilistic CHSH violation with no ancillary particles at all.
//!
//! With `N = 0` every pair on its own is unentangled and the ensemble mean
//! of `C(a',b')` sits at `-1/4`, yet a finite fraction of runs ends with
//! `C(a',b') > 0`. Pairs prepared independently show a violation fraction
//! that vanishes as `M` grows; the shared-ancilla fraction does not.
//!
//!     cargo run --release --example probabilistic_violation -- [runs]

use seqbell::ensemble::{run_ensemble, AncillaMode, SimulationConfig};

pub fn run_example(runs: usize) -> seqbell::Result<()> {
    println!("N = 0, {runs} runs\n");
    println!("{:<8} {:>5} {:>10} {:>8} {:>9} {:>9}", "mode", "M", "mean C", "std C", "P(C>0)", "P(S>2)");
    for mode in [AncillaMode::Reused, AncillaMode::Fresh] {
        for pairs in [100, 400, 800] {
            let result = run_ensemble(&SimulationConfig {
                n_ancilla: 0,
                pairs,
                runs,
                mode,
                ..Default::default()
            })?;
            let chsh = result.records.iter().filter(|r| r.violated_chsh).count() as f64 / runs as f64;
            let s = &result.stats;
            println!(
                "{:<8} {pairs:>5} {:>+10.4} {:>8.4} {:>9.4} {chsh:>9.4}",
                format!("{mode:?}"),
                s.mean_c,
                s.std_c,
                s.violation_probability
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> seqbell::Result<()> {
    let runs = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10_000);
    run_example(runs)
}
