//! One CHSH run of `M` pairs prepared through a single shared ancilla.
//!
//!     cargo run --example single_run -- [N] [M] [seed]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seqbell::protocol::{make_schedule, run_experiment_traced, BasisPair, ScheduleMode};
use seqbell::quantum::{AncillaState, OutcomePair};

pub fn run_example(n: usize, m: usize, seed: u64) -> seqbell::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let schedule = make_schedule(m, ScheduleMode::Balanced, &mut rng)?;
    let anc0 = AncillaState::bec(n, None)?;

    let mut gammas = Vec::new();
    let record = run_experiment_traced(&anc0, &schedule, &mut rng, 0.0, |step| {
        if step.pair == BasisPair::APrimeBPrime {
            gammas.push(step.ancilla.next_pair_coherence().re);
        }
    })?;

    println!("N = {n}, M = {m}, seed = {seed}\n");
    println!("{:>8} {:>6} {:>6} {:>6} {:>6} {:>9}", "bases", "++", "+-", "-+", "--", "C");
    for pair in BasisPair::ALL {
        let counts = OutcomePair::ALL.map(|o| record.counts.get(pair, o));
        println!(
            "{:>8} {:>6} {:>6} {:>6} {:>6} {:>+9.4}",
            pair.label(),
            counts[0],
            counts[1],
            counts[2],
            counts[3],
            record.correlators.get(pair)
        );
    }
    println!("\nS = {:.4}  (S > 2: {})", record.s_value, record.violated_chsh);
    println!("C(a',b') > 0: {}", record.violated_reduced);

    let shown: Vec<String> = gammas.iter().step_by((gammas.len() / 10).max(1)).map(|g| format!("{g:+.3}")).collect();
    println!("\nancilla coherence after (a',b') pairs: {}", shown.join(" "));
    Ok(())
}

#[allow(dead_code)]
fn main() -> seqbell::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, default: u64| args.get(i).and_then(|s| s.parse().ok()).unwrap_or(default);
    run_example(arg(0, 0) as usize, arg(1, 400) as usize, arg(2, 1))
}
