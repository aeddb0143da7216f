//! Cross-checks the sequential simulator against the full multipartite
//! state of ancilla plus all pairs, by exact enumeration of every outcome
//! sequence.
//!
//!     cargo run --example oracle_check

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seqbell::oracle::{build_full_state, exact_outcome_distribution, sequential_outcome_distribution};
use seqbell::protocol::{make_schedule, ScheduleMode};
use seqbell::quantum::AncillaState;

pub fn run_example() -> seqbell::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    println!("{:>3} {:>3} {:>10} {:>12} {:>14}", "N", "M", "sequences", "TV distance", "P(C(a',b')>0)");
    for n in 0..=2 {
        let anc0 = AncillaState::bec(n, None)?;
        for m in [4, 8] {
            let schedule = make_schedule(m, ScheduleMode::Balanced, &mut rng)?;
            let full = build_full_state(n, m)?;
            let oracle = exact_outcome_distribution(&full, &schedule)?;
            let sequential = sequential_outcome_distribution(&anc0, &schedule);
            println!(
                "{n:>3} {m:>3} {:>10} {:>12.2e} {:>14.6}",
                oracle.len(),
                oracle.total_variation(&sequential),
                oracle.violation_probability(&schedule)
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> seqbell::Result<()> {
    run_example()
}
