//! A measured pair conditions the ancilla that prepares the next one.
//!
//! Starts from one ancillary particle in `(|10> + |01>)/sqrt(2)`, measures
//! the first pair in the diagonal basis on both sides, and shows how each
//! outcome changes the coherence available to the second pair. The
//! probability-weighted average is unchanged.
//!
//!     cargo run --example ancilla_evolution

use std::f64::consts::FRAC_PI_4;

use seqbell::protocol::BasisPair;
use seqbell::quantum::{outcome_distribution, AncillaState, MeasurementBasis};

pub fn run_example() -> seqbell::Result<()> {
    let anc = AncillaState::from_real(&[1.0, 1.0])?;
    println!("initial ancilla      gamma = {:.6}", anc.next_pair_coherence().re);

    let diag = MeasurementBasis::with_angle(FRAC_PI_4);
    let dist = outcome_distribution(&anc.inject(), &diag, &diag);
    let mut average = 0.0;
    for branch in dist.branches() {
        let post = branch.post.as_ref().expect("all diagonal outcomes occur");
        let gamma = post.next_pair_coherence().re;
        average += branch.probability * gamma;
        let amps: Vec<String> = post.amplitudes().iter().map(|c| format!("{:+.4}", c.re)).collect();
        println!(
            "outcome {}  p = {:.4}  ancilla [{}]  gamma = {:.6}",
            branch.outcome,
            branch.probability,
            amps.join(", "),
            gamma
        );
    }
    println!("average next-pair gamma = {average:.6}");

    // Measuring either side in the occupation basis only shifts the ancilla.
    let (a, b) = BasisPair::ABPrime.bases();
    let dist = outcome_distribution(&anc.inject(), &a, &b);
    println!("\nafter an (a,b') measurement:");
    for branch in dist.branches().iter().filter(|b| b.probability > 0.0) {
        let post = branch.post.as_ref().expect("nonzero branch");
        println!(
            "outcome {}  support {:?}  gamma = {:.6}",
            branch.outcome,
            post.support(),
            post.next_pair_coherence().re
        );
    }

    // Without any ancilla, agreeing rotated outcomes create one.
    let (a, b) = BasisPair::APrimeBPrime.bases();
    let dist = outcome_distribution(&AncillaState::vacuum().inject(), &a, &b);
    println!("\nempty ancilla, (a',b') outcomes:");
    for branch in dist.branches() {
        let gamma = branch.post.as_ref().map_or(f64::NAN, |p| p.next_pair_coherence().re);
        println!("outcome {}  p = {:.4}  gamma = {gamma:+.4}", branch.outcome, branch.probability);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> seqbell::Result<()> {
    run_example()
}
