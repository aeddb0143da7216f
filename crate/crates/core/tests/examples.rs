#[path = "../examples/bec_coherence.rs"]
mod bec_coherence;
#[path = "../examples/ancilla_evolution.rs"]
mod ancilla_evolution;
#[path = "../examples/single_run.rs"]
mod single_run;
#[path = "../examples/shared_vs_fresh.rs"]
mod shared_vs_fresh;
#[path = "../examples/probabilistic_violation.rs"]
mod probabilistic_violation;
#[path = "../examples/oracle_check.rs"]
mod oracle_check;

#[test]
fn bec_coherence_runs() {
    bec_coherence::run_example().unwrap();
}

#[test]
fn ancilla_evolution_runs() {
    ancilla_evolution::run_example().unwrap();
}

#[test]
fn single_run_runs() {
    single_run::run_example(1, 80, 3).unwrap();
}

#[test]
fn shared_vs_fresh_writes_histograms() {
    let dir = tempfile::tempdir().unwrap();
    shared_vs_fresh::run_example(50, Some(dir.path())).unwrap();
    assert!(dir.path().join("fresh_800").join("histogram.csv").exists());
}

#[test]
fn probabilistic_violation_runs() {
    probabilistic_violation::run_example(40).unwrap();
}

#[test]
fn oracle_check_runs() {
    oracle_check::run_example().unwrap();
}
