use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seqbell::oracle::correlator_brute_force;
use seqbell::protocol::BasisPair;
use seqbell::quantum::{
    correlator_exact, measure_pair, outcome_distribution, pair_density_matrix, AncillaState, Complex64,
    MeasurementBasis,
};

fn complex_vec(max_len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..max_len)
        .prop_filter("nonzero", |v| v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3))
        .prop_map(|v| v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
}

fn any_pair() -> impl Strategy<Value = BasisPair> {
    prop::sample::select(BasisPair::ALL.to_vec())
}

/// Independent sum of sqrt(P_j P_{j+1}) for the binomial weights.
fn binomial_coherence(n: usize) -> f64 {
    let mut c = vec![1.0f64; n + 1];
    for j in 1..=n {
        c[j] = c[j - 1] * (n - j + 1) as f64 / j as f64;
    }
    let norm = 2f64.powi(n as i32);
    (0..n).map(|j| (c[j] * c[j + 1]).sqrt() / norm).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn partial_trace_matches_pair_density(amps in complex_vec(12)) {
        let anc = AncillaState::from_amplitudes(&amps).unwrap();
        let joint = anc.inject();
        let gamma = anc.next_pair_coherence();
        prop_assert!(gamma.norm() <= 1.0 + 1e-12);
        let traced = joint.reduced_pair_density();
        let formula = pair_density_matrix(gamma).unwrap();
        for (a, b) in traced.matrix().iter().zip(formula.matrix().iter()) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn norms_and_born_completeness(amps in complex_vec(10), pair in any_pair()) {
        let anc = AncillaState::from_amplitudes(&amps).unwrap();
        prop_assert!((anc.norm_sqr() - 1.0).abs() < 1e-9);
        let joint = anc.inject();
        prop_assert!((joint.norm_sqr() - 1.0).abs() < 1e-9);
        let eg = joint.amp_eg();
        let ge = joint.amp_ge();
        prop_assert_eq!(eg[0], Complex64::new(0.0, 0.0));
        prop_assert_eq!(ge[joint.total()], Complex64::new(0.0, 0.0));

        let (a, b) = pair.bases();
        let dist = outcome_distribution(&joint, &a, &b);
        let total: f64 = dist.branches().iter().map(|br| br.probability).sum();
        prop_assert!((total - 1.0).abs() < 1e-9);
        for br in dist.branches() {
            if let Some(post) = &br.post {
                prop_assert!((post.norm_sqr() - 1.0).abs() < 1e-9);
                prop_assert_eq!(post.total(), anc.total() + 1);
            }
        }
    }

    #[test]
    fn outcome_probabilities_follow_correlator(amps in complex_vec(10), ta in 0.0f64..3.2, tb in 0.0f64..3.2) {
        let anc = AncillaState::from_amplitudes(&amps).unwrap();
        let gamma = anc.next_pair_coherence();
        let (a, b) = (MeasurementBasis::with_angle(ta), MeasurementBasis::with_angle(tb));
        let dist = outcome_distribution(&anc.inject(), &a, &b);
        let e = correlator_exact(gamma, ta, tb).unwrap();
        for br in dist.branches() {
            let want = 0.25 * (1.0 + br.outcome.product() as f64 * e);
            prop_assert!((br.probability - want).abs() < 1e-12);
        }
        // single-qubit marginals vanish
        let pa: f64 = dist.branches().iter().map(|br| br.outcome.a.sign() as f64 * br.probability).sum();
        let pb: f64 = dist.branches().iter().map(|br| br.outcome.b.sign() as f64 * br.probability).sum();
        prop_assert!(pa.abs() < 1e-12 && pb.abs() < 1e-12);
    }

    #[test]
    fn three_correlators_ignore_the_ancilla(x in complex_vec(8), y in complex_vec(8)) {
        let jx = AncillaState::from_amplitudes(&x).unwrap().inject();
        let jy = AncillaState::from_amplitudes(&y).unwrap().inject();
        for pair in [BasisPair::AB, BasisPair::ABPrime, BasisPair::APrimeB] {
            let (a, b) = pair.bases();
            let dx = outcome_distribution(&jx, &a, &b);
            let dy = outcome_distribution(&jy, &a, &b);
            for (bx, by) in dx.branches().iter().zip(dy.branches()) {
                prop_assert!((bx.probability - by.probability).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn coherence_is_a_martingale(amps in complex_vec(10), pair in any_pair()) {
        let anc = AncillaState::from_amplitudes(&amps).unwrap();
        let (a, b) = pair.bases();
        let dist = outcome_distribution(&anc.inject(), &a, &b);
        let mean: Complex64 = dist
            .branches()
            .iter()
            .filter_map(|br| br.post.as_ref().map(|p| p.next_pair_coherence() * br.probability))
            .sum();
        prop_assert!((mean - anc.next_pair_coherence()).norm() < 1e-12);
    }

    #[test]
    fn closed_form_matches_trace(re in -0.7f64..0.7, im in -0.7f64..0.7, ta in 0.0f64..3.2, tb in 0.0f64..3.2) {
        let gamma = Complex64::new(re, im);
        let rho = pair_density_matrix(gamma).unwrap();
        let e = correlator_exact(gamma, ta, tb).unwrap();
        prop_assert!((e - correlator_brute_force(&rho, ta, tb)).abs() < 1e-12);
        prop_assert!((-1.0..=1.0).contains(&e));
    }

    #[test]
    fn violation_iff_gamma_above_one_third(g in -1.0f64..1.0) {
        let c = correlator_exact(Complex64::new(g, 0.0), FRAC_PI_3, FRAC_PI_3).unwrap();
        if (g - 1.0 / 3.0).abs() > 1e-12 {
            prop_assert_eq!(c > 0.0, g > 1.0 / 3.0);
        }
    }
}

#[test]
fn binomial_coherence_closed_values() {
    // frozen from a 40-digit evaluation of 2^-N sum_j sqrt(C(N,j) C(N,j+1))
    let frozen = [
        (1, 0.5),
        (2, 0.707_106_781_186_547_5),
        (10, 0.950_485_793_350_205_8),
        (100, 0.995_012_054_113_234_4),
        (200, 0.997_503_069_804_334_3),
    ];
    for (n, want) in frozen {
        let got = AncillaState::bec(n, None).unwrap().next_pair_coherence();
        assert!((got.re - want).abs() < 1e-12, "N={n}: {got} vs {want}");
        assert_eq!(got.im, 0.0);
    }
}

#[test]
fn binomial_coherence_properties() {
    let mut prev = 0.0;
    for n in 1..=200 {
        let gamma = AncillaState::bec(n, None).unwrap().next_pair_coherence().re;
        assert!((gamma - binomial_coherence(n)).abs() < 1e-12, "N={n}");
        assert!(gamma > prev, "not increasing at N={n}");
        prev = gamma;
        if n >= 10 {
            let gap = (gamma - (1.0 - 0.5 / n as f64)).abs();
            // gap * N^2 tends to 1/8
            assert!(gap <= 0.13 / (n * n) as f64, "N={n}: gap {gap}");
        }
    }
    let g100 = AncillaState::bec(100, None).unwrap().next_pair_coherence().re;
    assert!((g100 - (1.0 - 1.0 / 200.0)).abs() <= 1e-4);
}

#[test]
fn sampled_frequencies_follow_born_rule() {
    let joint = AncillaState::vacuum().inject();
    let rot = MeasurementBasis::rotated();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let n = 100_000;
    let same = (0..n)
        .filter(|_| measure_pair(&joint, &rot, &rot, &mut rng).outcome.is_same())
        .count();
    let p = 3.0 / 8.0;
    let sigma = (p * (1.0 - p) / n as f64).sqrt();
    let est = same as f64 / n as f64;
    assert!((est - p).abs() < 3.0 * sigma, "{est} vs {p}");
}

#[test]
fn law_of_total_coherence_on_worked_example() {
    let anc = AncillaState::from_real(&[1.0, 1.0]).unwrap();
    let diag = MeasurementBasis::with_angle(FRAC_PI_4);
    let dist = outcome_distribution(&anc.inject(), &diag, &diag);
    let mut avg = 0.0;
    for br in dist.branches() {
        let gamma = br.post.as_ref().unwrap().next_pair_coherence().re;
        let want = if br.outcome.is_same() { 2.0 / 3.0 } else { 0.0 };
        assert!((gamma - want).abs() < 1e-12);
        avg += br.probability * gamma;
    }
    assert!((avg - 0.5).abs() < 1e-12);
}
