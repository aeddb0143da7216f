//! Run-to-run distribution of `C(a',b')` for one shared ancillary particle
//! versus a fresh one per pair, at two run lengths.
//!
//! A reused ancilla gives a broad distribution whose width does not shrink
//! with `M`; independent pairs give a narrow one that shrinks as `1/sqrt(M)`.
//! Both have the same mean. Writes `histogram_<mode>_<M>.csv` files into the
//! directory given as the second argument (default: no files).
//!
//!     cargo run --release --example shared_vs_fresh -- [runs] [out_dir]

use std::path::Path;

use seqbell::cli::{emit, OutputBundle, OutputFormat, HISTOGRAM_FILE};
use seqbell::ensemble::{run_ensemble, AncillaMode, EnsembleResult, SimulationConfig};

fn sparkline(result: &EnsembleResult) -> String {
    const LEVELS: [char; 8] = ['▁', '▂', '▃', '▄', '▅', '▆', '▇', '█'];
    let d = result.histogram.densities();
    // merge to 40 columns
    let cols = 40;
    let per = d.len().div_ceil(cols);
    let merged: Vec<f64> = d.chunks(per).map(|c| c.iter().sum::<f64>() / c.len() as f64).collect();
    let max = merged.iter().copied().fold(0.0, f64::max);
    merged
        .iter()
        .map(|&x| if x == 0.0 { ' ' } else { LEVELS[((x / max) * 7.0).round() as usize] })
        .collect()
}

pub fn run_example(runs: usize, out_dir: Option<&Path>) -> seqbell::Result<()> {
    println!("N = 1, {runs} runs; C(a',b') on [-1, 1]\n");
    for mode in [AncillaMode::Reused, AncillaMode::Fresh] {
        for pairs in [400, 800] {
            let config = SimulationConfig {
                n_ancilla: 1,
                pairs,
                runs,
                mode,
                ..Default::default()
            };
            let result = run_ensemble(&config)?;
            let s = &result.stats;
            println!(
                "{:<7} M={pairs:<4} mean {:+.4} std {:.4} P(C>0) {:.3} |{}|",
                format!("{mode:?}"),
                s.mean_c,
                s.std_c,
                s.violation_probability,
                sparkline(&result)
            );
            if let Some(dir) = out_dir {
                let sub = dir.join(format!("{mode:?}_{pairs}").to_lowercase());
                emit(&OutputBundle::from_result(&result, None), &sub, OutputFormat::Csv)?;
                println!("        wrote {}", sub.join(HISTOGRAM_FILE).display());
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> seqbell::Result<()> {
    let mut args = std::env::args().skip(1);
    let runs = args.next().and_then(|s| s.parse().ok()).unwrap_or(10_000);
    let out = args.next();
    run_example(runs, out.as_deref().map(Path::new))
}
