use std::process::ExitCode;
use std::time::Instant;

use seqbell::cli::{emit, parse_config, run_with_threads, threads_from_env, OutputBundle};

fn main() -> ExitCode {
    let inv = match parse_config(std::env::args_os()) {
        Ok(inv) => inv,
        Err(e) => e.exit(),
    };
    let threads = match threads_from_env() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let start = Instant::now();
    let result = match run_with_threads(&inv.config, threads) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let wall_time = inv.timing.then(|| start.elapsed().as_secs_f64());

    let bundle = OutputBundle::from_result(&result, wall_time);
    match emit(&bundle, &inv.out_dir, inv.format) {
        Ok(paths) => {
            let s = &result.stats;
            println!(
                "C(a',b') mean {:.4} std {:.4}  P(C > 0) = {:.4}  mean S {:.4}",
                s.mean_c, s.std_c, s.violation_probability, s.mean_s
            );
            for p in paths {
                println!("wrote {}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
