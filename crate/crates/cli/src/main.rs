use clap::Parser;
use fracineq_cli::{run, RunConfig};

/// Optional thread-count override for the parallel sweeps and searches.
const THREADS_VAR: &str = "FRACINEQ_THREADS";

fn main() {
    let config = RunConfig::parse();
    if let Ok(v) = std::env::var(THREADS_VAR) {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                    eprintln!("error: cannot set thread count: {e}");
                    std::process::exit(1);
                }
            }
            _ => {
                eprintln!("error: {THREADS_VAR} must be a positive integer, got '{v}'");
                std::process::exit(1);
            }
        }
    }
    std::process::exit(run(&config));
}
