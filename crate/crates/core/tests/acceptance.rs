//! Runs every acceptance criterion and prints one line per criterion.

use abext::suite::run_all;

const SEED: u64 = 20240611;

fn main() {
    let results = run_all(SEED);
    for r in &results {
        println!("{}", r.line());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {} failed", results.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
