use std::time::Instant;

fn main() {
    let qmax: i64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(10);
    let jobs: usize = std::env::args()
        .nth(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    let t0 = Instant::now();
    let outcome = prism_core::scan::scan(qmax, jobs).unwrap();
    println!(
        "qmax={qmax} jobs={jobs}: pairs={} realizable={} disagreements={:?} in {:.2?}",
        outcome.summary.pairs_checked,
        outcome.summary.realizable_pairs,
        outcome.summary.disagreements,
        t0.elapsed()
    );
}
