//! Commutator, additivity and torus relations for A2, A3, C2, C3 against
//! literal matrix products.
//!
//! Usage: `cargo run --release --example relations -- [trials] [seed]`

use std::time::Instant;

use chevalley::relations::run_relation_suite;
use chevalley::rootdata::RootKind;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let trials: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let seed: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0);
    for (kind, rank) in [(RootKind::A, 2), (RootKind::A, 3), (RootKind::C, 2), (RootKind::C, 3)] {
        let start = Instant::now();
        let report = run_relation_suite(kind, rank, trials, seed, 2).unwrap();
        println!("{report} ({:.2?})", start.elapsed());
    }
}
