//! Factors evaluations of random elementary words and reports success rates.
//!
//! Usage: `cargo run --release --example roundtrip -- [trials] [seed]`

use std::time::Instant;

use chevalley::cli::roundtrip;
use chevalley::factorize::Budget;
use chevalley::rootdata::{GroupModel, RootKind};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let trials: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let seed: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1);
    // (type, rank, variables, longest word)
    let suites = [(RootKind::A, 2, 1, 15), (RootKind::A, 3, 2, 10), (RootKind::C, 2, 1, 10)];
    for (kind, rank, nvars, max_len) in suites {
        let start = Instant::now();
        let report = roundtrip(GroupModel::new(kind, rank), nvars, trials, seed, max_len, &Budget::default()).unwrap();
        println!("{report} ({:.2?})", start.elapsed());
    }
}
