//! Constant integer matrices and univariate matrices over a field: the
//! Euclidean base cases.

use chevalley::exactring::{BaseRing, PolyCtx};
use chevalley::factorize::{factor_integer_sl, factor_integer_sp, factor_univar_euclidean};
use chevalley::rootdata::{build_frame, build_root_system, RootKind};
use chevalley::sample::{random_word, PolySpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let zctx = PolyCtx::new(BaseRing::Integers, 1);
    let constants = PolySpec { max_degree: 0, ..PolySpec::default() };
    for (kind, rank) in [(RootKind::A, 1), (RootKind::A, 3), (RootKind::C, 1), (RootKind::C, 2)] {
        // rank-1 frames exist for the integer base case only
        let rs = build_frame(kind, rank).unwrap();
        let g = random_word(&mut rng, &rs, zctx, 8, &constants).eval();
        let w = match kind {
            RootKind::A => factor_integer_sl(&g),
            RootKind::C => factor_integer_sp(&g),
        }
        .unwrap();
        println!("{kind}{rank} over Z: {} letters, exact = {}", w.len(), w.eval() == g);
    }

    let qctx = PolyCtx::new(BaseRing::Rationals, 1);
    let spec = PolySpec { denom_base: 6, max_denom_exp: 1, ..PolySpec::default() };
    for kind in [RootKind::A, RootKind::C] {
        let rs = build_root_system(kind, 2).unwrap();
        let g = random_word(&mut rng, &rs, qctx, 6, &spec).eval();
        let w = factor_univar_euclidean(&g, kind).unwrap();
        println!("{kind}2 over Q[x]: {} letters, exact = {}", w.len(), w.eval() == g);
    }
}
