//! Patches local words over Z[1/s_i] into one integral word along the
//! telescoping chain of a covering, and checks the chain identity directly.
//!
//! Usage: `cargo run --release --example telescoping -- [matrices] [seed]`

use std::time::Instant;

use chevalley::exactring::{BaseRing, MultiPoly, PolyCtx, Substitution};
use chevalley::localglobal::{dilation_factor, patch, CoveringData, DescentBudget};
use chevalley::rootdata::{build_root_system, group_inverse, RootKind};
use chevalley::sample::{padded_local_word, random_word, PolySpec};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let count: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let seed: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(5);
    let ctx = PolyCtx::new(BaseRing::Integers, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for elems in [vec![2u64, 3], vec![2, 3, 5]] {
        let start = Instant::now();
        let mut ok = 0;
        let mut longest = 0;
        for i in 0..count {
            let kind = if i % 2 == 0 { RootKind::A } else { RootKind::C };
            let rs = build_root_system(kind, 2).unwrap();
            let len = rng.gen_range(1..=6);
            let w = random_word(&mut rng, &rs, ctx, len, &PolySpec::default());
            let g = w.eval();
            let certs: Vec<_> = elems
                .iter()
                .map(|&s| dilation_factor(&g, &padded_local_word(&w, s).unwrap(), 0, &DescentBudget::default()).unwrap())
                .collect();
            let ks: Vec<u32> = certs.iter().map(|c| c.k).collect();
            let cov = CoveringData::new(elems.iter().map(|&s| BigInt::from(s)).collect()).unwrap().raised(&ks).unwrap();

            // chain identity: prod_j g(a_j x) g(a_{j+1} x)^{-1} = g(x) g(0)^{-1}
            let at = |a: &BigInt| {
                let sub = Substitution::single(ctx, 0, MultiPoly::var(ctx, 0).mul(&MultiPoly::from_int(ctx, a.clone())));
                g.substitute(&sub).unwrap()
            };
            let chain = cov.chain();
            let mut prod = chevalley::Matrix::identity(g.size(), ctx);
            for j in 0..chain.len() - 1 {
                prod = prod.mul(&at(&chain[j])).mul(&group_inverse(&at(&chain[j + 1]), rs.model()));
            }
            let expected = g.mul(&group_inverse(&g.at_zero(0), rs.model()));

            let patched = patch(&g, 0, &certs, &cov).unwrap();
            if prod == expected && patched.eval() == expected && patched.is_integral() {
                ok += 1;
            }
            longest = longest.max(patched.len());
        }
        println!("covering {elems:?}: {ok}/{count} patched exactly, longest word {longest} ({:.2?})", start.elapsed());
    }
}
