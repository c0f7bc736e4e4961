//! Clears denominators from congruence words `v(z) v(0)^{-1}` over `Z[1/2][z]`.

use chevalley::exactring::{BaseRing, PolyCtx};
use chevalley::localglobal::{descend_word, DescentBudget};
use chevalley::rootdata::{build_root_system, RootKind};
use chevalley::sample::{random_word, PolySpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let ctx = PolyCtx::new(BaseRing::localized(2).unwrap(), 1);
    let spec = PolySpec { denom_base: 2, max_denom_exp: 3, ..PolySpec::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let budget = DescentBudget::default();
    let mut ok = 0;
    let total = 30;
    for i in 0..total {
        let (kind, rank) = if i % 2 == 0 { (RootKind::A, 2) } else { (RootKind::C, 2) };
        let rs = build_root_system(kind, rank).unwrap();
        let v = random_word(&mut rng, &rs, ctx, 3, &spec);
        let v0 = v.map_args(ctx, |p| Ok(p.at_zero(0))).unwrap();
        let w = v.concat(&v0.inverse());
        let start = std::time::Instant::now();
        match descend_word(&w, 0, &budget) {
            Ok((h, k)) => {
                ok += 1;
                println!("{i:2} {kind}{rank}: k = {k:2}, {:5} letters, {:?}", h.len(), start.elapsed());
            }
            Err(e) => println!("{i:2} {kind}{rank}: {e} ({:?})", start.elapsed()),
        }
    }
    println!("{ok}/{total} descended");
}
