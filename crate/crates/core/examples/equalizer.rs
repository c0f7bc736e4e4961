//! Dilation equalizers over Z/2^e against a brute-force search.
//!
//! `g` and `h = g + z D` agree at `z = 0`, and everything agrees once 2 is
//! inverted since `Z/2^e[1/2] = 0`.

use chevalley::exactring::{BaseRing, Coeff, MultiPoly, PolyCtx, Substitution};
use chevalley::localglobal::dilation_equalizer;
use chevalley::sample::{random_poly, PolySpec};
use chevalley::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let spec = PolySpec::default();
    for e in 2..=6u32 {
        let ctx = PolyCtx::new(BaseRing::IntegersMod(1 << e), 1);
        let z = MultiPoly::var(ctx, 0);
        let two = Coeff::from_integer(2.into());
        let mut agree = 0;
        let mut hist = vec![0usize; e as usize + 1];
        let total = 20;
        for _ in 0..total {
            let rows = |rng: &mut ChaCha8Rng| (0..3).map(|_| (0..3).map(|_| random_poly(rng, ctx, &spec)).collect()).collect();
            let g = Matrix::from_rows(ctx, rows(&mut rng)).unwrap();
            let d = Matrix::from_rows(ctx, rows(&mut rng)).unwrap();
            // scale by a random power of 2 so the minimal n spreads out
            let lift = MultiPoly::from_int(ctx, 1u64 << rng.gen_range(0..e));
            let shift: Vec<Vec<MultiPoly>> = d.rows().iter().map(|r| r.iter().map(|p| p.mul(&z).mul(&lift)).collect()).collect();
            let h = Matrix::from_rows(ctx, g.rows().iter().zip(&shift).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect()).collect()).unwrap();

            let n = dilation_equalizer(&g, &h, &two, 0).unwrap();
            let brute = (0..=e)
                .find(|&m| {
                    let sub = Substitution::dilation(ctx, 0, &Coeff::from_integer((1u64 << m).into()));
                    g.substitute(&sub).unwrap() == h.substitute(&sub).unwrap()
                })
                .unwrap();
            if n == brute {
                agree += 1;
            }
            hist[brute as usize] += 1;
        }
        println!("Z/2^{e}: {agree}/{total} match brute force, minimal n histogram {hist:?}");
    }
}
