//! Algebraic invariants on seeded random inputs.

use std::sync::Arc;

use chevalley::exactring::{monic_divrem, BaseRing, MonicLocElem, MultiPoly, PolyCtx, RingElem, Substitution};
use chevalley::factorize::{factor_integer_sl, factor_integer_sp, heuristic_reduce, Budget};
use chevalley::io::{from_json, to_json, WordFile};
use chevalley::localglobal::{dilation_factor, patch, CoveringData, DescentBudget};
use chevalley::rootdata::{
    build_frame, build_root_system, commutator_expand, group_inverse, membership_check, weyl_and_torus, RootKind,
    RootSystem,
};
use chevalley::sample::{padded_local_word, random_nonzero_poly, random_poly, random_word, PolySpec};
use chevalley::words::{free_reduce, invert_word, map_word, Hom};
use chevalley::Matrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn system(pick: u8) -> Arc<RootSystem> {
    let (kind, rank) = [(RootKind::A, 2), (RootKind::A, 3), (RootKind::C, 2), (RootKind::C, 3)][pick as usize % 4];
    build_root_system(kind, rank).unwrap()
}

fn ctx(nvars: usize) -> PolyCtx {
    PolyCtx::new(BaseRing::Integers, nvars)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn additivity(pick in 0u8..4, seed: u64) {
        let rs = system(pick);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = ctx(2);
        let a = rng.gen_range(0..rs.num_roots());
        let (s, t) = (random_poly(&mut rng, c, &PolySpec::default()), random_poly(&mut rng, c, &PolySpec::default()));
        prop_assert_eq!(rs.unipotent(a, &s).mul(&rs.unipotent(a, &t)), rs.unipotent(a, &s.add(&t)));
        prop_assert!(rs.unipotent(a, &s).mul(&rs.unipotent(a, &s.neg())).is_identity());
    }

    #[test]
    fn commutator_matches_literal_product(pick in 0u8..4, seed: u64) {
        let rs = system(pick);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = ctx(2);
        let a = rng.gen_range(0..rs.num_roots());
        let b = rng.gen_range(0..rs.num_roots());
        prop_assume!(a != b && rs.negate(a) != b);
        let (s, t) = (random_poly(&mut rng, c, &PolySpec::default()), random_poly(&mut rng, c, &PolySpec::default()));
        let literal = rs.unipotent(a, &s).mul(&rs.unipotent(b, &t)).mul(&rs.unipotent(a, &s.neg())).mul(&rs.unipotent(b, &t.neg()));
        prop_assert_eq!(commutator_expand(&rs, a, b, &s, &t).unwrap().eval(), literal);
    }

    #[test]
    fn torus_scales_root_groups(pick in 0u8..4, seed: u64) {
        let rs = system(pick);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = PolyCtx::new(BaseRing::localized(6).unwrap(), 1);
        let a = rng.gen_range(0..rs.num_roots());
        let b = rng.gen_range(0..rs.num_roots());
        let u = [2i64, 3, -6, -1][rng.gen_range(0..4)];
        let t = random_poly(&mut rng, c, &PolySpec::default());
        let (_, h) = weyl_and_torus(&rs, a, &MultiPoly::from_int(c, u)).unwrap();
        let lhs = h.mul(&rs.unipotent(b, &t)).mul(&group_inverse(&h, rs.model()));
        let e = rs.pairing(b, a);
        let scale = MultiPoly::constant(c, c.base.pow(&c.base.from_int(u), e.unsigned_abs() as u32));
        let scaled = if e >= 0 { t.mul(&scale) } else { t.div_scalar(&scale.constant_value().unwrap()).unwrap() };
        prop_assert_eq!(lhs, rs.unipotent(b, &scaled));
    }

    #[test]
    fn words_invert_and_reduce(pick in 0u8..4, seed: u64, len in 0usize..12) {
        let rs = system(pick);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&mut rng, &rs, ctx(2), len, &PolySpec::default());
        let g = w.eval();
        prop_assert!(w.clone().concat(&invert_word(&w)).eval().is_identity());
        prop_assert_eq!(invert_word(&w).eval(), group_inverse(&g, rs.model()));
        let r = free_reduce(&w);
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(r.eval(), g.clone());
        prop_assert!(free_reduce(&w.clone().concat(&invert_word(&w))).is_empty());
        prop_assert!(membership_check(&g, rs.model()).unwrap());
    }

    #[test]
    fn ring_maps_commute_with_eval(pick in 0u8..4, seed: u64) {
        let rs = system(pick);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = ctx(2);
        let w = random_word(&mut rng, &rs, c, 6, &PolySpec::default());
        let image = MultiPoly::var(c, 0).mul(&MultiPoly::var(c, 1)).add(&MultiPoly::from_int(c, rng.gen_range(-3..=3)));
        let sub = Substitution::single(c, 1, image);
        prop_assert_eq!(map_word(&w, &Hom::Substitute(sub.clone())).unwrap().eval(), w.eval().substitute(&sub).unwrap());
        let modulus = BaseRing::IntegersMod(rng.gen_range(2..30));
        prop_assert_eq!(map_word(&w, &Hom::Rebase(modulus)).unwrap().eval(), w.eval().change_base(modulus).unwrap());
        let loc = map_word(&w, &Hom::Localize(6)).unwrap();
        prop_assert_eq!(loc.eval(), w.eval().change_base(loc.ctx().base).unwrap());
    }

    #[test]
    fn word_files_round_trip(pick in 0u8..4, seed: u64) {
        let rs = system(pick);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&mut rng, &rs, ctx(2), 5, &PolySpec::default());
        let back: WordFile = from_json(&to_json(&WordFile::from_word(&w))).unwrap();
        prop_assert_eq!(back.to_word().unwrap(), w);
    }

    #[test]
    fn monic_division(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = ctx(2);
        let spec = PolySpec { max_degree: 3, ..PolySpec::default() };
        let g = random_poly(&mut rng, c, &spec);
        let d = rng.gen_range(1..=3);
        let lower = PolySpec { max_degree: d - 1, ..PolySpec::default() };
        let f = MultiPoly::var(c, 0).pow(d).add(&random_poly(&mut rng, c, &lower).at_zero(0));
        let (q, r) = monic_divrem(&g, &f, 0).unwrap();
        prop_assert_eq!(q.mul(&f).add(&r), g);
        prop_assert!(r.degree_in(0).is_none_or(|e| e < d));
    }

    #[test]
    fn monic_units_invert(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = ctx(1);
        let d = rng.gen_range(0..=3);
        let lower = PolySpec { max_degree: d.max(1) - 1, ..PolySpec::default() };
        let sign = if rng.gen() { 1 } else { -1 };
        let p = MultiPoly::var(c, 0).pow(d).scale(&c.base.from_int(sign)).add(&if d == 0 { MultiPoly::zero(c) } else { random_poly(&mut rng, c, &lower) });
        let u = MonicLocElem::from_poly(p);
        prop_assert!(u.is_unit());
        let inv = u.unit_inverse().unwrap();
        prop_assert!(u.mul(&inv).is_one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn heuristic_conserves_the_product(pick in 0u8..4, seed: u64, len in 1usize..10) {
        let rs = system(pick);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_word(&mut rng, &rs, ctx(1), len, &PolySpec::default()).eval();
        let small = Budget { max_steps: 50, ..Budget::default() };
        for budget in [small, Budget::default()] {
            let (w, residual) = heuristic_reduce(&rs, &g, &budget);
            prop_assert_eq!(w.eval().mul(&residual), g.clone());
            prop_assert!(membership_check(&residual, rs.model()).unwrap());
        }
    }

    #[test]
    fn integer_base_case(rank in 1usize..4, symplectic: bool, seed: u64) {
        let kind = if symplectic { RootKind::C } else { RootKind::A };
        let rs = build_frame(kind, rank).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = PolySpec { max_degree: 0, ..PolySpec::default() };
        let g = random_word(&mut rng, &rs, ctx(1), 8, &spec).eval();
        let w = if symplectic { factor_integer_sp(&g) } else { factor_integer_sl(&g) }.unwrap();
        prop_assert_eq!(w.eval(), g);
    }

    #[test]
    fn telescoping_patch(seed: u64, three: bool) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = ctx(1);
        let rs = system(rng.gen_range(0..4) as u8 & 2);
        let len = rng.gen_range(1..=4);
        let w = random_word(&mut rng, &rs, c, len, &PolySpec::default());
        let g = w.eval();
        let elems: Vec<u64> = if three { vec![2, 3, 5] } else { vec![3, 4] };
        let certs: Vec<_> = elems
            .iter()
            .map(|&s| dilation_factor(&g, &padded_local_word(&w, s).unwrap(), 0, &DescentBudget::default()).unwrap())
            .collect();
        for cert in &certs {
            prop_assert!(cert.word().is_integral());
        }
        let ks: Vec<u32> = certs.iter().map(|c| c.k).collect();
        let cov = CoveringData::new(elems.iter().map(|&s| s.into()).collect()).unwrap().raised(&ks).unwrap();
        let h = patch(&g, 0, &certs, &cov).unwrap();
        prop_assert!(h.is_integral());
        prop_assert_eq!(h.eval(), g.mul(&group_inverse(&g.at_zero(0), rs.model())));
    }

    #[test]
    fn nonzero_polys_are_nonzero(seed: u64, nvars in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert!(!random_nonzero_poly(&mut rng, ctx(nvars), &PolySpec::default()).is_zero());
    }
}

#[test]
fn identity_is_in_every_group() {
    for pick in 0..4 {
        let rs = system(pick);
        let n = rs.model().size();
        assert!(membership_check(&Matrix::<MultiPoly>::identity(n, ctx(1)), rs.model()).unwrap());
    }
}
