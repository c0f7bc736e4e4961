//! Certified route for one-variable inputs: Euclid over `Q[x]` on integral
//! conjugates of `g` until the denominators that show up are coprime, then a
//! dilation certificate over each `Z[1/s]` and patching along the covering.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactring::{BaseRing, MultiPoly};
use crate::localglobal::{dilation_factor, patch, CoveringData, DescentBudget};
use crate::matrix::Matrix;
use crate::rootdata::RootSystem;
use crate::words::ElemWord;

use super::euclid::euclid_factor;
use super::Budget;

const CONJUGATE_TRIES: usize = 8;
const CONJUGATE_SEED: u64 = 0xc0de;

fn denominator_lcm(w: &ElemWord) -> BigInt {
    let mut d = BigInt::one();
    for (_, t) in w.letters() {
        for (_, c) in t.terms() {
            d = d.lcm(c.denom());
        }
    }
    d
}

/// Short integral word with small arguments, constant or linear.
fn random_integral_word<R: Rng>(rng: &mut R, rs: &Arc<RootSystem>, g: &Matrix) -> ElemWord {
    let ctx = g.ctx();
    let mut w = ElemWord::empty(rs.clone(), ctx);
    for _ in 0..rng.gen_range(1..=3) {
        let c = MultiPoly::from_int(ctx, rng.gen_range(1..=3) * if rng.gen() { 1 } else { -1 });
        let t = if rng.gen_bool(0.3) { c.mul(&MultiPoly::var(ctx, 0)) } else { c };
        w.push(rng.gen_range(0..rs.num_roots()), t);
    }
    w
}

/// Word for `g` over `Z[1/s]` read off from Euclid on `a g b` over `Q[x]`.
fn local_word(rs: &Arc<RootSystem>, g: &Matrix, a: &ElemWord, b: &ElemWord) -> Result<(u64, ElemWord)> {
    let conj = a.eval().mul(g).mul(&b.eval());
    let wq = euclid_factor(rs, &conj.change_base(BaseRing::Rationals)?)?;
    let d = denominator_lcm(&wq);
    let s = d.to_u64().ok_or_else(|| Error::NotFactored(format!("denominator {d} too large")))?;
    let base = if s == 1 { BaseRing::Integers } else { BaseRing::IntegersLocalized(s) };
    let w = a
        .inverse()
        .change_base(base)?
        .concat(&wq.change_base(base)?)
        .concat(&b.inverse().change_base(base)?)
        .free_reduce();
    Ok((s, w))
}

/// Elementary word for `g ∈ G(Z[x])` in one variable.
pub(crate) fn local_global(rs: &Arc<RootSystem>, g: &Matrix, budget: &Budget) -> Result<ElemWord> {
    let ctx = g.ctx();
    if ctx.nvars != 1 || ctx.base != BaseRing::Integers {
        return Err(Error::NotFactored("local-global route needs one variable over Z".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(CONJUGATE_SEED);
    let empty = ElemWord::empty(rs.clone(), ctx);
    let mut found: Vec<(u64, ElemWord)> = Vec::new();
    let mut acc = BigInt::zero();
    for attempt in 0..CONJUGATE_TRIES {
        let (a, b) = if attempt == 0 {
            (empty.clone(), empty.clone())
        } else {
            (random_integral_word(&mut rng, rs, g), random_integral_word(&mut rng, rs, g))
        };
        let (s, w) = match local_word(rs, g, &a, &b) {
            Ok(v) => v,
            Err(e) => {
                log::debug!("conjugate {attempt}: {e}");
                continue;
            }
        };
        if s == 1 {
            let w = w.change_base(BaseRing::Integers)?;
            if w.eval() != *g {
                return Err(Error::VerificationFailed("integral euclidean word".into()));
            }
            return Ok(w);
        }
        let next = acc.gcd(&BigInt::from(s));
        if next == acc {
            continue;
        }
        log::debug!("local word over Z[1/{s}], {} letters", w.len());
        found.push((s, w));
        acc = next;
        if acc.is_one() {
            break;
        }
    }
    if !acc.is_one() {
        return Err(Error::NotFactored(format!("no coprime set of localizations found (gcd {acc})")));
    }
    assemble(rs, g, &found, budget)
}

/// Patches words for `g` over `Z[1/s_i]`, `gcd(s_i) = 1`, into one over `Z`.
fn assemble(rs: &Arc<RootSystem>, g: &Matrix, found: &[(u64, ElemWord)], budget: &Budget) -> Result<ElemWord> {
    let descent = DescentBudget { max_letters: budget.max_letters, ..DescentBudget::default() };
    let certs = found
        .par_iter()
        .map(|(_, w)| dilation_factor(g, w, 0, &descent))
        .collect::<Result<Vec<_>>>()?;
    let elems: Vec<BigInt> = found.iter().map(|(s, _)| BigInt::from(*s)).collect();
    let exponents: Vec<u32> = certs.iter().map(|c| c.k).collect();
    let covering = CoveringData::new(elems)?.raised(&exponents)?;
    let moving = patch(g, 0, &certs, &covering)?;
    let fixed = euclid_factor(rs, &g.at_zero(0))?;
    let w = moving.concat(&fixed).free_reduce();
    if w.eval() != *g {
        return Err(Error::VerificationFailed("patched factorization".into()));
    }
    Ok(w)
}
