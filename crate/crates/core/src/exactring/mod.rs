//! Exact arithmetic: base rings, multivariate polynomials, localizations at a
//! single element and at the monic polynomials.

mod base;
mod monic;
mod parse;
mod poly;
mod ring;

use num_traits::Zero;

pub use base::{BaseRing, Coeff};
pub(crate) use base::{coeff_to_i64, int, mod_inverse, strip_common};
pub use monic::{is_monic, MonicLocElem, MONIC_VAR};
pub use poly::{coeff_s_valuation, poly_op, Monomial, MultiPoly, PolyCtx, PolyOpKind, Substitution};
pub use ring::RingElem;

use crate::error::{Error, Result};

/// Ring-homomorphism image of `p`; `substitute(p, x -> 0)` keeps the x-free part.
pub fn substitute(p: &MultiPoly, assignment: &Substitution) -> Result<MultiPoly> {
    p.substitute(assignment)
}

/// Exponent search limit for finite rings. Any `Z/m` with `m < 2^64` has all
/// prime multiplicities below 64, so the search below is exact.
const ANNIHILATOR_SEARCH: u32 = 64;

/// Smallest `n >= 0` with `s^n * d = 0` in `base`, or `None` when no power of
/// `s` kills `d`.
pub fn annihilator_exponent(base: BaseRing, d: &Coeff, s: &Coeff) -> Option<u32> {
    if d.is_zero() {
        return Some(0);
    }
    let s = &base.normalize(s.clone()).ok()?;
    if base.is_domain() {
        return s.is_zero().then_some(1);
    }
    let mut acc = d.clone();
    for n in 1..=ANNIHILATOR_SEARCH {
        acc = base.mul(&acc, s);
        if acc.is_zero() {
            return Some(n);
        }
    }
    None
}

/// Decides `F_s(a) = F_s(b)`: every coefficient of `a - b` must be killed by a
/// power of `s`.
pub fn localize_eq(a: &MultiPoly, b: &MultiPoly, s: &Coeff) -> Result<bool> {
    if a.ctx() != b.ctx() {
        return Err(Error::BaseMismatch);
    }
    let base = a.base();
    let s = base.normalize(s.clone())?;
    let diff = a.sub(b);
    Ok(diff.terms().iter().all(|(_, c)| annihilator_exponent(base, c, &s).is_some()))
}

/// Division with remainder by a polynomial monic in `x_var`:
/// `g = q*f + r` with `deg_x r < deg_x f`.
pub fn monic_divrem(g: &MultiPoly, f: &MultiPoly, var: usize) -> Result<(MultiPoly, MultiPoly)> {
    if g.ctx() != f.ctx() {
        return Err(Error::BaseMismatch);
    }
    if !is_monic(f, var) {
        return Err(Error::NotMonic);
    }
    let ctx = g.ctx();
    let df = f.degree_in(var).unwrap_or(0);
    let mut q = MultiPoly::zero(ctx);
    let mut r = g.clone();
    while let Some(dr) = r.degree_in(var) {
        if dr < df {
            break;
        }
        let lead = r.coeff_in(var, dr);
        let mut shift = Monomial::one(ctx.nvars);
        shift.0[var] = (dr - df) as u16;
        let t = lead.mul_term(&shift, &int(1));
        r = r.sub(&t.mul(f));
        q = q.add(&t);
    }
    Ok((q, r))
}
