//! Seeded random polynomials and words for test suites and the CLI.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactring::{BaseRing, Coeff, Monomial, MultiPoly, PolyCtx};
use crate::io::CertificateFile;
use crate::rootdata::{build_frame, commutator_expand, RootSystem};
use crate::words::ElemWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolySpec {
    pub max_degree: u32,
    /// Integer numerators drawn from `[-coeff_bound, coeff_bound]`.
    pub coeff_bound: i64,
    pub max_terms: usize,
    /// Denominators `s^e` with `e <= max_denom_exp`; only used when
    /// `denom_base > 1`.
    pub denom_base: u64,
    pub max_denom_exp: u32,
}

impl Default for PolySpec {
    fn default() -> Self {
        PolySpec { max_degree: 2, coeff_bound: 9, max_terms: 3, denom_base: 1, max_denom_exp: 0 }
    }
}

fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(nvars)];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for m in &out {
            for v in 0..nvars {
                let n = m.mul(&Monomial::var(nvars, v));
                if !out.contains(&n) && !next.contains(&n) {
                    next.push(n);
                }
            }
        }
        out.extend(next);
    }
    out
}

/// Random polynomial; may be zero.
pub fn random_poly<R: Rng>(rng: &mut R, ctx: PolyCtx, spec: &PolySpec) -> MultiPoly {
    let monos = monomials_up_to(ctx.nvars, spec.max_degree);
    let nterms = rng.gen_range(1..=spec.max_terms.max(1));
    let mut acc = MultiPoly::zero(ctx);
    for _ in 0..nterms {
        let m = monos[rng.gen_range(0..monos.len())].clone();
        let num = rng.gen_range(-spec.coeff_bound..=spec.coeff_bound);
        let den = if spec.denom_base > 1 {
            BigInt::from(spec.denom_base).pow(rng.gen_range(0..=spec.max_denom_exp))
        } else {
            BigInt::from(1)
        };
        let c = ctx.base.normalize(Coeff::new(BigInt::from(num), den)).unwrap_or_else(|_| Coeff::from(BigInt::from(0)));
        acc = acc.add(&MultiPoly::monomial(ctx, m, c));
    }
    acc
}

/// Like [`random_poly`] but never zero.
pub fn random_nonzero_poly<R: Rng>(rng: &mut R, ctx: PolyCtx, spec: &PolySpec) -> MultiPoly {
    loop {
        let p = random_poly(rng, ctx, spec);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random word with exactly `len` letters and nonzero arguments.
pub fn random_word<R: Rng>(rng: &mut R, rs: &Arc<RootSystem>, ctx: PolyCtx, len: usize, spec: &PolySpec) -> ElemWord {
    let mut w = ElemWord::empty(rs.clone(), ctx);
    for _ in 0..len {
        let root = rng.gen_range(0..rs.num_roots());
        w.push(root, random_nonzero_poly(rng, ctx, spec));
    }
    w
}

/// Word over `Z[1/s]` with genuine denominators evaluating to `w.eval()`:
/// `w`, then `[x_α(x/s), x_β(s)]` and the inverse of its expansion.
/// `w` must be integral in at least one variable.
pub fn padded_local_word(w: &ElemWord, s: u64) -> Result<ElemWord> {
    let rs = w.rs().clone();
    let base = BaseRing::localized(s as i64)?;
    let ctx = PolyCtx::new(base, w.ctx().nvars);
    let (alpha, beta) = rs
        .roots()
        .flat_map(|a| rs.roots().map(move |b| (a, b)))
        .find(|&(a, b)| rs.constants().terms(a, b).is_some_and(|t| !t.is_empty()))
        .ok_or_else(|| Error::PreconditionViolated("no root pair with a nontrivial commutator".into()))?;
    let sc = ctx.base.from_int(BigInt::from(s));
    let x = MultiPoly::var(ctx, 0);
    let u = x.div_scalar(&sc).expect("s is a unit");
    let v = MultiPoly::constant(ctx, sc);
    let mut out = ElemWord::empty(rs.clone(), ctx);
    for (root, arg) in [(alpha, u.clone()), (beta, v.clone()), (alpha, u.neg()), (beta, v.neg())] {
        out.push(root, arg);
    }
    let expansion = commutator_expand(&rs, alpha, beta, &u, &v)?;
    Ok(w.change_base(base)?.concat(&out).concat(&expansion.inverse()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    PerturbArg,
    DropLetter,
    SwapRoots,
}

impl Mutation {
    pub const ALL: [Mutation; 3] = [Mutation::PerturbArg, Mutation::DropLetter, Mutation::SwapRoots];
}

/// Applies one edit to the word of `file`. `SwapRoots` exchanges the roots
/// of two letters, or replaces the root of a one-letter word.
pub fn mutate_certificate<R: Rng>(rng: &mut R, file: &CertificateFile, kind: Mutation) -> Result<CertificateFile> {
    let n = file.word.len();
    if n == 0 {
        return Err(Error::PreconditionViolated("empty word".into()));
    }
    let ctx = PolyCtx::new(file.base.parse::<BaseRing>()?, file.nvars);
    let mut out = file.clone();
    let i = rng.gen_range(0..n);
    match kind {
        Mutation::PerturbArg => {
            let arg = MultiPoly::parse(ctx, &file.word[i].arg)?;
            let spec = PolySpec { max_degree: 1, coeff_bound: 3, ..PolySpec::default() };
            out.word[i].arg = arg.add(&random_nonzero_poly(rng, ctx, &spec)).to_string();
        }
        Mutation::DropLetter => {
            out.word.remove(i);
        }
        Mutation::SwapRoots => {
            let others: Vec<usize> = (0..n).filter(|&j| file.word[j].root != file.word[i].root).collect();
            if others.is_empty() {
                let rs = build_frame(file.group.kind, file.group.rank)?;
                let current = rs.root_id(&file.word[i].root)?;
                let mut r = rng.gen_range(0..rs.num_roots() - 1);
                if r >= current {
                    r += 1;
                }
                out.word[i].root = rs.root_vector(r).to_vec();
            } else {
                let j = others[rng.gen_range(0..others.len())];
                out.word[i].root = file.word[j].root.clone();
                out.word[j].root = file.word[i].root.clone();
            }
        }
    }
    Ok(out)
}
