//! Clearing denominators from congruence words by dilating the congruence
//! variable.
//!
//! A word `w(z)` over `Z[1/s][.., z]` that is trivial at `z = 0` is rewritten
//! as a product of conjugates `P_{j-1} x(b_j) P_{j-1}^{-1}` with `b_j`
//! divisible by `z` and `P_j` the product of the `z = 0` parts. Conjugates are
//! expanded with the commutator formula until every letter argument carries
//! a factor coming from `z`; dilating `z -> s^k z` then clears the remaining
//! denominators.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactring::{int, BaseRing, MultiPoly, Substitution};
use crate::rootdata::{RootId, RootSystem};
use crate::words::{congruence_check, ElemWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DescentBudget {
    /// Upper bound on letters of any intermediate expansion.
    pub max_letters: usize,
    /// Largest dilation exponent tried.
    pub max_k: u32,
}

impl Default for DescentBudget {
    fn default() -> Self {
        DescentBudget { max_letters: 50_000, max_k: 40 }
    }
}

type Letter = (RootId, MultiPoly);

/// Finds `(h, k)` with `h` integral, trivial at `z = 0`, and
/// `F_s(eval h) = eval(w)(s^k z)`.
pub fn descend_word(w: &ElemWord, z: usize, budget: &DescentBudget) -> Result<(ElemWord, u32)> {
    let ctx = w.ctx();
    let s = match ctx.base {
        BaseRing::IntegersLocalized(s) => s,
        BaseRing::Integers => {
            if !congruence_check(w, z).holds {
                return Err(Error::PreconditionViolated("word is not trivial at z = 0".into()));
            }
            return Ok((w.clone(), 0));
        }
        other => return Err(Error::InvalidBase(format!("descent needs Z or Z[1/s], got {other}"))),
    };
    if z >= ctx.nvars {
        return Err(Error::PreconditionViolated(format!("no variable x{}", z + 1)));
    }
    if !congruence_check(w, z).holds {
        return Err(Error::PreconditionViolated("word is not trivial at z = 0".into()));
    }
    let w = w.free_reduce();
    let mut factor = int(1);
    for k in 0..=budget.max_k {
        let wk = w.substitute(&Substitution::dilation(ctx, z, &factor))?;
        let candidate = if wk.is_integral() {
            Some(wk.clone())
        } else {
            let expanded = expand_conjugates(&wk, z, s, budget.max_letters)?;
            expanded.is_integral().then_some(expanded)
        };
        if let Some(h) = candidate {
            let h_int = h.change_base(BaseRing::Integers)?;
            if h.eval() != wk.eval() || !congruence_check(&h_int, z).holds {
                return Err(Error::VerificationFailed("descended word does not match the dilated input".into()));
            }
            log::debug!("descent: k = {k}, {} letters", h_int.len());
            return Ok((h_int, k));
        }
        factor *= int(s);
    }
    Err(Error::DescentBudgetExceeded(format!("no integral rewrite with k <= {}", budget.max_k)))
}

/// Rewrites `w` as the product of its `z`-conjugates, expanding each
/// conjugation by a non-integral prefix letter.
pub(crate) fn expand_conjugates(w: &ElemWord, z: usize, s: u64, max_letters: usize) -> Result<ElemWord> {
    let rs = w.rs().clone();
    let letters = w.letters();
    let consts: Vec<MultiPoly> = letters.iter().map(|(_, a)| a.at_zero(z)).collect();
    let integral_prefix = consts.iter().take_while(|c| c.is_integral()).count();
    let mut out = ElemWord::empty(rs.clone(), w.ctx());
    for (j, (root, arg)) in letters.iter().enumerate() {
        let b = arg.sub(&consts[j]);
        if b.is_zero() {
            continue;
        }
        let literal = integral_prefix.min(j);
        let mut cur: Vec<Letter> = vec![(*root, b)];
        for l in (literal..j).rev() {
            if consts[l].is_zero() {
                continue;
            }
            let mut next = Vec::with_capacity(cur.len() * 2);
            for letter in &cur {
                conjugate_letter(&rs, (letters[l].0, &consts[l]), letter, s, &mut next)?;
            }
            cur = ElemWord::new(rs.clone(), w.ctx(), next)?.free_reduce().into_letters();
            if cur.len() > max_letters {
                return Err(Error::DescentBudgetExceeded(format!("expansion exceeded {max_letters} letters")));
            }
        }
        let prefix: Vec<Letter> = (0..literal)
            .filter(|&l| !consts[l].is_zero())
            .map(|l| (letters[l].0, consts[l].clone()))
            .collect();
        for (r, c) in &prefix {
            out.push(*r, c.clone());
        }
        for (r, t) in cur {
            out.push(r, t);
        }
        for (r, c) in prefix.iter().rev() {
            out.push(*r, c.neg());
        }
        out = out.free_reduce();
        if out.len() > max_letters {
            return Err(Error::DescentBudgetExceeded(format!("expansion exceeded {max_letters} letters")));
        }
    }
    Ok(out)
}

/// Appends a word for `x_γ(c) x_β(u) x_γ(-c)` to `out`.
fn conjugate_letter(
    rs: &RootSystem,
    (gamma, c): (RootId, &MultiPoly),
    (beta, u): &Letter,
    s: u64,
    out: &mut Vec<Letter>,
) -> Result<()> {
    if gamma == *beta {
        out.push((*beta, u.clone()));
        return Ok(());
    }
    if gamma != rs.negate(*beta) {
        push_commutator(rs, gamma, *beta, c, u, out);
        out.push((*beta, u.clone()));
        return Ok(());
    }
    // Opposite roots: write x_β(u) as a commutator of letters on other roots
    // and conjugate those instead.
    let sp = rs
        .splitting(*beta)
        .ok_or_else(|| Error::DescentBudgetExceeded("rank-1 frame cannot split a root".into()))?;
    let v = u.s_valuation(s).unwrap_or(0).max(0);
    let m = (v / (sp.i0 as i64 + 1)) as u32;
    let ctx = u.ctx();
    let a_c = int(BigInt::from(s).pow(m));
    let a = MultiPoly::constant(ctx, a_c.clone());
    let denom = ctx.base.pow(&a_c, sp.i0);
    let b = u
        .div_scalar(&denom)
        .ok_or_else(|| Error::NotInvertible(format!("{s}^{m}")))?
        .scale(&int(sp.coeff));
    let mut split: Vec<Letter> = vec![
        (sp.gamma, a.clone()),
        (sp.delta, b.clone()),
        (sp.gamma, a.neg()),
        (sp.delta, b.neg()),
    ];
    let mut rest = Vec::new();
    push_commutator(rs, sp.gamma, sp.delta, &a, &b, &mut rest);
    for (r, t) in rest {
        if r != *beta {
            split.push((r, t.neg()));
        }
    }
    for letter in &split {
        if letter.0 == *beta {
            return Err(Error::DescentBudgetExceeded("splitting produced an opposite root".into()));
        }
        conjugate_letter(rs, (gamma, c), letter, s, out)?;
    }
    Ok(())
}

/// Appends the letters of `[x_α(s), x_β(t)]` to `out`.
fn push_commutator(rs: &RootSystem, alpha: RootId, beta: RootId, s: &MultiPoly, t: &MultiPoly, out: &mut Vec<Letter>) {
    let terms = rs.constants().terms(alpha, beta).expect("non-proportional pair");
    if terms.is_empty() {
        return;
    }
    let sp = [MultiPoly::one(s.ctx()), s.clone(), s.mul(s), s.mul(s).mul(s)];
    let tp = [MultiPoly::one(t.ctx()), t.clone(), t.mul(t), t.mul(t).mul(t)];
    for term in terms {
        let arg = sp[term.i as usize].mul(&tp[term.j as usize]).scale(&int(term.coeff));
        out.push((term.root, arg));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::PolyCtx;
    use crate::rootdata::{build_root_system, RootKind};
    use crate::words::{map_word, Hom};

    fn z2(n: usize) -> PolyCtx {
        PolyCtx::new(BaseRing::localized(2).unwrap(), n)
    }

    fn check(w: &ElemWord, z: usize, h: &ElemWord, k: u32) {
        let s = match w.ctx().base {
            BaseRing::IntegersLocalized(s) => s,
            _ => 1,
        };
        let dil = Substitution::dilation(w.ctx(), z, &int(BigInt::from(s).pow(k)));
        let lhs = map_word(h, &Hom::Localize(s)).unwrap().eval();
        assert_eq!(lhs, w.substitute(&dil).unwrap().eval());
        assert!(congruence_check(h, z).holds);
        assert!(h.is_integral());
    }

    #[test]
    fn single_letter_clears_with_one_dilation() {
        let rs = build_root_system(RootKind::A, 2).unwrap();
        let ctx = z2(2);
        let arg = MultiPoly::parse(ctx, "x1*x2/2").unwrap();
        let w = ElemWord::single(rs, 0, arg);
        let (h, k) = descend_word(&w, 1, &DescentBudget::default()).unwrap();
        assert_eq!(k, 1);
        assert_eq!(h.letters()[0].1.to_string(), "x1*x2");
        check(&w, 1, &h, k);
    }

    #[test]
    fn integral_input_is_returned() {
        let rs = build_root_system(RootKind::A, 2).unwrap();
        let ctx = z2(1);
        let w = ElemWord::single(rs, 2, MultiPoly::parse(ctx, "3*x1").unwrap());
        let (h, k) = descend_word(&w, 0, &DescentBudget::default()).unwrap();
        assert_eq!(k, 0);
        assert_eq!(h.len(), 1);
    }

    #[test]
    fn conjugate_by_fraction() {
        for (kind, rank) in [(RootKind::A, 2), (RootKind::C, 2)] {
            let rs = build_root_system(kind, rank).unwrap();
            let ctx = z2(1);
            let half = MultiPoly::parse(ctx, "1/2").unwrap();
            let zz = MultiPoly::parse(ctx, "x1/2").unwrap();
            for alpha in rs.roots() {
                for beta in rs.roots() {
                    let w = ElemWord::new(
                        rs.clone(),
                        ctx,
                        vec![(beta, half.clone()), (alpha, zz.clone()), (beta, half.neg())],
                    )
                    .unwrap();
                    let (h, k) = descend_word(&w, 0, &DescentBudget::default()).unwrap();
                    check(&w, 0, &h, k);
                }
            }
        }
    }

    #[test]
    fn zero_budget_fails_closed() {
        let rs = build_root_system(RootKind::A, 2).unwrap();
        let ctx = z2(1);
        let w = ElemWord::single(rs, 0, MultiPoly::parse(ctx, "x1/8").unwrap());
        let budget = DescentBudget { max_letters: 10, max_k: 1 };
        assert!(matches!(descend_word(&w, 0, &budget), Err(Error::DescentBudgetExceeded(_))));
    }

    #[test]
    fn rejects_non_congruence_words() {
        let rs = build_root_system(RootKind::A, 2).unwrap();
        let w = ElemWord::single(rs, 0, MultiPoly::one(z2(1)));
        assert!(matches!(descend_word(&w, 0, &DescentBudget::default()), Err(Error::PreconditionViolated(_))));
    }
}
