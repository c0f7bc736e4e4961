//! Factorization over the localization of `V[x]` at the monic polynomials,
//! and descent of such words back to `V[x]`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactring::{
    is_monic, mod_inverse, strip_common, BaseRing, Coeff, Monomial, MonicLocElem, MultiPoly, PolyCtx, RingElem, MONIC_VAR,
};
use crate::matrix::Matrix;
use crate::rootdata::{membership_check, RootKind, RootSystem};
use crate::words::ElemWord;

use super::euclid::{euclid_factor, frame_for, Division, Reducer};
use super::heuristic::heuristic_reduce;
use super::{pipeline, Budget};

/// Step limit for the column reduction of [`factor_monic_localized`].
const MONIC_STEPS: usize = 20_000;

/// Leading term at infinity of `N / D`: coefficient and `deg N - deg D`.
fn lead_at_infinity(p: &MonicLocElem) -> Option<(Coeff, i64)> {
    let n = p.numerator();
    let d = n.degree_in(MONIC_VAR)?;
    let c = n.coeff_in(MONIC_VAR, d).constant_value()?;
    let dd = p.denominator().degree_in(MONIC_VAR).unwrap_or(0);
    Some((c, d as i64 - dd as i64))
}

/// `c x^e` as an element of the monic localization; `x^{-1}` is allowed.
fn scaled_power(ctx: PolyCtx, c: Coeff, e: i64) -> MonicLocElem {
    let mut m = Monomial::one(ctx.nvars);
    m.0[MONIC_VAR] = e.unsigned_abs() as u16;
    let xe = MultiPoly::monomial(ctx, m, ctx.base.from_int(1));
    let c = MultiPoly::constant(ctx, c);
    if e >= 0 {
        MonicLocElem::from_poly(c.mul(&xe))
    } else {
        MonicLocElem::new(c, xe, 1).expect("powers of x are monic")
    }
}

/// Entries of `V(x)` for `V` one of `Z`, `Z[1/s]`, `Q`, `GF(p)`. Elements
/// whose leading coefficient is a unit of `V` are units; otherwise Euclid
/// runs on the leading coefficients.
struct MonicDivision {
    base: BaseRing,
}

impl MonicDivision {
    fn s(&self) -> BigInt {
        match self.base {
            BaseRing::IntegersLocalized(s) => BigInt::from(s),
            _ => BigInt::one(),
        }
    }
}

impl Division<MonicLocElem> for MonicDivision {
    fn norm(&self, p: &MonicLocElem) -> (u32, BigInt) {
        if p.is_unit() {
            return (0, BigInt::zero());
        }
        match lead_at_infinity(p) {
            Some((c, _)) => (1, strip_common(c.numer(), &self.s())),
            None => (2, BigInt::zero()),
        }
    }

    fn quotient(&self, a: &MonicLocElem, b: &MonicLocElem) -> MonicLocElem {
        let ctx = a.numerator().ctx();
        if let Some(inv) = b.unit_inverse() {
            return a.mul(&inv);
        }
        let (Some((la, ea)), Some((lb, eb))) = (lead_at_infinity(a), lead_at_infinity(b)) else {
            return MonicLocElem::from_poly(MultiPoly::zero(ctx));
        };
        // lb = eps m with m free of the primes of s; then la - c lb = eps rho
        // for the centred residue rho of la / eps modulo m
        let m = strip_common(lb.numer(), &self.s());
        let eps = &lb / Coeff::from(m.clone());
        let r = &la / &eps;
        let Some(dinv) = mod_inverse(r.denom(), &m) else {
            return MonicLocElem::from_poly(MultiPoly::zero(ctx));
        };
        let mut rho = (r.numer() * dinv).mod_floor(&m);
        if &rho * 2 > m {
            rho -= &m;
        }
        let c = (r - Coeff::from(rho)) / Coeff::from(m);
        scaled_power(ctx, c, ea - eb)
    }

    fn unit_inverse(&self, p: &MonicLocElem) -> Option<MonicLocElem> {
        p.unit_inverse()
    }
}

/// Word for `g ∈ G(V(x))`, `V(x)` the localization of `V[x]` at the monic
/// polynomials in `x = x1`. Entries must be univariate.
pub fn factor_monic_localized(g: &Matrix<MonicLocElem>, kind: RootKind) -> Result<ElemWord<MonicLocElem>> {
    let ctx = g.ctx();
    match ctx.base {
        BaseRing::Integers | BaseRing::IntegersLocalized(_) | BaseRing::Rationals | BaseRing::PrimeField(_) => {}
        other => return Err(Error::InvalidBase(format!("no monic reduction over {other}"))),
    }
    if ctx.nvars != 1 {
        return Err(Error::PreconditionViolated("monic localization needs univariate entries".into()));
    }
    let rs = frame_for(g, kind)?;
    Reducer::new(rs, MonicDivision { base: ctx.base }, g.clone(), MONIC_STEPS).run()
}

fn as_monic_matrix(g: &Matrix) -> Result<Matrix<MonicLocElem>> {
    g.map(g.ctx(), |p| Ok(MonicLocElem::from_poly(p.clone())))
}

/// Word over `A[x]` for `g`, given a word `w_f` for its image over `A[x]_f`.
/// Denominator-free words come back unchanged; otherwise the integral word
/// is re-derived under `budget` and always verified.
pub fn descend_monic(g: &Matrix, w_f: &ElemWord<MonicLocElem>, f: &MultiPoly, budget: &Budget) -> Result<ElemWord> {
    if !is_monic(f, MONIC_VAR) {
        return Err(Error::NotMonic);
    }
    if w_f.ctx() != g.ctx() {
        return Err(Error::BaseMismatch);
    }
    if w_f.eval() != as_monic_matrix(g)? {
        return Err(Error::PreconditionViolated("word does not evaluate to the image of g".into()));
    }
    let rs: Arc<RootSystem> = w_f.rs().clone();
    let direct: Option<Vec<_>> = w_f.letters().iter().map(|(r, t)| t.as_poly().map(|p| (*r, p))).collect();
    if let Some(letters) = direct {
        return ElemWord::new(rs, g.ctx(), letters);
    }
    if budget.max_steps == 0 || budget.max_letters == 0 {
        return Err(Error::DescentBudgetExceeded("zero budget".into()));
    }
    if !membership_check(g, rs.model())? {
        return Err(Error::NotInGroup(format!("matrix fails the {} invariant", rs.kind())));
    }
    let base = g.ctx().base;
    let w = if base.is_field() {
        euclid_factor(&rs, g)?
    } else {
        let (word, residual) = heuristic_reduce(&rs, g, budget);
        if residual.is_identity() {
            word
        } else if base == BaseRing::Integers {
            pipeline::local_global(&rs, g, budget)
                .map_err(|e| Error::DescentBudgetExceeded(format!("integral word not recovered: {e}")))?
        } else {
            return Err(Error::DescentBudgetExceeded(format!("greedy reduction stalled at degree {}", residual.max_degree())));
        }
    };
    if w.len() > budget.max_letters || w.eval() != *g {
        return Err(Error::DescentBudgetExceeded("descended word outside budget".into()));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::rootdata::build_root_system;
    use crate::sample::{random_word, PolySpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn poly(ctx: PolyCtx, s: &str) -> MultiPoly {
        MultiPoly::parse(ctx, s).unwrap()
    }

    #[test]
    fn identity_and_single_letter() {
        let ctx = PolyCtx::new(BaseRing::localized(3).unwrap(), 1);
        let id = Matrix::<MonicLocElem>::identity(3, ctx);
        assert!(factor_monic_localized(&id, RootKind::A).unwrap().is_empty());
        let rs = build_root_system(RootKind::A, 2).unwrap();
        let t = MonicLocElem::new(poly(ctx, "1"), poly(ctx, "x1^2 + 3*x1 + 1"), 1).unwrap();
        let g = rs.unipotent(0, &t);
        let w = factor_monic_localized(&g, RootKind::A).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w.letters()[0], (0, t));
    }

    #[test]
    fn random_words_refactor() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (base, kind) in [
            (BaseRing::localized(3).unwrap(), RootKind::A),
            (BaseRing::Integers, RootKind::A),
            (BaseRing::localized(2).unwrap(), RootKind::C),
        ] {
            let ctx = PolyCtx::new(base, 1);
            let rs = build_root_system(kind, 2).unwrap();
            let monics = [poly(ctx, "x1 + 1"), poly(ctx, "x1^2 + 2"), poly(ctx, "x1")];
            for _ in 0..10 {
                let mut letters = Vec::new();
                for _ in 0..4 {
                    let num = random_word(&mut rng, &rs, ctx, 1, &PolySpec::default()).into_letters()[0].1.clone();
                    let f = monics[rng.gen_range(0..monics.len())].clone();
                    let t = MonicLocElem::new(num, f, rng.gen_range(0..=1)).unwrap();
                    letters.push((rng.gen_range(0..rs.num_roots()), t));
                }
                let g = ElemWord::new(rs.clone(), ctx, letters).unwrap().eval();
                let w = factor_monic_localized(&g, kind).unwrap();
                assert_eq!(w.eval(), g);
            }
        }
    }

    #[test]
    fn non_units_rejected() {
        let ctx = PolyCtx::new(BaseRing::Integers, 1);
        let two = MonicLocElem::from_poly(poly(ctx, "2"));
        let mut g = Matrix::<MonicLocElem>::identity(3, ctx);
        g[(0, 0)] = two.clone();
        assert!(matches!(factor_monic_localized(&g, RootKind::A), Err(Error::NotInGroup(_))));
    }

    #[test]
    fn descend_examples() {
        let ctx = PolyCtx::new(BaseRing::Integers, 1);
        let rs = build_root_system(RootKind::A, 2).unwrap();
        let f = poly(ctx, "x1^2 + 1");
        let known = ElemWord::new(rs.clone(), ctx, vec![(0, poly(ctx, "x1 + 2")), (4, poly(ctx, "3*x1^2")), (2, poly(ctx, "-1"))]).unwrap();
        let g = known.eval();
        // denominator-free: returned as-is
        let plain = known.map_args(ctx, |p| Ok(MonicLocElem::from_poly(p.clone()))).unwrap();
        assert_eq!(descend_monic(&g, &plain, &f, &Budget::default()).unwrap(), known);
        // with f in the denominators: x_a(1/f) x_a(-1/f) around the word
        let inv_f = MonicLocElem::new(poly(ctx, "1"), f.clone(), 1).unwrap();
        let fixed_g = known.eval();
        let w_f = ElemWord::new(
            rs.clone(),
            ctx,
            [vec![(1, inv_f.clone()), (1, inv_f.neg())], plain.letters().to_vec()].concat(),
        )
        .unwrap();
        let w = descend_monic(&fixed_g, &w_f, &f, &Budget::default()).unwrap();
        assert_eq!(w.eval(), fixed_g);
        let zero = Budget { max_steps: 0, ..Budget::default() };
        assert!(matches!(descend_monic(&fixed_g, &w_f, &f, &zero), Err(Error::DescentBudgetExceeded(_))));
        assert_eq!(descend_monic(&g, &plain, &poly(ctx, "2*x1"), &Budget::default()).unwrap_err(), Error::NotMonic);
    }
}
