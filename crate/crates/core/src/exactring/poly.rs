use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::base::{int, BaseRing, Coeff};
use crate::error::{Error, Result};

/// Exponent vector of a monomial, ordered graded-lexicographically with
/// `x1 > x2 > ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub SmallVec<[u16; 6]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Base ring together with the number of variables: the ring `R[x1..xn]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolyCtx {
    pub base: BaseRing,
    pub nvars: usize,
}

impl PolyCtx {
    pub fn new(base: BaseRing, nvars: usize) -> Self {
        PolyCtx { base, nvars }
    }
}

/// Exact multivariate polynomial. Terms are kept sorted in descending
/// graded-lex order with no zero coefficients, so structural equality is
/// ring equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    ctx: PolyCtx,
    terms: Vec<(Monomial, Coeff)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOpKind {
    Add,
    Mul,
    Neg,
}

/// Checked ring operation: fails with [`Error::BaseMismatch`] instead of
/// panicking when the operands live in different rings.
pub fn poly_op(kind: PolyOpKind, p: &MultiPoly, q: Option<&MultiPoly>) -> Result<MultiPoly> {
    match (kind, q) {
        (PolyOpKind::Neg, _) => Ok(p.neg()),
        (_, None) => Err(Error::PreconditionViolated("binary operation needs two operands".into())),
        (_, Some(q)) if q.ctx != p.ctx => Err(Error::BaseMismatch),
        (PolyOpKind::Add, Some(q)) => Ok(p.add(q)),
        (PolyOpKind::Mul, Some(q)) => Ok(p.mul(q)),
    }
}

impl MultiPoly {
    pub fn zero(ctx: PolyCtx) -> Self {
        MultiPoly { ctx, terms: Vec::new() }
    }

    pub fn one(ctx: PolyCtx) -> Self {
        Self::constant(ctx, int(1))
    }

    pub fn from_int(ctx: PolyCtx, v: impl Into<BigInt>) -> Self {
        let c = ctx.base.from_int(v);
        Self::constant(ctx, c)
    }

    /// Constant polynomial; `c` must already be in the base ring's normal form.
    pub fn constant(ctx: PolyCtx, c: Coeff) -> Self {
        Self::monomial(ctx, Monomial::one(ctx.nvars), c)
    }

    pub fn monomial(ctx: PolyCtx, m: Monomial, c: Coeff) -> Self {
        let c = ctx.base.normalize(c).expect("coefficient outside base ring");
        if c.is_zero() {
            Self::zero(ctx)
        } else {
            MultiPoly { ctx, terms: vec![(m, c)] }
        }
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(ctx: PolyCtx, i: usize) -> Self {
        assert!(i < ctx.nvars, "variable index out of range");
        Self::monomial(ctx, Monomial::var(ctx.nvars, i), int(1))
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// normalizing coefficients.
    pub fn from_terms(ctx: PolyCtx, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Result<Self> {
        let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (m, c) in terms {
            if m.0.len() != ctx.nvars {
                return Err(Error::BaseMismatch);
            }
            let c = ctx.base.normalize(c)?;
            let e = acc.entry(m).or_insert_with(Coeff::zero);
            *e = ctx.base.add(e, &c);
        }
        Ok(Self::from_sorted_map(ctx, acc))
    }

    fn from_sorted_map(ctx: PolyCtx, acc: BTreeMap<Monomial, Coeff>) -> Self {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        MultiPoly { ctx, terms }
    }

    pub fn ctx(&self) -> PolyCtx {
        self.ctx
    }

    pub fn base(&self) -> BaseRing {
        self.ctx.base
    }

    pub fn nvars(&self) -> usize {
        self.ctx.nvars
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(Coeff::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms
            .iter()
            .find(|(mm, _)| mm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Coeff::zero)
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.0[var] as u32).max()
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| BaseRing::bits(c)).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx, "polynomial base mismatch");
        let base = self.ctx.base;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = base.add(ca, cb);
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        MultiPoly { ctx: self.ctx, terms: out }
    }

    pub fn neg(&self) -> Self {
        let base = self.ctx.base;
        MultiPoly {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), base.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx, "polynomial base mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ctx);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let base = self.ctx.base;
        let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = base.mul(ca, cb);
                if c.is_zero() {
                    continue;
                }
                let e = acc.entry(ma.mul(mb)).or_insert_with(Coeff::zero);
                *e = base.add(e, &c);
            }
        }
        Self::from_sorted_map(self.ctx, acc)
    }

    /// Multiplication by a single term; monomial multiplication preserves
    /// the order so no re-sorting is needed.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Self {
        let base = self.ctx.base;
        let terms = self
            .terms
            .iter()
            .filter_map(|(mm, cc)| {
                let p = base.mul(cc, c);
                (!p.is_zero()).then(|| (mm.mul(m), p))
            })
            .collect();
        MultiPoly { ctx: self.ctx, terms }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        self.mul_term(&Monomial::one(self.ctx.nvars), c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ctx);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides every coefficient by the scalar `c`, if exact in the base ring.
    pub fn div_scalar(&self, c: &Coeff) -> Option<Self> {
        let base = self.ctx.base;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, cc) in &self.terms {
            terms.push((m.clone(), base.divide(cc, c)?));
        }
        terms.retain(|(_, c)| !c.is_zero());
        Some(MultiPoly { ctx: self.ctx, terms })
    }

    /// Reinterprets the coefficients in another base ring. Fails when some
    /// coefficient is not an element of `target`.
    pub fn change_base(&self, target: BaseRing) -> Result<Self> {
        let ctx = PolyCtx::new(target, self.ctx.nvars);
        Self::from_terms(ctx, self.terms.iter().cloned())
    }

    /// Embeds into a ring with more variables (new variables appended).
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.ctx.nvars);
        let ctx = PolyCtx::new(self.ctx.base, nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(nvars, 0);
                (Monomial(e), c.clone())
            })
            .collect();
        // appending zero exponents preserves the graded-lex order
        MultiPoly { ctx, terms }
    }

    /// Drops trailing variables that do not occur.
    pub fn restrict_vars(&self, nvars: usize) -> Result<Self> {
        if self.terms.iter().any(|(m, _)| m.0[nvars..].iter().any(|&e| e != 0)) {
            return Err(Error::BaseMismatch);
        }
        let ctx = PolyCtx::new(self.ctx.base, nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial(m.0[..nvars].iter().copied().collect()), c.clone()))
            .collect();
        Ok(MultiPoly { ctx, terms })
    }

    /// Sets `x_var = 0`.
    pub fn at_zero(&self, var: usize) -> Self {
        MultiPoly {
            ctx: self.ctx,
            terms: self.terms.iter().filter(|(m, _)| m.0[var] == 0).cloned().collect(),
        }
    }

    /// Ring-homomorphism image under the given substitution.
    pub fn substitute(&self, sub: &Substitution) -> Result<Self> {
        if sub.images.len() != self.ctx.nvars {
            return Err(Error::BaseMismatch);
        }
        let target = sub.target;
        if target.base != self.ctx.base {
            return Err(Error::BaseMismatch);
        }
        let mut powers: Vec<Vec<MultiPoly>> = sub.images.iter().map(|p| vec![MultiPoly::one(target), p.clone()]).collect();
        let mut acc = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap().mul(&pw[1]);
                    pw.push(next);
                }
                t = t.mul(&pw[e as usize]);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Coefficient of `x_var^d` viewed as a polynomial in the other variables.
    pub fn coeff_in(&self, var: usize, d: u32) -> Self {
        MultiPoly {
            ctx: self.ctx,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[var] as u32 == d)
                .map(|(m, c)| {
                    let mut m = m.clone();
                    m.0[var] = 0;
                    (m, c.clone())
                })
                .collect::<Vec<_>>(),
        }
        .resorted()
    }

    fn resorted(mut self) -> Self {
        self.terms.sort_by(|a, b| b.0.cmp(&a.0));
        self
    }

    /// Multivariate division by leading terms: subtracts multiples of `d`
    /// while the leading term of the remainder is divisible by that of `d`
    /// (monomial and coefficient). With `single_step` only one step is taken.
    pub fn lead_quotient(&self, d: &Self, single_step: bool) -> Self {
        let zero = Self::zero(self.ctx);
        let Some((dm, dc)) = d.leading_term() else { return zero };
        let base = self.ctx.base;
        let mut q = zero;
        let mut r = self.clone();
        while let Some((rm, rc)) = r.leading_term() {
            let Some(m) = rm.div(dm) else { break };
            let Some(c) = base.divide(rc, dc) else { break };
            let t = MultiPoly { ctx: self.ctx, terms: vec![(m.clone(), c.clone())] };
            r = r.sub(&d.mul_term(&m, &c));
            q = q.add(&t);
            if single_step {
                break;
            }
        }
        q
    }

    /// Largest `v` with `self / s^v` having integer coefficients, over
    /// `Z[1/s]`. Negative when denominators are present; `None` for zero.
    pub fn s_valuation(&self, s: u64) -> Option<i64> {
        self.terms.iter().map(|(_, c)| coeff_s_valuation(c, s)).min()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }
}

/// `max{v : c / s^v is an integer}` for nonzero `c` in `Z[1/s]`, `s >= 2`.
pub fn coeff_s_valuation(c: &Coeff, s: u64) -> i64 {
    let s_big = BigInt::from(s);
    if c.is_zero() || s < 2 {
        return i64::MAX;
    }
    if !c.is_integer() {
        let mut v = 0i64;
        let mut x = c.clone();
        while !x.is_integer() {
            x *= int(s_big.clone());
            v -= 1;
        }
        return v;
    }
    let mut n = c.numer().abs();
    let mut v = 0;
    while (&n % &s_big).is_zero() {
        n /= &s_big;
        v += 1;
    }
    v
}

/// A ring homomorphism `R[x1..xn] -> R[y1..ym]` given by the images of the
/// variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Substitution {
    pub target: PolyCtx,
    pub images: Vec<MultiPoly>,
}

impl Substitution {
    pub fn identity(ctx: PolyCtx) -> Self {
        Substitution { target: ctx, images: (0..ctx.nvars).map(|i| MultiPoly::var(ctx, i)).collect() }
    }

    /// Identity except `x_var -> image`.
    pub fn single(ctx: PolyCtx, var: usize, image: MultiPoly) -> Self {
        let mut s = Self::identity(ctx);
        s.images[var] = image;
        s
    }

    /// The dilation `x_var -> factor * x_var`.
    pub fn dilation(ctx: PolyCtx, var: usize, factor: &Coeff) -> Self {
        let image = MultiPoly::var(ctx, var).scale(factor);
        Self::single(ctx, var, image)
    }

    /// Identity into a ring with `nvars` variables (the extra ones unused).
    pub fn widen(ctx: PolyCtx, nvars: usize) -> Self {
        let target = PolyCtx::new(ctx.base, nvars);
        Substitution { target, images: (0..ctx.nvars).map(|i| MultiPoly::var(target, i)).collect() }
    }

    pub fn with(mut self, var: usize, image: MultiPoly) -> Self {
        self.images[var] = image;
        self
    }
}

/// Sign helper used in printing.
pub(crate) fn is_negative(c: &Coeff) -> bool {
    c.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zx() -> PolyCtx {
        PolyCtx::new(BaseRing::Integers, 1)
    }

    #[test]
    fn grlex_order() {
        let a = Monomial(SmallVec::from_slice(&[2, 0]));
        let b = Monomial(SmallVec::from_slice(&[0, 3]));
        let c = Monomial(SmallVec::from_slice(&[1, 1]));
        assert!(b > a);
        assert!(a > c);
    }

    #[test]
    fn examples_from_arithmetic() {
        let ctx = zx();
        let x = MultiPoly::var(ctx, 0);
        let one = MultiPoly::one(ctx);
        let two = MultiPoly::from_int(ctx, 2);
        assert_eq!(x.add(&one).add(&x.sub(&one)), x.scale(&int(2)));
        let a = one.add(&two.mul(&x));
        let b = one.sub(&two.mul(&x));
        assert_eq!(a.mul(&b), one.sub(&x.pow(2).scale(&int(4))));

        let z4 = PolyCtx::new(BaseRing::IntegersMod(4), 1);
        let y = MultiPoly::var(z4, 0).scale(&int(2));
        assert!(y.mul(&y).is_zero());
    }

    #[test]
    fn checked_op_rejects_mismatch() {
        let p = MultiPoly::var(zx(), 0);
        let q = MultiPoly::var(PolyCtx::new(BaseRing::Rationals, 1), 0);
        assert_eq!(poly_op(PolyOpKind::Add, &p, Some(&q)), Err(Error::BaseMismatch));
        assert!(poly_op(PolyOpKind::Neg, &p, None).is_ok());
    }

    #[test]
    fn valuation() {
        assert_eq!(coeff_s_valuation(&int(12), 2), 2);
        assert_eq!(coeff_s_valuation(&Coeff::new(3.into(), 8.into()), 2), -3);
        assert_eq!(coeff_s_valuation(&Coeff::new(1.into(), 12.into()), 6), -2);
    }
}
