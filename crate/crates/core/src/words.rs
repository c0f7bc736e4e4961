//! Elementary words: formal products of root unipotents `x_α(t)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactring::{BaseRing, MultiPoly, PolyCtx, RingElem, Substitution};
use crate::matrix::Matrix;
use crate::rootdata::{RootId, RootSystem};

#[derive(Clone, Debug)]
pub struct ElemWord<T: RingElem = MultiPoly> {
    rs: Arc<RootSystem>,
    ctx: PolyCtx,
    letters: Vec<(RootId, T)>,
}

impl<T: RingElem> PartialEq for ElemWord<T> {
    fn eq(&self, other: &Self) -> bool {
        self.rs.kind() == other.rs.kind()
            && self.rs.rank() == other.rs.rank()
            && self.ctx == other.ctx
            && self.letters == other.letters
    }
}

impl<T: RingElem> ElemWord<T> {
    pub fn empty(rs: Arc<RootSystem>, ctx: PolyCtx) -> Self {
        ElemWord { rs, ctx, letters: Vec::new() }
    }

    pub fn new(rs: Arc<RootSystem>, ctx: PolyCtx, letters: Vec<(RootId, T)>) -> Result<Self> {
        for (r, t) in &letters {
            if *r >= rs.num_roots() {
                return Err(Error::UnknownRoot(vec![*r as i64]));
            }
            if t.ctx() != ctx {
                return Err(Error::BaseMismatch);
            }
        }
        Ok(ElemWord { rs, ctx, letters })
    }

    pub fn single(rs: Arc<RootSystem>, root: RootId, arg: T) -> Self {
        let ctx = arg.ctx();
        ElemWord { rs, ctx, letters: vec![(root, arg)] }
    }

    pub fn rs(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn ctx(&self) -> PolyCtx {
        self.ctx
    }

    pub fn letters(&self) -> &[(RootId, T)] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<(RootId, T)> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, root: RootId, arg: T) {
        debug_assert_eq!(arg.ctx(), self.ctx);
        self.letters.push((root, arg));
    }

    pub fn append(&mut self, other: &ElemWord<T>) {
        self.letters.extend(other.letters.iter().cloned());
    }

    pub fn concat(mut self, other: &ElemWord<T>) -> Self {
        self.append(other);
        self
    }

    /// Exact product of the letters in order.
    pub fn eval(&self) -> Matrix<T> {
        let mut m = Matrix::identity(self.rs.dim(), self.ctx);
        for (r, t) in &self.letters {
            self.rs.apply_right(&mut m, *r, t);
        }
        m
    }

    /// `m * eval(self)` without forming `eval(self)`.
    pub fn apply_to(&self, m: &mut Matrix<T>) {
        for (r, t) in &self.letters {
            self.rs.apply_right(m, *r, t);
        }
    }

    pub fn inverse(&self) -> Self {
        let letters = self.letters.iter().rev().map(|(r, t)| (*r, t.neg())).collect();
        ElemWord { rs: self.rs.clone(), ctx: self.ctx, letters }
    }

    /// Merges adjacent letters on the same root and drops zero arguments.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<(RootId, T)> = Vec::with_capacity(self.letters.len());
        for (r, t) in &self.letters {
            if t.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some((r0, t0)) if r0 == r => {
                    let sum = t0.add(t);
                    if sum.is_zero() {
                        out.pop();
                    } else {
                        *t0 = sum;
                    }
                }
                _ => out.push((*r, t.clone())),
            }
        }
        ElemWord { rs: self.rs.clone(), ctx: self.ctx, letters: out }
    }

    pub fn map_args<U: RingElem>(&self, ctx: PolyCtx, f: impl Fn(&T) -> Result<U>) -> Result<ElemWord<U>> {
        let letters = self.letters.iter().map(|(r, t)| Ok((*r, f(t)?))).collect::<Result<Vec<_>>>()?;
        Ok(ElemWord { rs: self.rs.clone(), ctx, letters })
    }
}

pub fn eval_word<T: RingElem>(w: &ElemWord<T>) -> Matrix<T> {
    w.eval()
}

pub fn invert_word<T: RingElem>(w: &ElemWord<T>) -> ElemWord<T> {
    w.inverse()
}

pub fn free_reduce<T: RingElem>(w: &ElemWord<T>) -> ElemWord<T> {
    w.free_reduce()
}

/// Ring homomorphisms along which words are transported.
#[derive(Clone, Debug, PartialEq)]
pub enum Hom {
    /// `Z -> Z[1/s]`.
    Localize(u64),
    /// Variable substitution; the target context comes from the substitution.
    Substitute(Substitution),
    /// Coefficientwise change of base ring (e.g. `Z -> Z/m`, or `Z[1/s] -> Z`
    /// for words whose arguments are integral).
    Rebase(BaseRing),
}

pub fn map_word(w: &ElemWord, hom: &Hom) -> Result<ElemWord> {
    match hom {
        Hom::Localize(s) => {
            if w.ctx.base != BaseRing::Integers {
                return Err(Error::BaseMismatch);
            }
            let base = BaseRing::localized(*s as i64)?;
            w.map_args(PolyCtx::new(base, w.ctx.nvars), |p| p.change_base(base))
        }
        Hom::Substitute(sub) => w.map_args(sub.target, |p| p.substitute(sub)),
        Hom::Rebase(base) => w.map_args(PolyCtx::new(*base, w.ctx.nvars), |p| p.change_base(*base)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CongruenceTag {
    pub variable: usize,
    pub holds: bool,
}

/// Decides whether `eval(w)` is the identity at `z = 0`.
pub fn congruence_check(w: &ElemWord, z: usize) -> CongruenceTag {
    let at_zero = w.map_args(w.ctx, |p| Ok(p.at_zero(z))).expect("at_zero is total");
    CongruenceTag { variable: z, holds: at_zero.eval().is_identity() }
}

impl ElemWord {
    pub fn max_degree(&self) -> u32 {
        self.letters.iter().filter_map(|(_, t)| t.total_degree()).max().unwrap_or(0)
    }

    pub fn is_integral(&self) -> bool {
        self.letters.iter().all(|(_, t)| t.is_integral())
    }

    pub fn substitute(&self, sub: &Substitution) -> Result<Self> {
        map_word(self, &Hom::Substitute(sub.clone()))
    }

    pub fn change_base(&self, base: BaseRing) -> Result<Self> {
        map_word(self, &Hom::Rebase(base))
    }

    pub fn extend_vars(&self, nvars: usize) -> Self {
        let ctx = PolyCtx::new(self.ctx.base, nvars);
        self.map_args(ctx, |p| Ok(p.extend_vars(nvars))).expect("widening is total")
    }
}

impl<T: RingElem> fmt::Display for ElemWord<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(r, t)| format!("x{}({})", self.rs.format_root(*r), t))
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}
