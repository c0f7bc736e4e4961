//! Division-based reduction to the identity over Euclidean base rings: `Z`
//! (constant matrices) and `k[x]` for a field `k`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactring::{BaseRing, MultiPoly, RingElem};
use crate::matrix::Matrix;
use crate::rootdata::{build_frame, membership_check, RootId, RootKind, RootSystem};
use crate::words::ElemWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Domain {
    Integers,
    /// Univariate polynomials over a field, in variable `x_var`.
    Univariate(usize),
}

fn domain_of(m: &Matrix) -> Result<Domain> {
    let base = m.ctx().base;
    if base == BaseRing::Integers {
        if m.is_constant() {
            return Ok(Domain::Integers);
        }
        return Err(Error::PreconditionViolated("integer reduction needs constant entries".into()));
    }
    if !base.is_field() {
        return Err(Error::InvalidBase(format!("no Euclidean reduction over {base}")));
    }
    let mut var = None;
    for p in m.entries() {
        for (mono, _) in p.terms() {
            for (i, &e) in mono.exponents().iter().enumerate() {
                if e > 0 {
                    match var {
                        None => var = Some(i),
                        Some(v) if v == i => {}
                        Some(_) => {
                            return Err(Error::PreconditionViolated("entries are not univariate".into()));
                        }
                    }
                }
            }
        }
    }
    Ok(Domain::Univariate(var.unwrap_or(0)))
}

fn int_value(p: &MultiPoly) -> BigInt {
    p.constant_value().map(|c| c.to_integer()).unwrap_or_default()
}

/// Division data for column reduction over a ring of entries `T`.
pub(crate) trait Division<T> {
    /// Pivot preference: smaller is better.
    fn norm(&self, p: &T) -> (u32, BigInt);
    /// `q` making `a - q b` smaller than `b`, or zero when `b` is a unit.
    fn quotient(&self, a: &T, b: &T) -> T;
    fn unit_inverse(&self, p: &T) -> Option<T>;
}

impl Division<MultiPoly> for Domain {
    fn norm(&self, p: &MultiPoly) -> (u32, BigInt) {
        match self {
            Domain::Integers => (0, int_value(p).abs()),
            Domain::Univariate(v) => (p.degree_in(*v).unwrap_or(0), BigInt::zero()),
        }
    }

    fn quotient(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        match self {
            Domain::Integers => {
                let (x, y) = (int_value(a), int_value(b));
                // nearest integer quotient keeps |a - q b| <= |b| / 2
                let two = BigInt::from(2);
                let q = (&x * &two + &y).div_floor(&(&y * &two));
                MultiPoly::from_int(a.ctx(), q)
            }
            Domain::Univariate(_) => a.lead_quotient(b, false),
        }
    }

    fn unit_inverse(&self, p: &MultiPoly) -> Option<MultiPoly> {
        let c = p.constant_value()?;
        let inv = p.ctx().base.inverse(&c)?;
        Some(MultiPoly::constant(p.ctx(), inv))
    }
}

/// Row operations on a working matrix, recorded as root unipotents.
pub(crate) struct Reducer<T: RingElem, D: Division<T>> {
    rs: Arc<RootSystem>,
    dom: D,
    m: Matrix<T>,
    ops: Vec<(RootId, T)>,
    max_steps: usize,
}

impl<T: RingElem, D: Division<T>> Reducer<T, D> {
    pub(crate) fn new(rs: Arc<RootSystem>, dom: D, m: Matrix<T>, max_steps: usize) -> Self {
        Reducer { rs, dom, m, ops: Vec::new(), max_steps }
    }

    fn apply(&mut self, root: RootId, t: T) {
        if t.is_zero() {
            return;
        }
        self.rs.apply_left(&mut self.m, root, &t);
        self.ops.push((root, t));
    }

    fn root(&self, v: Vec<i64>) -> RootId {
        self.rs.root_id(&v).expect("root of the frame")
    }

    /// `e_i - e_j` in the ambient basis of the frame.
    fn diff(&self, i: usize, j: usize) -> RootId {
        let mut v = vec![0; self.rs.root_vector(0).len()];
        v[i] += 1;
        v[j] -= 1;
        self.root(v)
    }

    fn sum(&self, i: usize, j: usize, sign: i64) -> RootId {
        let mut v = vec![0; self.rs.root_vector(0).len()];
        v[i] += sign;
        v[j] += sign;
        self.root(v)
    }

    fn one(&self) -> T {
        T::one(self.m.ctx())
    }

    fn word(self) -> ElemWord<T> {
        let ctx = self.m.ctx();
        let letters = self.ops.into_iter().map(|(r, t)| (r, t.neg())).collect();
        ElemWord::new(self.rs, ctx, letters).expect("well-formed ops")
    }

    /// Euclid among the entries of column `col` in `rows`; `op(r, p, t)`
    /// must add `t` times row `p` to row `r` (and may touch rows that are
    /// zero in this column). Returns the row left holding the gcd.
    fn euclid(&mut self, col: usize, rows: &[usize], op: &dyn Fn(&mut Self, usize, usize, T)) -> Result<Option<usize>> {
        loop {
            if self.ops.len() > self.max_steps {
                return Err(Error::DescentBudgetExceeded(format!("column reduction passed {} steps", self.max_steps)));
            }
            let nonzero: Vec<usize> = rows.iter().copied().filter(|&r| !self.m[(r, col)].is_zero()).collect();
            let Some(&p) = nonzero.iter().min_by_key(|&&r| self.dom.norm(&self.m[(r, col)])) else {
                return Ok(None);
            };
            if nonzero.len() == 1 {
                return Ok(Some(p));
            }
            for &r in &nonzero {
                if r == p {
                    continue;
                }
                let q = self.dom.quotient(&self.m[(r, col)], &self.m[(p, col)]);
                op(self, r, p, q.neg());
            }
        }
    }

    fn unit_at(&self, i: usize, j: usize) -> Result<(T, T)> {
        let u = self.m[(i, j)].clone();
        let inv = self.dom.unit_inverse(&u).ok_or_else(|| Error::NotInGroup(format!("column gcd {u} is not a unit")))?;
        Ok((u, inv))
    }

    fn reduce_sl(&mut self) -> Result<()> {
        let n = self.m.size();
        for j in 0..n {
            let rows: Vec<usize> = (j..n).collect();
            let p = self
                .euclid(j, &rows, &|red, r, p, t| {
                    let root = red.diff(r, p);
                    red.apply(root, t)
                })?
                .ok_or_else(|| Error::NotInGroup("singular column".into()))?;
            let (u, inv) = self.unit_at(p, j)?;
            if !u.is_one() {
                let i = if p + 1 < n { p + 1 } else if p > j { j } else { return Err(Error::NotInGroup("determinant is not 1".into())) };
                // (u, 0) -> (u, 1) -> (1, 1) -> (1, 0)
                self.apply(self.diff(i, p), inv);
                self.apply(self.diff(p, i), self.one().sub(&u));
                self.apply(self.diff(i, p), self.one().neg());
            }
            if p != j {
                self.apply(self.diff(j, p), self.one());
                self.apply(self.diff(p, j), self.one().neg());
            }
            for r in 0..n {
                if r != j {
                    let t = self.m[(r, j)].neg();
                    self.apply(self.diff(r, j), t);
                }
            }
        }
        Ok(())
    }

    fn reduce_sp(&mut self) -> Result<()> {
        let n = self.rs.rank();
        let dim = 2 * n;
        let star = |i: usize| dim - 1 - i;
        let one = self.one();
        for k in 0..n {
            // Euclid inside each hyperbolic pair with long roots.
            for i in k..n {
                self.euclid(k, &[i, star(i)], &|red, r, p, t| {
                    let root = if r < n { red.sum(r, r, 1) } else { red.sum(p, p, -1) };
                    red.apply(root, t)
                })?;
                if self.m[(i, k)].is_zero() && !self.m[(star(i), k)].is_zero() {
                    self.apply(self.sum(i, i, 1), one.clone());
                    self.apply(self.sum(i, i, -1), one.neg());
                }
            }
            let rows: Vec<usize> = (k..n).collect();
            let p = self
                .euclid(k, &rows, &|red, r, p, t| {
                    let root = red.diff(r, p);
                    red.apply(root, t)
                })?
                .ok_or_else(|| Error::NotInGroup("singular column".into()))?;
            if p != k {
                self.apply(self.diff(k, p), one.clone());
                self.apply(self.diff(p, k), one.neg());
            }
            let (u, inv) = self.unit_at(k, k)?;
            if !u.is_one() {
                self.apply(self.sum(k, k, -1), inv);
                self.apply(self.sum(k, k, 1), one.sub(&u));
                self.apply(self.sum(k, k, -1), one.neg());
            }
            let c = star(k);
            for i in (k + 1)..n {
                let t = self.m[(star(i), c)].clone();
                self.apply(self.diff(k, i), t);
            }
            for i in (k + 1)..n {
                let t = self.m[(i, c)].neg();
                self.apply(self.sum(i, k, 1), t);
            }
            let t = self.m[(k, c)].neg();
            self.apply(self.sum(k, k, 1), t);
        }
        Ok(())
    }

    /// Reduces to the identity and returns the verified word for the input.
    pub(crate) fn run(mut self) -> Result<ElemWord<T>> {
        if !membership_check(&self.m, self.rs.model())? {
            return Err(Error::NotInGroup(format!("matrix fails the {} invariant", self.rs.kind())));
        }
        let g = self.m.clone();
        match self.rs.kind() {
            RootKind::A => self.reduce_sl()?,
            RootKind::C => self.reduce_sp()?,
        }
        if !self.m.is_identity() {
            return Err(Error::VerificationFailed("reduction did not reach the identity".into()));
        }
        let w = self.word();
        if w.eval() != g {
            return Err(Error::VerificationFailed("euclidean word".into()));
        }
        Ok(w)
    }
}

/// Reduces `g` to the identity and returns a word for it, in the given frame.
pub(crate) fn euclid_factor(rs: &Arc<RootSystem>, g: &Matrix) -> Result<ElemWord> {
    if !membership_check(g, rs.model())? {
        return Err(Error::NotInGroup(format!("matrix fails the {} invariant", rs.kind())));
    }
    let dom = domain_of(g)?;
    Reducer::new(rs.clone(), dom, g.clone(), usize::MAX).run()
}

pub(crate) fn frame_for<T: RingElem>(g: &Matrix<T>, kind: RootKind) -> Result<Arc<RootSystem>> {
    let n = g.size();
    match kind {
        RootKind::A if n >= 2 => build_frame(kind, n - 1),
        RootKind::C if n >= 2 && n.is_multiple_of(2) => build_frame(kind, n / 2),
        _ => Err(Error::SizeMismatch { expected: 2, got: n }),
    }
}

/// Word for a matrix in `SL_N(Z)`, `N >= 2`.
pub fn factor_integer_sl(g: &Matrix) -> Result<ElemWord> {
    if g.ctx().base != BaseRing::Integers || !g.is_constant() {
        return Err(Error::PreconditionViolated("expected a constant integer matrix".into()));
    }
    euclid_factor(&frame_for(g, RootKind::A)?, g)
}

/// Word for a matrix in `Sp_2N(Z)`.
pub fn factor_integer_sp(g: &Matrix) -> Result<ElemWord> {
    if g.ctx().base != BaseRing::Integers || !g.is_constant() {
        return Err(Error::PreconditionViolated("expected a constant integer matrix".into()));
    }
    euclid_factor(&frame_for(g, RootKind::C)?, g)
}

/// Word for a matrix over `k[x]`, `k` a field (`Q` or `GF(p)`).
pub fn factor_univar_euclidean(g: &Matrix, kind: RootKind) -> Result<ElemWord> {
    if !g.ctx().base.is_field() {
        return Err(Error::InvalidBase(format!("{} is not a field", g.ctx().base)));
    }
    euclid_factor(&frame_for(g, kind)?, g)
}
