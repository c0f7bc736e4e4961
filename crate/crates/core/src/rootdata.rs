//! Root systems of types A_n and C_n (n >= 2) with their simply connected
//! matrix models SL_{n+1} and Sp_{2n}.
//!
//! Coordinates of the symplectic model are ordered `(1, ..., n, n*, ..., 1*)`;
//! zero-based, index `i` pairs with `2n - 1 - i`. The form is
//! `J = [[0, K], [-K, 0]]` with `K` the n x n anti-diagonal identity, so
//! `J[i][i*] = 1` and `J[i*][i] = -1` for `i < n`.
//!
//! Structure constants are not transcribed from tables: they are read off the
//! symbolic commutator of two generic unipotents in the matrix model and then
//! checked against the full commutator matrix.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactring::{int, BaseRing, Monomial, MultiPoly, PolyCtx, RingElem};
use crate::matrix::Matrix;
use crate::words::ElemWord;

pub type RootId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootKind {
    A,
    C,
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootKind::A => write!(f, "A"),
            RootKind::C => write!(f, "C"),
        }
    }
}

impl FromStr for RootKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(RootKind::A),
            "C" | "c" => Ok(RootKind::C),
            other => Err(Error::UnsupportedType(other.to_string())),
        }
    }
}

/// Matrix model of a group: `SL_{rank+1}` for type A, `Sp_{2 rank}` for C.
/// Unlike [`RootSystem`] this admits rank 1, so that `SL_2` inputs can be
/// described, checked, and then rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupModel {
    #[serde(rename = "type")]
    pub kind: RootKind,
    pub rank: usize,
}

impl GroupModel {
    pub fn new(kind: RootKind, rank: usize) -> Self {
        GroupModel { kind, rank }
    }

    pub fn size(&self) -> usize {
        match self.kind {
            RootKind::A => self.rank + 1,
            RootKind::C => 2 * self.rank,
        }
    }

    /// The symplectic form (type C only).
    pub fn form<T: RingElem>(&self, ctx: PolyCtx) -> Matrix<T> {
        let n = self.size();
        let mut j = Matrix::zeros(n, ctx);
        for i in 0..self.rank {
            j[(i, n - 1 - i)] = T::one(ctx);
            j[(n - 1 - i, i)] = T::one(ctx).neg();
        }
        j
    }
}

/// One term `x_{iα+jβ}(coeff * s^i * t^j)` of a Chevalley commutator formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CommTerm {
    pub i: u32,
    pub j: u32,
    pub root: RootId,
    pub coeff: i64,
}

/// Constants `N_{αβij}` for every ordered pair of non-proportional roots.
/// A pair with no terms commutes.
#[derive(Clone, Debug, Default)]
pub struct StructureConstants {
    table: HashMap<(RootId, RootId), Vec<CommTerm>>,
}

impl StructureConstants {
    pub fn terms(&self, alpha: RootId, beta: RootId) -> Option<&[CommTerm]> {
        self.table.get(&(alpha, beta)).map(|v| v.as_slice())
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(RootId, RootId), &Vec<CommTerm>)> {
        self.table.iter()
    }
}

/// A way of writing `x_α(u)` through a commutator: with
/// `[x_γ(a), x_δ(b)] = ∏ x_{iγ+jδ}(N a^i b^j)` the term `(i0, 1)` is `α`
/// with unit constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub gamma: RootId,
    pub delta: RootId,
    pub i0: u32,
    pub coeff: i64,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    kind: RootKind,
    rank: usize,
    roots: Vec<Vec<i64>>,
    /// `x_α(t) = I + t * Σ sign * e_{row,col}`.
    embeddings: Vec<Vec<(usize, usize, i64)>>,
    index: HashMap<Vec<i64>, RootId>,
    negation: Vec<RootId>,
    constants: StructureConstants,
    splittings: Vec<Option<Splitting>>,
}

fn unit_vec(len: usize, i: usize, v: i64) -> Vec<i64> {
    let mut e = vec![0; len];
    e[i] = v;
    e
}

fn add_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Builds the root system with its matrix model and derived structure constants.
pub fn build_root_system(kind: RootKind, rank: usize) -> Result<Arc<RootSystem>> {
    if rank < 2 {
        return Err(Error::RankTooLow(rank));
    }
    build_frame(kind, rank)
}

/// Like [`build_root_system`] but also admits rank 1, for the integer base
/// cases in `SL_2` and `Sp_2` frames. Nothing above the base ring is ever
/// factored in such a frame.
pub fn build_frame(kind: RootKind, rank: usize) -> Result<Arc<RootSystem>> {
    if rank < 1 {
        return Err(Error::RankTooLow(rank));
    }
    let mut roots = Vec::new();
    let mut embeddings = Vec::new();
    match kind {
        RootKind::A => {
            let d = rank + 1;
            for i in 0..d {
                for j in 0..d {
                    if i != j {
                        roots.push(add_vec(&unit_vec(d, i, 1), &unit_vec(d, j, -1)));
                        embeddings.push(vec![(i, j, 1)]);
                    }
                }
            }
        }
        RootKind::C => {
            let n = rank;
            let star = |i: usize| 2 * n - 1 - i;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        // e_i - e_j
                        roots.push(add_vec(&unit_vec(n, i, 1), &unit_vec(n, j, -1)));
                        embeddings.push(vec![(i, j, 1), (star(j), star(i), -1)]);
                    }
                }
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    roots.push(add_vec(&unit_vec(n, i, 1), &unit_vec(n, j, 1)));
                    embeddings.push(vec![(i, star(j), 1), (j, star(i), 1)]);
                    roots.push(add_vec(&unit_vec(n, i, -1), &unit_vec(n, j, -1)));
                    embeddings.push(vec![(star(i), j, 1), (star(j), i, 1)]);
                }
            }
            for i in 0..n {
                roots.push(unit_vec(n, i, 2));
                embeddings.push(vec![(i, star(i), 1)]);
                roots.push(unit_vec(n, i, -2));
                embeddings.push(vec![(star(i), i, 1)]);
            }
        }
    }
    let index: HashMap<Vec<i64>, RootId> = roots.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
    let negation = roots
        .iter()
        .map(|r| index[&r.iter().map(|x| -x).collect::<Vec<_>>()])
        .collect();
    let mut rs = RootSystem {
        kind,
        rank,
        roots,
        embeddings,
        index,
        negation,
        constants: StructureConstants::default(),
        splittings: Vec::new(),
    };
    rs.constants = derive_structure_constants(&rs);
    rs.splittings = (0..rs.roots.len()).map(|a| find_splitting(&rs, a)).collect();
    Ok(Arc::new(rs))
}

fn derive_structure_constants(rs: &RootSystem) -> StructureConstants {
    let ctx = PolyCtx::new(BaseRing::Integers, 2);
    let s = MultiPoly::var(ctx, 0);
    let t = MultiPoly::var(ctx, 1);
    let n = rs.dim();
    let mut table = HashMap::new();
    for a in 0..rs.roots.len() {
        for b in 0..rs.roots.len() {
            if a == b || rs.negation[a] == b {
                continue;
            }
            let mut c = rs.unipotent(a, &s);
            rs.apply_right(&mut c, b, &t);
            rs.apply_right(&mut c, a, &s.neg());
            rs.apply_right(&mut c, b, &t.neg());
            let diff = c.sub(&Matrix::identity(n, ctx));
            let mut terms = Vec::new();
            let mut rebuilt = Matrix::<MultiPoly>::zeros(n, ctx);
            for i in 1..=3u32 {
                for j in 1..=3u32 {
                    let gamma: Vec<i64> = rs.roots[a]
                        .iter()
                        .zip(&rs.roots[b])
                        .map(|(x, y)| i as i64 * x + j as i64 * y)
                        .collect();
                    let Some(&g) = rs.index.get(&gamma) else { continue };
                    let (r0, c0, sg) = rs.embeddings[g][0];
                    let mono = Monomial(smallvec::smallvec![i as u16, j as u16]);
                    let coeff = diff[(r0, c0)].coeff(&mono) * int(sg);
                    let coeff = crate::exactring::coeff_to_i64(&coeff).expect("small structure constant");
                    assert!(coeff != 0, "missing commutator term in matrix model");
                    terms.push(CommTerm { i, j, root: g, coeff });
                    let arg = MultiPoly::monomial(ctx, mono, int(coeff));
                    for &(r, cc, sgn) in &rs.embeddings[g] {
                        rebuilt[(r, cc)] = rebuilt[(r, cc)].add(&arg.scale(&int(sgn)));
                    }
                }
            }
            assert_eq!(rebuilt, diff, "commutator formula does not reproduce the matrix model");
            terms.sort_by_key(|t| (t.i + t.j, t.i));
            table.insert((a, b), terms);
        }
    }
    StructureConstants { table }
}

fn find_splitting(rs: &RootSystem, alpha: RootId) -> Option<Splitting> {
    let mut best: Option<Splitting> = None;
    let mut keys: Vec<_> = rs.constants.table.keys().copied().collect();
    keys.sort();
    for (g, d) in keys {
        for term in &rs.constants.table[&(g, d)] {
            if term.root == alpha && term.j == 1 && term.coeff.abs() == 1 {
                let cand = Splitting { gamma: g, delta: d, i0: term.i, coeff: term.coeff };
                let better = match best {
                    None => true,
                    Some(b) => {
                        let nb = rs.constants.table[&(b.gamma, b.delta)].len();
                        let nc = rs.constants.table[&(g, d)].len();
                        (cand.i0, nc) < (b.i0, nb)
                    }
                };
                if better {
                    best = Some(cand);
                }
            }
        }
    }
    best
}

impl RootSystem {
    pub fn kind(&self) -> RootKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn model(&self) -> GroupModel {
        GroupModel::new(self.kind, self.rank)
    }

    /// Size of the matrix model.
    pub fn dim(&self) -> usize {
        self.model().size()
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> impl Iterator<Item = RootId> {
        0..self.roots.len()
    }

    pub fn root_vector(&self, a: RootId) -> &[i64] {
        &self.roots[a]
    }

    pub fn root_id(&self, v: &[i64]) -> Result<RootId> {
        self.index.get(v).copied().ok_or_else(|| Error::UnknownRoot(v.to_vec()))
    }

    pub fn negate(&self, a: RootId) -> RootId {
        self.negation[a]
    }

    pub fn embedding(&self, a: RootId) -> &[(usize, usize, i64)] {
        &self.embeddings[a]
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn splitting(&self, a: RootId) -> Option<Splitting> {
        self.splittings[a]
    }

    pub fn is_long(&self, a: RootId) -> bool {
        self.kind == RootKind::C && self.roots[a].iter().any(|x| x.abs() == 2)
    }

    /// Cartan integer `<β, α> = 2 (β, α) / (α, α)`.
    pub fn pairing(&self, beta: RootId, alpha: RootId) -> i64 {
        let dot = |x: &[i64], y: &[i64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<i64>();
        2 * dot(&self.roots[beta], &self.roots[alpha]) / dot(&self.roots[alpha], &self.roots[alpha])
    }

    /// The matrix `x_α(t)`.
    pub fn unipotent<T: RingElem>(&self, a: RootId, t: &T) -> Matrix<T> {
        let ctx = t.ctx();
        let mut m = Matrix::identity(self.dim(), ctx);
        for &(r, c, sg) in &self.embeddings[a] {
            m[(r, c)] = if sg > 0 { t.clone() } else { t.neg() };
        }
        m
    }

    /// `m <- x_α(t) * m`.
    pub fn apply_left<T: RingElem>(&self, m: &mut Matrix<T>, a: RootId, t: &T) {
        for &(r, c, sg) in &self.embeddings[a] {
            let q = if sg > 0 { t.clone() } else { t.neg() };
            m.add_row_multiple(r, c, &q);
        }
    }

    /// `m <- m * x_α(t)`.
    pub fn apply_right<T: RingElem>(&self, m: &mut Matrix<T>, a: RootId, t: &T) {
        for &(r, c, sg) in &self.embeddings[a] {
            let q = if sg > 0 { t.clone() } else { t.neg() };
            m.add_col_multiple(c, r, &q);
        }
    }

    pub fn format_root(&self, a: RootId) -> String {
        let v: Vec<String> = self.roots[a].iter().map(|x| x.to_string()).collect();
        format!("[{}]", v.join(","))
    }
}

/// The matrix `x_α(t)`, after checking that `α` is a root of `rs`.
pub fn elem_unipotent<T: RingElem>(rs: &RootSystem, alpha: &[i64], t: &T) -> Result<Matrix<T>> {
    let a = rs.root_id(alpha)?;
    Ok(rs.unipotent(a, t))
}

/// Word for the commutator `x_α(s) x_β(t) x_α(-s) x_β(-t)`.
pub fn commutator_expand<T: RingElem>(
    rs: &Arc<RootSystem>,
    alpha: RootId,
    beta: RootId,
    s: &T,
    t: &T,
) -> Result<ElemWord<T>> {
    let terms = rs.constants.terms(alpha, beta).ok_or(Error::ProportionalRoots)?;
    let ctx = s.ctx();
    let mut w = ElemWord::empty(rs.clone(), ctx);
    for term in terms {
        let arg = pow(s, term.i).mul(&pow(t, term.j)).mul(&scalar(ctx, term.coeff));
        w.push(term.root, arg);
    }
    Ok(w)
}

pub(crate) fn pow<T: RingElem>(x: &T, e: u32) -> T {
    let mut acc = T::one(x.ctx());
    for _ in 0..e {
        acc = acc.mul(x);
    }
    acc
}

pub(crate) fn scalar<T: RingElem>(ctx: PolyCtx, v: i64) -> T {
    let one = T::one(ctx);
    let mut acc = T::zero(ctx);
    for _ in 0..v.unsigned_abs() {
        acc = acc.add(&one);
    }
    if v < 0 {
        acc.neg()
    } else {
        acc
    }
}

/// `(w_α(u), h_α(u))` with `w_α(u) = x_α(u) x_{-α}(-u^{-1}) x_α(u)` and
/// `h_α(u) = w_α(u) w_α(1)^{-1}`.
pub fn weyl_and_torus(rs: &RootSystem, alpha: RootId, u: &MultiPoly) -> Result<(Matrix, Matrix)> {
    let ctx = u.ctx();
    let unit = u.constant_value().ok_or_else(|| Error::NotAUnit(u.to_string()))?;
    let inv = ctx.base.inverse(&unit).ok_or_else(|| Error::NotAUnit(u.to_string()))?;
    let inv = MultiPoly::constant(ctx, inv);
    let neg_alpha = rs.negate(alpha);
    let weyl = |v: &MultiPoly, vinv: &MultiPoly| {
        let mut m = rs.unipotent(alpha, v);
        rs.apply_right(&mut m, neg_alpha, &vinv.neg());
        rs.apply_right(&mut m, alpha, v);
        m
    };
    let w = weyl(u, &inv);
    let one = MultiPoly::one(ctx);
    // w_α(1)^{-1} = w_α(-1)
    let w1_inv = weyl(&one.neg(), &one.neg());
    let h = w.mul(&w1_inv);
    Ok((w, h))
}

/// Exact group-membership test: `det = 1` for type A, `MᵀJM = J` for type C.
pub fn membership_check<T: RingElem>(m: &Matrix<T>, model: GroupModel) -> Result<bool> {
    if m.size() != model.size() {
        return Err(Error::SizeMismatch { expected: model.size(), got: m.size() });
    }
    Ok(match model.kind {
        RootKind::A => m.det().is_one(),
        RootKind::C => {
            let j = model.form::<T>(m.ctx());
            m.transpose().mul(&j).mul(m) == j
        }
    })
}

/// A matrix together with the group it is asserted to lie in. Construction
/// checks membership exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupMatrix {
    model: GroupModel,
    entries: Matrix,
}

impl GroupMatrix {
    pub fn new(model: GroupModel, entries: Matrix) -> Result<Self> {
        if !membership_check(&entries, model)? {
            return Err(Error::NotInGroup(format!("matrix fails the {} invariant", model.kind)));
        }
        Ok(GroupMatrix { model, entries })
    }

    pub fn model(&self) -> GroupModel {
        self.model
    }

    pub fn matrix(&self) -> &Matrix {
        &self.entries
    }

    pub fn into_matrix(self) -> Matrix {
        self.entries
    }

    pub fn ctx(&self) -> PolyCtx {
        self.entries.ctx()
    }
}

/// Inverse of a group element, using `g^{-1} = J^{-1} gᵀ J` for type C and the
/// adjugate for type A.
pub fn group_inverse<T: RingElem>(m: &Matrix<T>, model: GroupModel) -> Matrix<T> {
    match model.kind {
        RootKind::A => m.adjugate(),
        RootKind::C => {
            let j = model.form::<T>(m.ctx());
            // J^{-1} = -J
            let jinv = m_neg(&j);
            jinv.mul(&m.transpose()).mul(&j)
        }
    }
}

fn m_neg<T: RingElem>(m: &Matrix<T>) -> Matrix<T> {
    let z = Matrix::zeros(m.size(), m.ctx());
    z.sub(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zx(n: usize) -> PolyCtx {
        PolyCtx::new(BaseRing::Integers, n)
    }

    #[test]
    fn transpose_flips_the_root() {
        let ctx = zx(1);
        let t = MultiPoly::parse(ctx, "3*x1 - 2").unwrap();
        for (kind, rank) in [(RootKind::A, 3), (RootKind::C, 3)] {
            let rs = build_root_system(kind, rank).unwrap();
            for a in rs.roots() {
                assert_eq!(rs.unipotent(a, &t).transpose(), rs.unipotent(rs.negate(a), &t), "{}", rs.format_root(a));
            }
        }
    }

    #[test]
    fn root_counts() {
        for r in 2..5 {
            assert_eq!(build_root_system(RootKind::A, r).unwrap().num_roots(), r * (r + 1));
            assert_eq!(build_root_system(RootKind::C, r).unwrap().num_roots(), 2 * r * r);
        }
        assert_eq!(build_root_system(RootKind::A, 1).unwrap_err(), Error::RankTooLow(1));
        assert!("B".parse::<RootKind>().is_err());
    }

    #[test]
    fn c2_roots_are_standard() {
        let rs = build_root_system(RootKind::C, 2).unwrap();
        let mut vs: Vec<Vec<i64>> = rs.roots().map(|a| rs.root_vector(a).to_vec()).collect();
        vs.sort();
        let mut expected = vec![
            vec![2, 0], vec![-2, 0], vec![0, 2], vec![0, -2],
            vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1],
        ];
        expected.sort();
        assert_eq!(vs, expected);
    }

    #[test]
    fn cartan_integers_in_range() {
        for (k, r) in [(RootKind::A, 3), (RootKind::C, 3)] {
            let rs = build_root_system(k, r).unwrap();
            for a in rs.roots() {
                assert_eq!(rs.pairing(a, a), 2);
                for b in rs.roots() {
                    assert!((-2..=2).contains(&rs.pairing(b, a)));
                }
            }
        }
    }

    #[test]
    fn unipotent_examples() {
        let rs = build_root_system(RootKind::A, 2).unwrap();
        let ctx = zx(1);
        let five = MultiPoly::from_int(ctx, 5);
        let m = elem_unipotent(&rs, &[1, -1, 0], &five).unwrap();
        let mut expected = Matrix::identity(3, ctx);
        expected[(0, 1)] = five.clone();
        assert_eq!(m, expected);
        assert!(elem_unipotent(&rs, &[1, 1, 0], &five).is_err());
        assert!(rs.unipotent(0, &MultiPoly::zero(ctx)).is_identity());

        let c2 = build_root_system(RootKind::C, 2).unwrap();
        let x = MultiPoly::var(ctx, 0);
        let long = elem_unipotent(&c2, &[2, 0], &x).unwrap();
        // single off-diagonal entry coupling coordinate 1 with 1*
        let off: Vec<(usize, usize)> = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && !long[(i, j)].is_zero())
            .collect();
        assert_eq!(off, vec![(0, 3)]);
        assert_eq!(long[(0, 3)], x);
        assert!(membership_check(&long, c2.model()).unwrap());
    }

    #[test]
    fn every_unipotent_is_in_the_group() {
        let ctx = zx(2);
        let t = MultiPoly::parse(ctx, "3*x1^2 - x2 + 4").unwrap();
        for (k, r) in [(RootKind::A, 2), (RootKind::A, 3), (RootKind::C, 2), (RootKind::C, 3)] {
            let rs = build_root_system(k, r).unwrap();
            for a in rs.roots() {
                assert!(membership_check(&rs.unipotent(a, &t), rs.model()).unwrap());
            }
        }
    }

    #[test]
    fn structure_constants_ranges() {
        let a3 = build_root_system(RootKind::A, 3).unwrap();
        for (_, terms) in a3.constants().iter() {
            assert!(terms.len() <= 1);
            assert!(terms.iter().all(|t| t.coeff.abs() == 1));
        }
        let c3 = build_root_system(RootKind::C, 3).unwrap();
        for (_, terms) in c3.constants().iter() {
            assert!(terms.iter().all(|t| t.coeff.abs() == 1 || t.coeff.abs() == 2));
        }
    }

    #[test]
    fn every_root_has_a_unit_splitting() {
        for (k, r) in [(RootKind::A, 2), (RootKind::A, 3), (RootKind::C, 2), (RootKind::C, 3)] {
            let rs = build_root_system(k, r).unwrap();
            for a in rs.roots() {
                let sp = rs.splitting(a).expect("splitting");
                assert_ne!(sp.gamma, rs.negate(a));
                assert_ne!(sp.delta, rs.negate(a));
            }
        }
    }

    #[test]
    fn commutator_examples() {
        let a2 = build_root_system(RootKind::A, 2).unwrap();
        let ctx = zx(2);
        let s = MultiPoly::var(ctx, 0);
        let t = MultiPoly::var(ctx, 1);
        let e12 = a2.root_id(&[1, -1, 0]).unwrap();
        let e23 = a2.root_id(&[0, 1, -1]).unwrap();
        let e13 = a2.root_id(&[1, 0, -1]).unwrap();
        let w = commutator_expand(&a2, e12, e23, &s, &t).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w.letters()[0].0, e13);
        // brute-force 3x3 commutator: entry (1,3) is s*t
        let mut c = a2.unipotent(e12, &s);
        a2.apply_right(&mut c, e23, &t);
        a2.apply_right(&mut c, e12, &s.neg());
        a2.apply_right(&mut c, e23, &t.neg());
        assert_eq!(w.eval(), c);
        assert_eq!(c[(0, 2)], s.mul(&t));
        assert!(commutator_expand(&a2, e12, e13, &s, &t).unwrap().is_empty());
        let e21 = a2.negate(e12);
        assert_eq!(commutator_expand(&a2, e12, e21, &s, &t).unwrap_err(), Error::ProportionalRoots);

        let c2 = build_root_system(RootKind::C, 2).unwrap();
        let a = c2.root_id(&[1, -1]).unwrap();
        let b = c2.root_id(&[0, 2]).unwrap();
        let w = commutator_expand(&c2, a, b, &s, &t).unwrap();
        assert_eq!(w.len(), 2);
        let mut c = c2.unipotent(a, &s);
        c2.apply_right(&mut c, b, &t);
        c2.apply_right(&mut c, a, &s.neg());
        c2.apply_right(&mut c, b, &t.neg());
        assert_eq!(w.eval(), c);
        // the e1+e2 letter carries s*t, the 2e1 letter s^2*t
        let roots: Vec<Vec<i64>> = w.letters().iter().map(|(r, _)| c2.root_vector(*r).to_vec()).collect();
        assert_eq!(roots, vec![vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn weyl_and_torus_examples() {
        let a2 = build_root_system(RootKind::A, 2).unwrap();
        let e12 = a2.root_id(&[1, -1, 0]).unwrap();
        let ctx = zx(1);
        let (w, h) = weyl_and_torus(&a2, e12, &MultiPoly::one(ctx)).unwrap();
        let expected = Matrix::parse(ctx, &[
            vec!["0".into(), "1".into(), "0".into()],
            vec!["-1".into(), "0".into(), "0".into()],
            vec!["0".into(), "0".into(), "1".into()],
        ]).unwrap();
        assert_eq!(w, expected);
        assert!(h.is_identity());

        let (_, h) = weyl_and_torus(&a2, e12, &MultiPoly::from_int(ctx, -1)).unwrap();
        let diag: Vec<String> = (0..3).map(|i| h[(i, i)].to_string()).collect();
        assert_eq!(diag, ["-1", "-1", "1"]);

        let f5 = PolyCtx::new(BaseRing::PrimeField(5), 1);
        let (_, h) = weyl_and_torus(&a2, e12, &MultiPoly::from_int(f5, 2)).unwrap();
        let diag: Vec<String> = (0..3).map(|i| h[(i, i)].to_string()).collect();
        assert_eq!(diag, ["2", "3", "1"]);
        assert!(weyl_and_torus(&a2, e12, &MultiPoly::from_int(ctx, 2)).is_err());
    }

    #[test]
    fn membership_examples() {
        let ctx = zx(1);
        let sl2 = GroupModel::new(RootKind::A, 1);
        let cohn = Matrix::parse(ctx, &[
            vec!["1+2*x1".into(), "x1^2".into()],
            vec!["-4".into(), "1-2*x1".into()],
        ]).unwrap();
        assert!(membership_check(&cohn, sl2).unwrap());
        let a2 = GroupModel::new(RootKind::A, 2);
        let mut d = Matrix::identity(3, ctx);
        d[(0, 0)] = MultiPoly::from_int(ctx, 2);
        assert!(!membership_check(&d, a2).unwrap());
        assert!(membership_check(&Matrix::<MultiPoly>::identity(3, ctx), a2).unwrap());
        assert!(membership_check(&cohn, a2).is_err());
    }
}
