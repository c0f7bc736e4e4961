//! Greedy reduction of polynomial matrices by root unipotents on both sides.

use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactring::{BaseRing, Monomial, MultiPoly};
use crate::matrix::Matrix;
use crate::rootdata::{RootId, RootKind, RootSystem};
use crate::words::ElemWord;

use super::euclid::euclid_factor;
use super::Budget;

const DEGREE_WEIGHT: u64 = 48;

fn entry_cost(p: &MultiPoly) -> u64 {
    p.terms()
        .iter()
        .map(|(m, c)| DEGREE_WEIGHT * (m.degree() as u64 + 1) + BaseRing::bits(c))
        .sum()
}

fn cost(m: &Matrix) -> u64 {
    m.entries().iter().map(entry_cost).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

#[derive(Clone)]
struct Work {
    rs: Arc<RootSystem>,
    m: Matrix,
    left: Vec<(RootId, MultiPoly)>,
    right: Vec<(RootId, MultiPoly)>,
}

impl Work {
    fn apply(&mut self, side: Side, root: RootId, t: MultiPoly) {
        match side {
            Side::Left => {
                self.rs.apply_left(&mut self.m, root, &t);
                self.left.push((root, t));
            }
            Side::Right => {
                self.rs.apply_right(&mut self.m, root, &t);
                self.right.push((root, t));
            }
        }
    }

    /// `g = word · m`, where `word` accounts for the right ops as well:
    /// `g = L^{-1} m R^{-1}`.
    fn split(&self, ctx_word: &ElemWord) -> (ElemWord, ElemWord) {
        let mut l = ctx_word.clone();
        for (r, t) in &self.left {
            l.push(*r, t.neg());
        }
        let mut rw = ctx_word.clone();
        for (r, t) in self.right.iter().rev() {
            rw.push(*r, t.neg());
        }
        (l, rw)
    }
}

/// Quotient candidates `q` making `a - q b` smaller in its leading part.
fn quotients(a: &MultiPoly, b: &MultiPoly, out: &mut Vec<MultiPoly>) {
    let (Some((am, ac)), Some((bm, bc))) = (a.leading_term(), b.leading_term()) else { return };
    let full = a.lead_quotient(b, false);
    if !full.is_zero() {
        out.push(full.clone());
        let single = a.lead_quotient(b, true);
        if single != full {
            out.push(single);
        }
    }
    if let Some(mono) = am.div(bm) {
        let ratio = ac / bc;
        let rounded = ratio.round();
        if !rounded.is_zero() && rounded != ratio {
            out.push(MultiPoly::monomial(a.ctx(), mono.clone(), rounded));
        }
        let floor = ratio.floor();
        if !floor.is_zero() && floor != ratio && floor != ratio.round() {
            out.push(MultiPoly::monomial(a.ctx(), mono, floor));
        }
    }
    // constant-term cancellation for entries with the same support pattern
    if a.is_constant() && b.is_constant() && full.is_zero() {
        let (x, y) = (a.constant_value().unwrap(), b.constant_value().unwrap());
        let r = (x / y).round();
        if !r.is_zero() {
            out.push(MultiPoly::constant(a.ctx(), r));
        }
    }
}

fn candidates(rs: &RootSystem, m: &Matrix) -> Vec<(Side, RootId, MultiPoly)> {
    let n = m.size();
    let mut out = Vec::new();
    let mut qs = Vec::new();
    for root in rs.roots() {
        for &(r, c, sg) in rs.embedding(root) {
        for j in 0..n {
            let (a, b) = (&m[(r, j)], &m[(c, j)]);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            qs.clear();
            quotients(a, b, &mut qs);
            for q in &qs {
                let t = if sg > 0 { q.neg() } else { q.clone() };
                out.push((Side::Left, root, t));
            }
        }
        for i in 0..n {
            let (a, b) = (&m[(i, c)], &m[(i, r)]);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            qs.clear();
            quotients(a, b, &mut qs);
            for q in &qs {
                let t = if sg > 0 { q.neg() } else { q.clone() };
                out.push((Side::Right, root, t));
            }
        }
        }
    }
    out
}

fn cost_after(rs: &RootSystem, m: &Matrix, side: Side, root: RootId, t: &MultiPoly) -> u64 {
    let mut m2 = m.clone();
    match side {
        Side::Left => rs.apply_left(&mut m2, root, t),
        Side::Right => rs.apply_right(&mut m2, root, t),
    }
    cost(&m2)
}

fn within(m: &Matrix, budget: &Budget) -> bool {
    m.max_degree() <= budget.max_degree
        && m.entries().iter().all(|p| p.max_coeff_bits() <= budget.max_coeff_bits)
}

fn greedy(work: &mut Work, budget: &Budget, steps: &mut u64, max_steps: u64) {
    let mut current = cost(&work.m);
    while !work.m.is_constant() && *steps < max_steps {
        *steps += 1;
        let mut best: Option<(u64, Side, RootId, MultiPoly)> = None;
        for (side, root, t) in candidates(&work.rs, &work.m) {
            let c = cost_after(&work.rs, &work.m, side, root, &t);
            if c < current && best.as_ref().is_none_or(|b| c < b.0) {
                best = Some((c, side, root, t));
            }
        }
        match best {
            Some((c, side, root, t)) => {
                work.apply(side, root, t);
                current = c;
            }
            None => return,
        }
        if !within(&work.m, budget) {
            return;
        }
    }
}

/// Candidates ranked by the cost they lead to, cheapest first.
fn ranked(work: &Work, limit: usize) -> Vec<(Side, RootId, MultiPoly)> {
    let mut all: Vec<(u64, Side, RootId, MultiPoly)> = candidates(&work.rs, &work.m)
        .into_iter()
        .map(|(side, root, t)| (cost_after(&work.rs, &work.m, side, root, &t), side, root, t))
        .collect();
    all.sort_by_key(|c| c.0);
    all.dedup_by(|a, b| a.1 == b.1 && a.2 == b.2 && a.3 == b.3);
    all.into_iter().take(limit).map(|(_, side, root, t)| (side, root, t)).collect()
}

const ESCAPE_WIDTH: usize = 40;
const ESCAPE_WIDTH_DEEP: usize = 10;
// second attempt before giving up on the greedy phase
const WIDE_WIDTH: usize = 400;
const WIDE_WIDTH_DEEP: usize = 30;
const ESCAPE_STEPS: u64 = 400;
const MAX_ESCAPES: usize = 64;

/// Leaves a local minimum of the cost by one or two non-improving moves
/// followed by a greedy run that ends strictly below the starting cost.
fn escape(work: &mut Work, budget: &Budget, width: usize, deep: usize) -> bool {
    let base = cost(&work.m);
    let improves = |w: &Work| w.m.is_constant() || cost(&w.m) < base;
    let first = ranked(work, width);
    for (side, root, t) in &first {
        let mut trial = work.clone();
        trial.apply(*side, *root, t.clone());
        let mut steps = 0;
        greedy(&mut trial, budget, &mut steps, ESCAPE_STEPS);
        if improves(&trial) {
            *work = trial;
            return true;
        }
    }
    for (side, root, t) in first.iter().take(deep) {
        let mut one = work.clone();
        one.apply(*side, *root, t.clone());
        for (side2, root2, t2) in ranked(&one, deep) {
            let mut trial = one.clone();
            trial.apply(side2, root2, t2);
            let mut steps = 0;
            greedy(&mut trial, budget, &mut steps, ESCAPE_STEPS);
            if improves(&trial) {
                *work = trial;
                return true;
            }
        }
    }
    false
}

const KICK_TRIES: usize = 300;
const KICK_SEED: u64 = 0x5eed;

fn small_arg<R: Rng>(rng: &mut R, work: &Work) -> MultiPoly {
    let ctx = work.m.ctx();
    let c = MultiPoly::from_int(ctx, rng.gen_range(1..=3) * if rng.gen() { 1 } else { -1 });
    match rng.gen_range(0..3) {
        0 => c,
        k => c.mul(&MultiPoly::var(ctx, rng.gen_range(0..ctx.nvars.max(1))).pow(k)),
    }
}

/// Random restarts from a stuck state: one or two small random letters,
/// then greedy plus narrow escapes, kept only if the cost drops.
fn kick(work: &mut Work, budget: &Budget, rng: &mut ChaCha8Rng) -> bool {
    let base = cost(&work.m);
    let nroots = work.rs.num_roots();
    for _ in 0..KICK_TRIES {
        let mut trial = work.clone();
        for _ in 0..rng.gen_range(1..=2) {
            let side = if rng.gen() { Side::Left } else { Side::Right };
            let t = small_arg(rng, &trial);
            trial.apply(side, rng.gen_range(0..nroots), t);
        }
        let mut steps = 0;
        for _ in 0..4 {
            greedy(&mut trial, budget, &mut steps, ESCAPE_STEPS);
            if trial.m.is_constant() || cost(&trial.m) < base {
                *work = trial;
                return true;
            }
            if !escape(&mut trial, budget, ESCAPE_WIDTH, 0) {
                break;
            }
        }
    }
    false
}

/// Integer content times the largest common monomial.
fn rough_gcd(ps: &[&MultiPoly]) -> Option<MultiPoly> {
    let nz: Vec<&MultiPoly> = ps.iter().copied().filter(|p| !p.is_zero()).collect();
    let first = nz.first()?;
    let ctx = first.ctx();
    let mut content = num_bigint::BigInt::from(0);
    let mut mono: Option<Monomial> = None;
    for p in &nz {
        for (m, c) in p.terms() {
            content = num_integer::Integer::gcd(&content, &c.to_integer());
            mono = Some(match mono {
                None => m.clone(),
                Some(x) => Monomial(x.0.iter().zip(m.0.iter()).map(|(a, b)| *a.min(b)).collect()),
            });
        }
    }
    Some(MultiPoly::monomial(ctx, mono?, content.into()))
}

fn exact_div(a: &MultiPoly, d: &MultiPoly) -> Option<MultiPoly> {
    let q = a.lead_quotient(d, false);
    (q.mul(d) == *a).then_some(q)
}

/// Type A: if `m - I = v uᵀ` with `uᵀv = 0` and a coordinate `k` where both
/// vanish, then `m = [I + v e_kᵀ, I + e_k uᵀ]`.
fn rank_one_transvection(rs: &Arc<RootSystem>, m: &Matrix) -> Option<ElemWord> {
    if rs.kind() != RootKind::A {
        return None;
    }
    let n = m.size();
    let ctx = m.ctx();
    let d = m.sub(&Matrix::identity(n, ctx));
    let (p, q) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| !d[(i, j)].is_zero())?;
    let col: Vec<MultiPoly> = (0..n).map(|i| d[(i, q)].clone()).collect();
    let g = rough_gcd(&col.iter().collect::<Vec<_>>())?;
    let v: Vec<MultiPoly> = col.iter().map(|c| exact_div(c, &g)).collect::<Option<_>>()?;
    let u: Vec<MultiPoly> = (0..n).map(|j| exact_div(&d[(p, j)], &v[p])).collect::<Option<_>>()?;
    for i in 0..n {
        for j in 0..n {
            if v[i].mul(&u[j]) != d[(i, j)] {
                return None;
            }
        }
    }
    let k = (0..n).find(|&k| v[k].is_zero() && u[k].is_zero())?;
    let mut w = ElemWord::empty(rs.clone(), ctx);
    let e = |i: usize, j: usize| {
        let mut r = vec![0i64; n];
        r[i] += 1;
        r[j] -= 1;
        rs.root_id(&r).unwrap()
    };
    for sign in [1, -1] {
        for i in (0..n).filter(|&i| i != k) {
            w.push(e(i, k), if sign > 0 { v[i].clone() } else { v[i].neg() });
        }
        for j in (0..n).filter(|&j| j != k) {
            w.push(e(k, j), if sign > 0 { u[j].clone() } else { u[j].neg() });
        }
    }
    let w = w.free_reduce();
    (w.eval() == *m).then_some(w)
}

/// Type A: for a column `j` with a zero in row `r`, the adjugate gives
/// `Σ_i adj[j][i] m[i][j] = 1`, so adding those multiples of the other rows
/// to row `r` puts a 1 in position `(r, j)`.
fn bezout_pivot(work: &mut Work) -> bool {
    if work.rs.kind() != RootKind::A {
        return false;
    }
    let n = work.m.size();
    let adj = work.m.adjugate();
    let mut best: Option<(u64, usize, usize)> = None;
    for j in 0..n {
        for r in 0..n {
            if !work.m[(r, j)].is_zero() {
                continue;
            }
            let c: u64 = (0..n).filter(|&i| i != r).map(|i| entry_cost(&adj[(j, i)])).sum();
            if best.is_none_or(|b| c < b.0) {
                best = Some((c, r, j));
            }
        }
    }
    let Some((_, r, j)) = best else { return false };
    let e = |rs: &RootSystem, a: usize, b: usize| {
        let mut v = vec![0i64; n];
        v[a] += 1;
        v[b] -= 1;
        rs.root_id(&v).unwrap()
    };
    for i in (0..n).filter(|&i| i != r) {
        let t = adj[(j, i)].clone();
        if !t.is_zero() {
            let root = e(&work.rs, r, i);
            work.apply(Side::Left, root, t);
        }
    }
    debug_assert!(work.m[(r, j)].is_one());
    for i in (0..n).filter(|&i| i != r) {
        let t = work.m[(i, j)].neg();
        if !t.is_zero() {
            let root = e(&work.rs, i, r);
            work.apply(Side::Left, root, t);
        }
    }
    for c in (0..n).filter(|&c| c != j) {
        let t = work.m[(r, c)].neg();
        if !t.is_zero() {
            let root = e(&work.rs, j, c);
            // column c += t * column j only touches row r after the clears
            work.apply(Side::Right, root, t);
        }
    }
    true
}

/// Greedy factorization attempt: returns `(word, residual)` with
/// `eval(word) · residual = g`; the residual is the identity on success.
pub fn heuristic_reduce(rs: &Arc<RootSystem>, g: &Matrix, budget: &Budget) -> (ElemWord, Matrix) {
    let ctx = g.ctx();
    let empty = ElemWord::empty(rs.clone(), ctx);
    let mut work = Work { rs: rs.clone(), m: g.clone(), left: Vec::new(), right: Vec::new() };
    let mut steps = 0;
    let mut pivots = 0;
    let mut escapes = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(KICK_SEED);
    loop {
        greedy(&mut work, budget, &mut steps, budget.max_steps);
        if work.m.is_constant() || steps >= budget.max_steps || !within(&work.m, budget) {
            break;
        }
        if let Some(w) = rank_one_transvection(rs, &work.m) {
            let (l, r) = work.split(&empty);
            let word = l.concat(&w).concat(&r).free_reduce();
            return (word, Matrix::identity(g.size(), ctx));
        }
        if escapes < MAX_ESCAPES
            && (escape(&mut work, budget, ESCAPE_WIDTH, ESCAPE_WIDTH_DEEP)
                || escape(&mut work, budget, WIDE_WIDTH, WIDE_WIDTH_DEEP))
        {
            escapes += 1;
            continue;
        }
        if escapes < MAX_ESCAPES && kick(&mut work, budget, &mut rng) {
            escapes += 1;
            continue;
        }
        if pivots >= g.size() || !bezout_pivot(&mut work) {
            break;
        }
        pivots += 1;
    }
    let (l, r) = work.split(&empty);
    if work.m.is_constant() && ctx.base == BaseRing::Integers {
        if let Ok(c) = euclid_factor(rs, &work.m) {
            let word = l.clone().concat(&c).concat(&r).free_reduce();
            if word.len() <= budget.max_letters {
                return (word, Matrix::identity(g.size(), ctx));
            }
        }
    }
    // g = L^{-1} m R^{-1}: keep L^{-1} as the word and m R^{-1} as residual
    let residual = work.m.mul(&r.eval());
    debug_assert_eq!(l.eval().mul(&residual), *g);
    (l.free_reduce(), residual)
}
