use std::fmt;
use std::ops::{Index, IndexMut};

use crate::exactring::{MultiPoly, PolyCtx, RingElem, Substitution};
use crate::error::{Error, Result};

/// Dense square matrix over a ring, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T: RingElem = MultiPoly> {
    n: usize,
    ctx: PolyCtx,
    data: Vec<T>,
}

impl<T: RingElem> Matrix<T> {
    pub fn zeros(n: usize, ctx: PolyCtx) -> Self {
        Matrix { n, ctx, data: vec![T::zero(ctx); n * n] }
    }

    pub fn identity(n: usize, ctx: PolyCtx) -> Self {
        let mut m = Self::zeros(n, ctx);
        for i in 0..n {
            m[(i, i)] = T::one(ctx);
        }
        m
    }

    pub fn from_rows(ctx: PolyCtx, rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::SizeMismatch { expected: n, got: row.len() });
            }
            for e in row {
                if e.ctx() != ctx {
                    return Err(Error::BaseMismatch);
                }
                data.push(e);
            }
        }
        Ok(Matrix { n, ctx, data })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> PolyCtx {
        self.ctx
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| if i == j { self[(i, j)].is_one() } else { self[(i, j)].is_zero() }))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n, self.ctx);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.mul(b);
                    out[(i, j)] = out[(i, j)].add(&t);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        Matrix { n: self.n, ctx: self.ctx, data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.n, self.ctx);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn map<U: RingElem>(&self, ctx: PolyCtx, f: impl Fn(&T) -> Result<U>) -> Result<Matrix<U>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { n: self.n, ctx, data })
    }

    /// Determinant by cofactor expansion along the first row (exact, division free).
    pub fn det(&self) -> T {
        let idx: Vec<usize> = (0..self.n).collect();
        self.minor_det(&idx, 0)
    }

    fn minor_det(&self, cols: &[usize], row: usize) -> T {
        match cols.len() {
            0 => T::one(self.ctx),
            1 => self[(row, cols[0])].clone(),
            2 => self[(row, cols[0])]
                .mul(&self[(row + 1, cols[1])])
                .sub(&self[(row, cols[1])].mul(&self[(row + 1, cols[0])])),
            _ => {
                let mut acc = T::zero(self.ctx);
                for (k, &c) in cols.iter().enumerate() {
                    let a = &self[(row, c)];
                    if a.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let t = a.mul(&self.minor_det(&rest, row + 1));
                    acc = if k % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
                }
                acc
            }
        }
    }

    /// Adjugate; equals the inverse for determinant-one matrices.
    pub fn adjugate(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n, self.ctx);
        if n == 1 {
            out[(0, 0)] = T::one(self.ctx);
            return out;
        }
        for i in 0..n {
            for j in 0..n {
                let sub = self.delete(i, j);
                let d = sub.det();
                out[(j, i)] = if (i + j) % 2 == 0 { d } else { d.neg() };
            }
        }
        out
    }

    fn delete(&self, r: usize, c: usize) -> Self {
        let n = self.n - 1;
        let mut data = Vec::with_capacity(n * n);
        for i in (0..self.n).filter(|&i| i != r) {
            for j in (0..self.n).filter(|&j| j != c) {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { n, ctx: self.ctx, data }
    }

    /// `row[target] += q * row[source]`.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, q: &T) {
        for j in 0..self.n {
            let s = &self[(source, j)];
            if s.is_zero() {
                continue;
            }
            let v = self[(target, j)].add(&q.mul(s));
            self[(target, j)] = v;
        }
    }

    /// `col[target] += q * col[source]`.
    pub fn add_col_multiple(&mut self, target: usize, source: usize, q: &T) {
        for i in 0..self.n {
            let s = &self[(i, source)];
            if s.is_zero() {
                continue;
            }
            let v = self[(i, target)].add(&s.mul(q));
            self[(i, target)] = v;
        }
    }
}

impl Matrix<MultiPoly> {
    pub fn substitute(&self, sub: &Substitution) -> Result<Self> {
        self.map(sub.target, |p| p.substitute(sub))
    }

    pub fn is_constant(&self) -> bool {
        self.data.iter().all(|p| p.is_constant())
    }

    pub fn max_degree(&self) -> u32 {
        self.data.iter().filter_map(|p| p.total_degree()).max().unwrap_or(0)
    }

    pub fn at_zero(&self, var: usize) -> Self {
        Matrix { n: self.n, ctx: self.ctx, data: self.data.iter().map(|p| p.at_zero(var)).collect() }
    }

    pub fn change_base(&self, base: crate::exactring::BaseRing) -> Result<Self> {
        let ctx = PolyCtx::new(base, self.ctx.nvars);
        self.map(ctx, |p| p.change_base(base))
    }

    pub fn extend_vars(&self, nvars: usize) -> Self {
        let ctx = PolyCtx::new(self.ctx.base, nvars);
        Matrix { n: self.n, ctx, data: self.data.iter().map(|p| p.extend_vars(nvars)).collect() }
    }

    pub fn restrict_vars(&self, nvars: usize) -> Result<Self> {
        let ctx = PolyCtx::new(self.ctx.base, nvars);
        self.map(ctx, |p| p.restrict_vars(nvars))
    }

    /// Parses a matrix from rows of polynomial text.
    pub fn parse(ctx: PolyCtx, rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| MultiPoly::parse(ctx, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ctx, parsed)
    }

    pub fn to_text(&self) -> Vec<Vec<String>> {
        self.rows().iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect()
    }
}

impl<T: RingElem> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T: RingElem> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

impl<T: RingElem> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
