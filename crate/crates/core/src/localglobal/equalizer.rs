use crate::error::{Error, Result};
use crate::exactring::{localize_eq, Coeff, Substitution};
use crate::matrix::Matrix;

const EQUALIZER_SEARCH: u32 = 64;

/// Smallest `n` with `g(s^n z) = h(s^n z)`, for `g, h` agreeing at `z = 0`
/// and after inverting `s`.
pub fn dilation_equalizer(g: &Matrix, h: &Matrix, s: &Coeff, z: usize) -> Result<u32> {
    if g.ctx() != h.ctx() {
        return Err(Error::BaseMismatch);
    }
    if g.size() != h.size() {
        return Err(Error::SizeMismatch { expected: g.size(), got: h.size() });
    }
    if g.at_zero(z) != h.at_zero(z) {
        return Err(Error::PreconditionViolated("g(0) and h(0) differ".into()));
    }
    for (a, b) in g.entries().iter().zip(h.entries()) {
        if !localize_eq(a, b, s)? {
            return Err(Error::PreconditionViolated("g and h differ after localization".into()));
        }
    }
    let ctx = g.ctx();
    let mut factor = ctx.base.from_int(1);
    for n in 0..=EQUALIZER_SEARCH {
        let sub = Substitution::dilation(ctx, z, &factor);
        if g.substitute(&sub)? == h.substitute(&sub)? {
            return Ok(n);
        }
        factor = ctx.base.mul(&factor, s);
    }
    Err(Error::SearchBoundExceeded(EQUALIZER_SEARCH))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{int, BaseRing, MultiPoly, PolyCtx};

    fn with_entry(ctx: PolyCtx, text: &str) -> Matrix {
        let mut m = Matrix::identity(3, ctx);
        m[(0, 1)] = MultiPoly::parse(ctx, text).unwrap();
        m
    }

    #[test]
    fn domain_gives_zero() {
        let ctx = PolyCtx::new(BaseRing::Integers, 1);
        let g = with_entry(ctx, "x1^2 + 3*x1");
        assert_eq!(dilation_equalizer(&g, &g, &int(2), 0), Ok(0));
    }

    #[test]
    fn modular_examples() {
        let c4 = PolyCtx::new(BaseRing::IntegersMod(4), 1);
        let g = with_entry(c4, "2*x1");
        let id = Matrix::identity(3, c4);
        assert_eq!(dilation_equalizer(&g, &id, &int(2), 0), Ok(1));
        let c8 = PolyCtx::new(BaseRing::IntegersMod(8), 1);
        let g = with_entry(c8, "4*x1 + 2*x1^2");
        assert_eq!(dilation_equalizer(&g, &Matrix::identity(3, c8), &int(2), 0), Ok(1));
    }

    #[test]
    fn preconditions_checked() {
        let c4 = PolyCtx::new(BaseRing::IntegersMod(4), 1);
        let id = Matrix::identity(3, c4);
        let moved = with_entry(c4, "1");
        assert!(matches!(dilation_equalizer(&moved, &id, &int(2), 0), Err(Error::PreconditionViolated(_))));
        // 2 is not nilpotent mod 12, so x1 survives localization
        let c12 = PolyCtx::new(BaseRing::IntegersMod(12), 1);
        let odd = with_entry(c12, "x1");
        let id12 = Matrix::identity(3, c12);
        assert!(matches!(dilation_equalizer(&odd, &id12, &int(2), 0), Err(Error::PreconditionViolated(_))));
    }
}
