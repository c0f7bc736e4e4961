use std::fmt::{Debug, Display};

use super::poly::{MultiPoly, PolyCtx};

/// Commutative ring elements that can populate matrices and word arguments.
pub trait RingElem: Clone + PartialEq + Debug + Display + Send + Sync {
    fn ctx(&self) -> PolyCtx;
    fn zero(ctx: PolyCtx) -> Self;
    fn one(ctx: PolyCtx) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn is_one(&self) -> bool {
        *self == Self::one(self.ctx())
    }
}

impl RingElem for MultiPoly {
    fn ctx(&self) -> PolyCtx {
        MultiPoly::ctx(self)
    }

    fn zero(ctx: PolyCtx) -> Self {
        MultiPoly::zero(ctx)
    }

    fn one(ctx: PolyCtx) -> Self {
        MultiPoly::one(ctx)
    }

    fn add(&self, other: &Self) -> Self {
        MultiPoly::add(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        MultiPoly::mul(self, other)
    }

    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }

    fn sub(&self, other: &Self) -> Self {
        MultiPoly::sub(self, other)
    }

    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }

    fn is_one(&self) -> bool {
        MultiPoly::is_one(self)
    }
}
