use std::fmt;

use super::base::Coeff;
use super::poly::{MultiPoly, PolyCtx};
use super::ring::RingElem;
use super::monic_divrem;
use crate::error::{Error, Result};

/// Distinguished variable of the monic localization.
pub const MONIC_VAR: usize = 0;

/// Element `numerator / denom_monic^denom_power` of the localization of
/// `R[x]` at the monic polynomials in `x = x1`.
#[derive(Clone, Debug)]
pub struct MonicLocElem {
    numerator: MultiPoly,
    denom_monic: MultiPoly,
    denom_power: u32,
}

pub fn is_monic(f: &MultiPoly, var: usize) -> bool {
    match f.degree_in(var) {
        Some(d) => f.coeff_in(var, d).is_one(),
        None => false,
    }
}

impl MonicLocElem {
    pub fn new(numerator: MultiPoly, denom_monic: MultiPoly, denom_power: u32) -> Result<Self> {
        if numerator.ctx() != denom_monic.ctx() {
            return Err(Error::BaseMismatch);
        }
        if !is_monic(&denom_monic, MONIC_VAR) {
            return Err(Error::NotMonic);
        }
        Ok(MonicLocElem { numerator, denom_monic, denom_power }.simplified())
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let one = MultiPoly::one(p.ctx());
        MonicLocElem { numerator: p, denom_monic: one, denom_power: 0 }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.numerator
    }

    pub fn denom_monic(&self) -> &MultiPoly {
        &self.denom_monic
    }

    pub fn denom_power(&self) -> u32 {
        self.denom_power
    }

    /// `denom_monic ^ denom_power`, always monic.
    pub fn denominator(&self) -> MultiPoly {
        self.denom_monic.pow(self.denom_power)
    }

    /// The polynomial this element equals, if its denominator cancels.
    pub fn as_poly(&self) -> Option<MultiPoly> {
        if self.denom_power == 0 {
            return Some(self.numerator.clone());
        }
        let (q, r) = monic_divrem(&self.numerator, &self.denominator(), MONIC_VAR).ok()?;
        r.is_zero().then_some(q)
    }

    fn simplified(mut self) -> Self {
        if self.numerator.is_zero() || self.denom_monic.is_one() {
            self.denom_power = 0;
        }
        while self.denom_power > 0 {
            match monic_divrem(&self.numerator, &self.denom_monic, MONIC_VAR) {
                Ok((q, r)) if r.is_zero() => {
                    self.numerator = q;
                    self.denom_power -= 1;
                }
                _ => break,
            }
        }
        if self.denom_power == 0 {
            self.denom_monic = MultiPoly::one(self.numerator.ctx());
        }
        self
    }

    fn common(&self, other: &Self) -> (MultiPoly, MultiPoly, MultiPoly, u32) {
        if self.denom_monic == other.denom_monic {
            let p = self.denom_power.max(other.denom_power);
            let a = self.numerator.mul(&self.denom_monic.pow(p - self.denom_power));
            let b = other.numerator.mul(&other.denom_monic.pow(p - other.denom_power));
            (a, b, self.denom_monic.clone(), p)
        } else {
            let da = self.denominator();
            let db = other.denominator();
            (self.numerator.mul(&db), other.numerator.mul(&da), da.mul(&db), 1)
        }
    }

    /// Leading coefficient of the numerator in `x`, as a base-ring constant
    /// when the numerator is univariate.
    fn numerator_lead(&self) -> Option<Coeff> {
        let d = self.numerator.degree_in(MONIC_VAR)?;
        self.numerator.coeff_in(MONIC_VAR, d).constant_value()
    }

    /// Units detected structurally: a numerator whose leading coefficient is a
    /// unit of the base is a unit times a monic polynomial.
    pub fn unit_inverse(&self) -> Option<Self> {
        let lc = self.numerator_lead()?;
        let base = self.numerator.base();
        let inv = base.inverse(&lc)?;
        let monic = self.numerator.scale(&inv);
        let num = self.denominator().scale(&inv);
        Some(MonicLocElem { numerator: num, denom_monic: monic, denom_power: 1 }.simplified())
    }

    pub fn is_unit(&self) -> bool {
        self.unit_inverse().is_some()
    }
}

impl PartialEq for MonicLocElem {
    fn eq(&self, other: &Self) -> bool {
        self.numerator.mul(&other.denominator()) == other.numerator.mul(&self.denominator())
    }
}

impl fmt::Display for MonicLocElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom_power == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({})/({})^{}", self.numerator, self.denom_monic, self.denom_power)
        }
    }
}

impl RingElem for MonicLocElem {
    fn ctx(&self) -> PolyCtx {
        self.numerator.ctx()
    }

    fn zero(ctx: PolyCtx) -> Self {
        Self::from_poly(MultiPoly::zero(ctx))
    }

    fn one(ctx: PolyCtx) -> Self {
        Self::from_poly(MultiPoly::one(ctx))
    }

    fn add(&self, other: &Self) -> Self {
        let (a, b, d, p) = self.common(other);
        MonicLocElem { numerator: a.add(&b), denom_monic: d, denom_power: p }.simplified()
    }

    fn mul(&self, other: &Self) -> Self {
        let numerator = self.numerator.mul(&other.numerator);
        if self.denom_monic == other.denom_monic {
            MonicLocElem {
                numerator,
                denom_monic: self.denom_monic.clone(),
                denom_power: self.denom_power + other.denom_power,
            }
            .simplified()
        } else {
            MonicLocElem { numerator, denom_monic: self.denominator().mul(&other.denominator()), denom_power: 1 }
                .simplified()
        }
    }

    fn neg(&self) -> Self {
        MonicLocElem { numerator: self.numerator.neg(), ..self.clone() }
    }

    fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn is_one(&self) -> bool {
        self.numerator == self.denominator()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::BaseRing;

    fn ctx() -> PolyCtx {
        PolyCtx::new(BaseRing::Integers, 1)
    }

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(ctx(), s).unwrap()
    }

    #[test]
    fn cross_multiplication_equality() {
        let a = MonicLocElem::new(p("x1 + 1"), p("x1^2 + 1"), 1).unwrap();
        let b = MonicLocElem::new(p("x1^2 + x1 + x1 + 1"), p("x1^3 + x1^2 + x1 + 1"), 1).unwrap();
        // (x+1)^2 / ((x+1)(x^2+1)) = (x+1)/(x^2+1)
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_non_monic_denominator() {
        assert_eq!(MonicLocElem::new(p("1"), p("2*x1 + 1"), 1).unwrap_err(), Error::NotMonic);
    }

    #[test]
    fn monic_numerators_are_units() {
        let f = MonicLocElem::from_poly(p("x1^2 + 3"));
        let inv = f.unit_inverse().unwrap();
        assert!(f.mul(&inv).is_one());
        assert!(MonicLocElem::from_poly(p("2*x1 + 1")).unit_inverse().is_none());
    }
}
