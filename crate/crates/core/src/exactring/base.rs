use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Base-ring elements are stored as reduced rationals. Each [`BaseRing`] keeps
/// them in its own normal form: integers have denominator 1, residues live in
/// `[0, m)`, and elements of `Z[1/s]` have denominators dividing a power of `s`.
pub type Coeff = BigRational;

/// The coefficient rings the toolkit computes over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseRing {
    Integers,
    IntegersMod(u64),
    PrimeField(u64),
    Rationals,
    /// `Z[1/s]`, stored with `s > 0`.
    IntegersLocalized(u64),
}

pub(crate) fn int(v: impl Into<BigInt>) -> Coeff {
    BigRational::from_integer(v.into())
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Strips from `n` every prime factor it shares with `s`.
pub(crate) fn strip_common(n: &BigInt, s: &BigInt) -> BigInt {
    let mut n = n.abs();
    if s.abs() <= BigInt::one() {
        return n;
    }
    loop {
        let g = n.gcd(s);
        if g.is_one() || n.is_zero() {
            return n;
        }
        n /= g;
    }
}

impl BaseRing {
    pub fn integers_mod(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidBase(format!("modulus {m} must be at least 2")));
        }
        Ok(BaseRing::IntegersMod(m))
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidBase(format!("{p} is not prime")));
        }
        Ok(BaseRing::PrimeField(p))
    }

    pub fn localized(s: i64) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidBase("cannot localize at 0".into()));
        }
        Ok(BaseRing::IntegersLocalized(s.unsigned_abs()))
    }

    /// The modulus for the finite rings.
    pub fn modulus(&self) -> Option<u64> {
        match *self {
            BaseRing::IntegersMod(m) | BaseRing::PrimeField(m) => Some(m),
            _ => None,
        }
    }

    pub fn is_domain(&self) -> bool {
        match *self {
            BaseRing::IntegersMod(m) => is_prime(m),
            _ => true,
        }
    }

    pub fn is_field(&self) -> bool {
        match *self {
            BaseRing::PrimeField(_) | BaseRing::Rationals => true,
            BaseRing::IntegersMod(m) => is_prime(m),
            _ => false,
        }
    }

    /// Whether `c` (an arbitrary rational) names an element of this ring.
    pub fn contains(&self, c: &Coeff) -> bool {
        match *self {
            BaseRing::Integers => c.is_integer(),
            BaseRing::Rationals => true,
            BaseRing::IntegersLocalized(s) => strip_common(c.denom(), &BigInt::from(s)).is_one(),
            BaseRing::IntegersMod(m) | BaseRing::PrimeField(m) => {
                c.is_integer() || c.denom().gcd(&BigInt::from(m)).is_one()
            }
        }
    }

    /// Brings an arbitrary rational into this ring's normal form.
    pub fn normalize(&self, c: Coeff) -> Result<Coeff> {
        if !self.contains(&c) {
            return Err(Error::NotInvertible(format!("{c} is not an element of {self}")));
        }
        Ok(match *self {
            BaseRing::IntegersMod(m) | BaseRing::PrimeField(m) => {
                let m = BigInt::from(m);
                let num = c.numer().mod_floor(&m);
                if c.is_integer() {
                    int(num)
                } else {
                    let inv = mod_inverse(&c.denom().mod_floor(&m), &m)
                        .expect("denominator coprime to modulus");
                    int((num * inv).mod_floor(&m))
                }
            }
            _ => c,
        })
    }

    pub fn from_int(&self, v: impl Into<BigInt>) -> Coeff {
        self.reduce_int(v.into())
    }

    fn reduce_int(&self, v: BigInt) -> Coeff {
        match *self {
            BaseRing::IntegersMod(m) | BaseRing::PrimeField(m) => int(v.mod_floor(&BigInt::from(m))),
            _ => int(v),
        }
    }

    fn is_integral_kind(&self) -> bool {
        !matches!(self, BaseRing::Rationals | BaseRing::IntegersLocalized(_))
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        if self.is_integral_kind() {
            self.reduce_int(a.numer() + b.numer())
        } else {
            a + b
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        if self.is_integral_kind() {
            self.reduce_int(a.numer() - b.numer())
        } else {
            a - b
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        if self.is_integral_kind() {
            self.reduce_int(a.numer() * b.numer())
        } else {
            a * b
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        if self.is_integral_kind() {
            self.reduce_int(-a.numer())
        } else {
            -a
        }
    }

    pub fn pow(&self, a: &Coeff, e: u32) -> Coeff {
        let mut acc = self.from_int(1);
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn inverse(&self, a: &Coeff) -> Option<Coeff> {
        if a.is_zero() {
            return None;
        }
        match *self {
            BaseRing::Integers => (a.numer().abs().is_one()).then(|| a.clone()),
            BaseRing::Rationals => Some(a.recip()),
            BaseRing::IntegersLocalized(s) => {
                strip_common(a.numer(), &BigInt::from(s)).is_one().then(|| a.recip())
            }
            BaseRing::IntegersMod(m) | BaseRing::PrimeField(m) => {
                mod_inverse(a.numer(), &BigInt::from(m)).map(int)
            }
        }
    }

    pub fn is_unit(&self, a: &Coeff) -> bool {
        self.inverse(a).is_some()
    }

    /// Exact quotient `a / b` when it exists in this ring.
    pub fn divide(&self, a: &Coeff, b: &Coeff) -> Option<Coeff> {
        if b.is_zero() {
            return None;
        }
        match *self {
            BaseRing::Integers => {
                let (q, r) = a.numer().div_rem(b.numer());
                r.is_zero().then(|| int(q))
            }
            BaseRing::Rationals => Some(a / b),
            BaseRing::IntegersLocalized(_) => {
                let q = a / b;
                self.contains(&q).then_some(q)
            }
            BaseRing::IntegersMod(m) | BaseRing::PrimeField(m) => {
                if let Some(inv) = self.inverse(b) {
                    return Some(self.mul(a, &inv));
                }
                // a = q*b mod m is solvable iff gcd(b, m) | a
                let m = BigInt::from(m);
                let g = b.numer().gcd(&m);
                if !a.numer().mod_floor(&g).is_zero() {
                    return None;
                }
                let mg = &m / &g;
                let inv = mod_inverse(&(b.numer() / &g).mod_floor(&mg), &mg)?;
                Some(int(((a.numer() / &g) * inv).mod_floor(&mg)))
            }
        }
    }

    /// Bit size used by growth measures.
    pub fn bits(c: &Coeff) -> u64 {
        c.numer().bits() + c.denom().bits()
    }

    pub fn is_integer_valued(c: &Coeff) -> bool {
        c.is_integer()
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Integers => write!(f, "Z"),
            BaseRing::IntegersMod(m) => write!(f, "Z/{m}"),
            BaseRing::PrimeField(p) => write!(f, "GF({p})"),
            BaseRing::Rationals => write!(f, "Q"),
            BaseRing::IntegersLocalized(s) => write!(f, "Z[1/{s}]"),
        }
    }
}

impl FromStr for BaseRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::InvalidBase(format!("unrecognized base ring `{s}`"));
        match t {
            "Z" => return Ok(BaseRing::Integers),
            "Q" => return Ok(BaseRing::Rationals),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("Z/") {
            return BaseRing::integers_mod(rest.trim().parse().map_err(|_| bad())?);
        }
        if let Some(rest) = t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            return BaseRing::prime_field(rest.trim().parse().map_err(|_| bad())?);
        }
        if let Some(rest) = t.strip_prefix("Z[1/").and_then(|r| r.strip_suffix(']')) {
            return BaseRing::localized(rest.trim().parse().map_err(|_| bad())?);
        }
        Err(bad())
    }
}

/// Integer view of a coefficient, when it has one and fits.
pub(crate) fn coeff_to_i64(c: &Coeff) -> Option<i64> {
    if c.is_integer() {
        c.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["Z", "Q", "Z/12", "GF(5)", "Z[1/6]"] {
            let b: BaseRing = s.parse().unwrap();
            assert_eq!(b.to_string(), s);
        }
        assert!("GF(6)".parse::<BaseRing>().is_err());
        assert!("Z/1".parse::<BaseRing>().is_err());
        assert!("Z[1/0]".parse::<BaseRing>().is_err());
    }

    #[test]
    fn localized_membership_and_units() {
        let b = BaseRing::localized(6).unwrap();
        assert!(b.contains(&BigRational::new(1.into(), 12.into())));
        assert!(!b.contains(&BigRational::new(1.into(), 5.into())));
        assert!(b.is_unit(&int(-18)));
        assert!(!b.is_unit(&int(10)));
    }

    #[test]
    fn modular_division() {
        let b = BaseRing::integers_mod(12).unwrap();
        // 3 * 3 = 9 mod 12
        assert_eq!(b.divide(&int(9), &int(3)), Some(int(3)));
        assert_eq!(b.divide(&int(1), &int(2)), None);
        assert_eq!(b.inverse(&int(5)), Some(int(5)));
    }
}
