use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::descent::{descend_word, DescentBudget};
use crate::error::{Error, Result};
use crate::exactring::{BaseRing, Coeff, MultiPoly, PolyCtx, Substitution};
use crate::matrix::Matrix;
use crate::rootdata::group_inverse;
use crate::words::ElemWord;

/// Elements `s_i` generating the unit ideal of `Z`, with `Σ c_i s_i^{k_i} = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringData {
    pub elems: Vec<BigInt>,
    pub coeffs: Vec<BigInt>,
    pub exponents: Vec<u32>,
}

/// Coefficients `c` with `Σ c_i v_i = 1`, or `None` when the gcd is not 1.
fn bezout(values: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(values.len());
    let mut g = BigInt::zero();
    for v in values {
        let e = g.extended_gcd(v);
        for c in coeffs.iter_mut() {
            *c *= &e.x;
        }
        coeffs.push(e.y);
        g = e.gcd;
    }
    if g.is_negative() {
        coeffs.iter_mut().for_each(|c| *c = -c.clone());
        g = -g;
    }
    g.is_one().then_some(coeffs)
}

impl CoveringData {
    /// Covering with all exponents 1 and coefficients from the extended gcd.
    pub fn new(elems: Vec<BigInt>) -> Result<Self> {
        let n = elems.len();
        let coeffs = bezout(&elems)
            .ok_or_else(|| Error::CoveringInconsistent("elements do not generate the unit ideal".into()))?;
        Ok(CoveringData { elems, coeffs, exponents: vec![1; n] })
    }

    pub fn from_parts(elems: Vec<BigInt>, coeffs: Vec<BigInt>, exponents: Vec<u32>) -> Result<Self> {
        let c = CoveringData { elems, coeffs, exponents };
        c.check()?;
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// `s_i^{k_i}`.
    pub fn powers(&self) -> Vec<BigInt> {
        self.elems.iter().zip(&self.exponents).map(|(s, &k)| s.pow(k)).collect()
    }

    pub fn check(&self) -> Result<()> {
        let n = self.elems.len();
        if n == 0 || self.coeffs.len() != n || self.exponents.len() != n {
            return Err(Error::CoveringInconsistent("length mismatch".into()));
        }
        let sum: BigInt = self.coeffs.iter().zip(self.powers()).map(|(c, p)| c * p).sum();
        if !sum.is_one() {
            return Err(Error::CoveringInconsistent(format!("sum c_i s_i^k_i = {sum}, not 1")));
        }
        Ok(())
    }

    /// Replaces each `s_i` by `s_i^{k_i}` and recomputes the coefficients.
    pub fn raised(&self, exponents: &[u32]) -> Result<Self> {
        if exponents.len() != self.elems.len() {
            return Err(Error::CoveringInconsistent("length mismatch".into()));
        }
        let powers: Vec<BigInt> = self.elems.iter().zip(exponents).map(|(s, &k)| s.pow(k)).collect();
        let coeffs = bezout(&powers)
            .ok_or_else(|| Error::CoveringInconsistent("powers do not generate the unit ideal".into()))?;
        Ok(CoveringData { elems: self.elems.clone(), coeffs, exponents: exponents.to_vec() })
    }

    /// `a_j = Σ_{i < N-j} c_i s_i^{k_i}` for `j = 0..=N`; `a_0 = 1`, `a_N = 0`.
    pub fn chain(&self) -> Vec<BigInt> {
        let terms: Vec<BigInt> = self.coeffs.iter().zip(self.powers()).map(|(c, p)| c * p).collect();
        let n = terms.len();
        (0..=n).map(|j| terms[..n - j].iter().sum()).collect()
    }
}

/// Word generator for `g(a x) g(b x)^{-1}` whenever `a ≡ b mod s^k`.
#[derive(Clone, Debug)]
pub struct DilationCert {
    pub s: u64,
    pub k: u32,
    /// Dilated variable.
    pub var: usize,
    target: Matrix,
    /// Integral word in two extra variables `y = x_{n+1}`, `z = x_{n+2}`
    /// evaluating to `g(x(y + s^k z)) g(xy)^{-1}`.
    word: ElemWord,
}

impl DilationCert {
    pub fn word(&self) -> &ElemWord {
        &self.word
    }

    pub fn target(&self) -> &Matrix {
        &self.target
    }

    /// Verified word for `g(a x) g(b x)^{-1}`; `a`, `b` are polynomials free
    /// of the dilated variable.
    pub fn generate(&self, a: &MultiPoly, b: &MultiPoly) -> Result<ElemWord> {
        let ctx = self.target.ctx();
        if a.ctx() != ctx || b.ctx() != ctx {
            return Err(Error::BaseMismatch);
        }
        if a.degree_in(self.var).unwrap_or(0) > 0 || b.degree_in(self.var).unwrap_or(0) > 0 {
            return Err(Error::PreconditionViolated("dilation factors must not involve the dilated variable".into()));
        }
        let modulus = ctx.base.from_int(BigInt::from(self.s).pow(self.k));
        let zval = a
            .sub(b)
            .div_scalar(&modulus)
            .filter(|p| p.is_integral())
            .ok_or_else(|| Error::PreconditionViolated(format!("a - b is not divisible by {}^{}", self.s, self.k)))?;
        let n = ctx.nvars;
        let mut images: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(ctx, i)).collect();
        images.push(b.clone());
        images.push(zval);
        let sub = Substitution { target: ctx, images };
        let w = self.word.substitute(&sub)?.free_reduce();
        let ga = self.target.substitute(&Substitution::single(ctx, self.var, MultiPoly::var(ctx, self.var).mul(a)))?;
        let gb = self.target.substitute(&Substitution::single(ctx, self.var, MultiPoly::var(ctx, self.var).mul(b)))?;
        let expected = ga.mul(&group_inverse(&gb, w.rs().model()));
        if w.eval() != expected {
            return Err(Error::VerificationFailed("dilation generator".into()));
        }
        Ok(w)
    }
}

/// Builds the dilation certificate for an integral `g` from a word `w_s` for
/// `g` over `Z[1/s]`.
pub fn dilation_factor(g: &Matrix, w_s: &ElemWord, var: usize, budget: &DescentBudget) -> Result<DilationCert> {
    let ctx = g.ctx();
    if ctx.base != BaseRing::Integers {
        return Err(Error::InvalidBase(format!("dilation certificates are built over Z, got {}", ctx.base)));
    }
    let s = match w_s.ctx().base {
        BaseRing::IntegersLocalized(s) => s,
        BaseRing::Integers => 1,
        other => return Err(Error::InvalidBase(other.to_string())),
    };
    let loc = w_s.ctx().base;
    if w_s.ctx().nvars != ctx.nvars || w_s.eval() != g.change_base(loc)? {
        return Err(Error::PreconditionViolated("word does not evaluate to the localized matrix".into()));
    }
    let n = ctx.nvars;
    let big = PolyCtx::new(loc, n + 2);
    let wide = w_s.extend_vars(n + 2);
    let x = MultiPoly::var(big, var);
    let y = MultiPoly::var(big, n);
    let z = MultiPoly::var(big, n + 1);
    let plus = Substitution::single(big, var, x.mul(&y.add(&z)));
    let base_pt = Substitution::single(big, var, x.mul(&y));
    let f = wide.substitute(&plus)?.concat(&wide.substitute(&base_pt)?.inverse());
    let (h, k) = if s == 1 {
        (f.free_reduce(), 0)
    } else {
        descend_word(&f, n + 1, budget)?
    };
    Ok(DilationCert { s: s.max(1), k, var, target: g.clone(), word: h })
}

/// Assembles `g g(x_var = 0)^{-1}` from local certificates along the
/// telescoping chain of the covering.
pub fn patch(g: &Matrix, var: usize, certs: &[DilationCert], covering: &CoveringData) -> Result<ElemWord> {
    covering.check()?;
    if certs.len() != covering.len() {
        return Err(Error::CoveringInconsistent(format!("{} certificates for {} covering elements", certs.len(), covering.len())));
    }
    for (i, cert) in certs.iter().enumerate() {
        if BigInt::from(cert.s) != covering.elems[i] {
            return Err(Error::CoveringInconsistent(format!("certificate {i} is for s = {}", cert.s)));
        }
        if cert.k > covering.exponents[i] && cert.s != 1 {
            return Err(Error::CoveringInconsistent(format!("certificate {i} needs exponent {}", cert.k)));
        }
        if cert.var != var || cert.target != *g {
            return Err(Error::CoveringInconsistent(format!("certificate {i} is for a different matrix")));
        }
    }
    let ctx = g.ctx();
    let chain: Vec<MultiPoly> = covering
        .chain()
        .into_iter()
        .map(|a| MultiPoly::constant(ctx, Coeff::from(a)))
        .collect();
    let n = certs.len();
    let steps: Vec<ElemWord> = (0..n)
        .into_par_iter()
        .map(|j| certs[n - 1 - j].generate(&chain[j], &chain[j + 1]))
        .collect::<Result<_>>()?;
    let rs = certs[0].word.rs().clone();
    let mut out = ElemWord::empty(rs.clone(), ctx);
    for w in &steps {
        out.append(w);
    }
    let out = out.free_reduce();
    let expected = g.mul(&group_inverse(&g.at_zero(var), rs.model()));
    if out.eval() != expected {
        return Err(Error::VerificationFailed("patched word".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_system, RootKind};
    use crate::words::{map_word, Hom};

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn covering_examples() {
        let c = CoveringData::new(big(&[2, 3])).unwrap();
        assert_eq!(c.coeffs, big(&[-1, 1]));
        assert_eq!(c.chain(), big(&[1, -2, 0]));
        let r = c.raised(&[3, 2]).unwrap();
        r.check().unwrap();
        assert!(CoveringData::new(big(&[2, 4])).is_err());
        assert!(CoveringData::from_parts(big(&[2, 3]), big(&[1, 1]), vec![1, 1]).is_err());
        let t = CoveringData::new(big(&[1])).unwrap();
        assert_eq!(t.chain(), big(&[1, 0]));
    }

    #[test]
    fn elementary_input_needs_no_dilation() {
        let rs = build_root_system(RootKind::A, 2).unwrap();
        let ctx = PolyCtx::new(BaseRing::Integers, 1);
        let w = ElemWord::new(
            rs.clone(),
            ctx,
            vec![(0, MultiPoly::parse(ctx, "x1 + 1").unwrap()), (3, MultiPoly::parse(ctx, "2*x1^2").unwrap())],
        )
        .unwrap();
        let g = w.eval();
        let cert = dilation_factor(&g, &w, 0, &DescentBudget::default()).unwrap();
        assert_eq!(cert.k, 0);
        let a = MultiPoly::from_int(ctx, 5);
        assert!(cert.generate(&a, &a).unwrap().is_empty());
        let word = cert.generate(&MultiPoly::from_int(ctx, 3), &MultiPoly::one(ctx)).unwrap();
        let x3 = w.substitute(&Substitution::dilation(ctx, 0, &crate::exactring::int(3))).unwrap();
        assert_eq!(word.eval(), x3.concat(&w.inverse()).eval());

        let covering = CoveringData::new(big(&[1])).unwrap();
        let patched = patch(&g, 0, &[cert], &covering).unwrap();
        assert_eq!(patched.eval(), g.mul(&group_inverse(&g.at_zero(0), rs.model())));
    }

    #[test]
    fn localized_word_certificate() {
        let rs = build_root_system(RootKind::A, 2).unwrap();
        let loc = PolyCtx::new(BaseRing::localized(2).unwrap(), 1);
        let half = MultiPoly::parse(loc, "1/2").unwrap();
        let x = MultiPoly::var(loc, 0);
        // integral product with fractional letters: x12(1/2) x23(x) x12(-1/2) x23(-x) x13(x/2)
        let w = ElemWord::new(rs.clone(), loc, vec![(0, half.clone()), (3, x.clone()), (0, half.neg()), (3, x.neg()), (1, x.scale(&Coeff::new(1.into(), 2.into())))])
            .unwrap();
        let g = w.eval().change_base(BaseRing::Integers).unwrap();
        let cert = dilation_factor(&g, &w, 0, &DescentBudget::default()).unwrap();
        let ctx = g.ctx();
        let a = MultiPoly::from_int(ctx, 1 + (1 << cert.k));
        let word = cert.generate(&a, &MultiPoly::one(ctx)).unwrap();
        assert!(word.is_integral());
        assert!(cert.generate(&MultiPoly::from_int(ctx, 2), &MultiPoly::one(ctx)).is_err() || cert.k == 0);
        let _ = map_word(&word, &Hom::Localize(2)).unwrap();
    }
}
