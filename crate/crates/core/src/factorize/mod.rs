//! Factorization of matrices into elementary words.

mod euclid;
mod heuristic;
mod monic;
mod pipeline;

use std::sync::Arc;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::exactring::{BaseRing, MultiPoly, PolyCtx};
use crate::matrix::Matrix;
use crate::rootdata::{build_root_system, group_inverse, membership_check, GroupModel, RootId, RootSystem};
use crate::words::ElemWord;

pub use euclid::{factor_integer_sl, factor_integer_sp, factor_univar_euclidean};
pub use heuristic::heuristic_reduce;
pub use monic::{descend_monic, factor_monic_localized};

/// Resource limits for a factorization run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_letters: usize,
    pub max_degree: u32,
    pub max_coeff_bits: u64,
    pub max_steps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_letters: 100_000, max_degree: 64, max_coeff_bits: 256, max_steps: 5_000 }
    }
}

/// `eval(word) · residual_constant = target`.
#[derive(Clone, Debug)]
pub struct FactorizationCertificate {
    pub model: GroupModel,
    pub target: Matrix,
    pub word: ElemWord,
    pub residual_constant: Matrix,
    pub verified: bool,
    pub wall_time_ms: u64,
}

impl FactorizationCertificate {
    pub fn word_length(&self) -> usize {
        self.word.len()
    }

    pub fn max_degree(&self) -> u32 {
        self.word.max_degree()
    }

    /// Re-evaluates the word from scratch against the target.
    pub fn recheck(&self) -> bool {
        self.word.eval().mul(&self.residual_constant) == self.target
    }
}

/// Factors `g ∈ G(Z[x1..xn])` for `G = SL_N` (`N >= 3`) or `Sp_2N`
/// (`N >= 2`).
pub fn factor_polynomial(model: GroupModel, g: &Matrix, budget: &Budget) -> Result<FactorizationCertificate> {
    let start = Instant::now();
    let rs = build_root_system(model.kind, model.rank)?;
    if g.ctx().base != BaseRing::Integers {
        return Err(Error::InvalidBase(format!("factor_polynomial works over Z, got {}", g.ctx().base)));
    }
    if !membership_check(g, model)? {
        return Err(Error::NotInGroup(format!("matrix fails the {} invariant", model.kind)));
    }
    let word = run_pipeline(&rs, g, budget)?;
    let residual = Matrix::identity(g.size(), g.ctx());
    let cert = FactorizationCertificate {
        model,
        target: g.clone(),
        word,
        residual_constant: residual,
        verified: false,
        wall_time_ms: 0,
    };
    if !cert.recheck() {
        return Err(Error::VerificationFailed("certificate does not multiply back to the target".into()));
    }
    Ok(FactorizationCertificate { verified: true, wall_time_ms: start.elapsed().as_millis() as u64, ..cert })
}

/// Equivalent starting points for the greedy reduction. Each gives a word
/// for `g` back from a word for the transformed matrix.
#[derive(Clone, Copy, Debug)]
enum Variant {
    Plain,
    Inverse,
    Transpose,
    InverseTranspose,
    /// Conjugation by `w_α(1) = x_α(1) x_{-α}(-1) x_α(1)`.
    Weyl(RootId),
}

impl Variant {
    fn weyl_word(rs: &Arc<RootSystem>, ctx: PolyCtx, alpha: RootId) -> ElemWord {
        let one = MultiPoly::one(ctx);
        let letters = vec![(alpha, one.clone()), (rs.negate(alpha), one.neg()), (alpha, one)];
        ElemWord::new(rs.clone(), ctx, letters).expect("roots of the system")
    }

    fn apply(self, rs: &Arc<RootSystem>, g: &Matrix) -> Matrix {
        match self {
            Variant::Plain => g.clone(),
            Variant::Inverse => group_inverse(g, rs.model()),
            Variant::Transpose => g.transpose(),
            Variant::InverseTranspose => group_inverse(g, rs.model()).transpose(),
            Variant::Weyl(alpha) => {
                let w = Variant::weyl_word(rs, g.ctx(), alpha);
                w.eval().mul(g).mul(&w.inverse().eval())
            }
        }
    }

    /// Word for `g` from a word for `apply(g)`; `x_α(t)^T = x_{-α}(t)`.
    fn pull_back(self, rs: &Arc<RootSystem>, w: ElemWord) -> ElemWord {
        let ctx = w.ctx();
        let flip = |letters: Vec<(RootId, MultiPoly)>, negate_args: bool| {
            let letters = letters
                .into_iter()
                .map(|(r, t)| (rs.negate(r), if negate_args { t.neg() } else { t }))
                .collect();
            ElemWord::new(rs.clone(), ctx, letters).expect("roots of the system")
        };
        match self {
            Variant::Plain => w,
            Variant::Inverse => w.inverse(),
            Variant::Transpose => flip(w.into_letters().into_iter().rev().collect(), false),
            Variant::InverseTranspose => flip(w.into_letters(), true),
            Variant::Weyl(alpha) => {
                let p = Variant::weyl_word(rs, ctx, alpha);
                p.inverse().concat(&w).concat(&p).free_reduce()
            }
        }
    }
}

fn run_pipeline(rs: &Arc<RootSystem>, g: &Matrix, budget: &Budget) -> Result<ElemWord> {
    let mut variants = vec![Variant::Plain, Variant::Inverse, Variant::Transpose, Variant::InverseTranspose];
    variants.extend(rs.roots().map(Variant::Weyl));
    let mut stalled = 0;
    for v in variants {
        let (word, residual) = heuristic_reduce(rs, &v.apply(rs, g), budget);
        log::debug!("heuristic on {v:?}: {} letters, residual degree {}", word.len(), residual.max_degree());
        if residual.is_identity() {
            let w = v.pull_back(rs, word);
            if w.eval() == *g {
                return Ok(w);
            }
            return Err(Error::VerificationFailed(format!("pulled back word for {v:?}")));
        }
        stalled = residual.max_degree();
    }
    if g.ctx().nvars == 1 {
        return pipeline::local_global(rs, g, budget);
    }
    Err(Error::NotFactored(format!("greedy reduction stalled at degree {stalled}")))
}
