//! Seeded checks of the commutator, additivity and torus relations against
//! literal matrix products.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::exactring::{BaseRing, Coeff, MultiPoly, PolyCtx};
use crate::rootdata::{build_root_system, commutator_expand, group_inverse, weyl_and_torus, RootKind, RootSystem};
use crate::sample::{random_poly, PolySpec};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub checks: usize,
    pub failures: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
        }
    }

    fn merge(self, other: Tally) -> Tally {
        Tally { checks: self.checks + other.checks, failures: self.failures + other.failures }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub kind: RootKind,
    pub rank: usize,
    pub trials: usize,
    pub seed: u64,
    pub commutator: Tally,
    pub additivity: Tally,
    pub torus: Tally,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.commutator.failures + self.additivity.failures + self.torus.failures == 0
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "relations {}{} trials={} seed={}", self.kind, self.rank, self.trials, self.seed)?;
        for (name, t) in [("commutator", self.commutator), ("additivity", self.additivity), ("torus", self.torus)] {
            writeln!(f, "  {name}: {} checks, {} failures", t.checks, t.failures)?;
        }
        write!(f, "  {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Per-task seed so results do not depend on scheduling.
fn task_rng(seed: u64, task: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(task as u64 + 1);
    rng
}

fn commutator_suite(rs: &std::sync::Arc<RootSystem>, ctx: PolyCtx, trials: usize, seed: u64) -> Tally {
    let spec = PolySpec::default();
    let pairs: Vec<(usize, usize)> = rs
        .roots()
        .flat_map(|a| rs.roots().map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && rs.negate(a) != b)
        .collect();
    pairs
        .par_iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let mut rng = task_rng(seed, i);
            let mut tally = Tally::default();
            for _ in 0..trials {
                let s = random_poly(&mut rng, ctx, &spec);
                let t = random_poly(&mut rng, ctx, &spec);
                let mut literal = rs.unipotent(a, &s);
                rs.apply_right(&mut literal, b, &t);
                rs.apply_right(&mut literal, a, &s.neg());
                rs.apply_right(&mut literal, b, &t.neg());
                let ok = commutator_expand(rs, a, b, &s, &t).map(|w| w.eval() == literal).unwrap_or(false);
                tally.record(ok);
            }
            tally
        })
        .reduce(Tally::default, Tally::merge)
}

fn additivity_suite(rs: &std::sync::Arc<RootSystem>, ctx: PolyCtx, trials: usize, seed: u64) -> Tally {
    let spec = PolySpec::default();
    let roots: Vec<usize> = rs.roots().collect();
    roots
        .par_iter()
        .map(|&a| {
            let mut rng = task_rng(seed ^ 0xadd, a);
            let mut tally = Tally::default();
            for _ in 0..trials {
                let s = random_poly(&mut rng, ctx, &spec);
                let t = random_poly(&mut rng, ctx, &spec);
                let lhs = rs.unipotent(a, &s).mul(&rs.unipotent(a, &t));
                tally.record(lhs == rs.unipotent(a, &s.add(&t)));
            }
            tally
        })
        .reduce(Tally::default, Tally::merge)
}

/// `h_α(u) x_β(t) h_α(u)^{-1} = x_β(u^{<β,α>} t)` over `Z[1/2]` with
/// `u` cycling through `2, -1/2, -2`.
fn torus_suite(rs: &std::sync::Arc<RootSystem>, nvars: usize, trials: usize, seed: u64) -> Tally {
    let base = BaseRing::IntegersLocalized(2);
    let ctx = PolyCtx::new(base, nvars);
    let spec = PolySpec::default();
    let units = [Coeff::from_integer(2.into()), Coeff::new((-1).into(), 2.into()), Coeff::from_integer((-2).into())];
    let pairs: Vec<(usize, usize)> = rs.roots().flat_map(|a| rs.roots().map(move |b| (a, b))).collect();
    pairs
        .par_iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let mut rng = task_rng(seed ^ 0x7042, i);
            let mut tally = Tally::default();
            for k in 0..trials {
                let u = &units[k % units.len()];
                let t = random_poly(&mut rng, ctx, &spec);
                let ok = weyl_and_torus(rs, a, &MultiPoly::constant(ctx, u.clone()))
                    .map(|(_, h)| {
                        let lhs = h.mul(&rs.unipotent(b, &t)).mul(&group_inverse(&h, rs.model()));
                        let scale = MultiPoly::constant(ctx, u.pow(rs.pairing(b, a) as i32));
                        lhs == rs.unipotent(b, &t.mul(&scale))
                    })
                    .unwrap_or(false);
                tally.record(ok);
            }
            tally
        })
        .reduce(Tally::default, Tally::merge)
}

/// Runs all three suites with arguments in `Z[x1..x_nvars]` (degree <= 2,
/// coefficients in [-9, 9]). Deterministic in `seed`.
pub fn run_relation_suite(kind: RootKind, rank: usize, trials: usize, seed: u64, nvars: usize) -> Result<RelationReport> {
    let rs = build_root_system(kind, rank)?;
    let ctx = PolyCtx::new(BaseRing::Integers, nvars);
    Ok(RelationReport {
        kind,
        rank,
        trials,
        seed,
        commutator: commutator_suite(&rs, ctx, trials, seed),
        additivity: additivity_suite(&rs, ctx, trials, seed),
        torus: torus_suite(&rs, nvars, trials, seed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for (kind, rank) in [(RootKind::A, 2), (RootKind::C, 2)] {
            let r = run_relation_suite(kind, rank, 3, 7, 2).unwrap();
            assert!(r.passed(), "{r}");
            assert!(r.commutator.checks > 0 && r.torus.checks > 0);
        }
    }

    #[test]
    fn deterministic_report() {
        let a = run_relation_suite(RootKind::A, 2, 2, 1, 1).unwrap();
        let b = run_relation_suite(RootKind::A, 2, 2, 1, 1).unwrap();
        assert_eq!(a.to_string(), b.to_string());
    }

    #[test]
    fn rank_one_rejected() {
        assert!(run_relation_suite(RootKind::A, 1, 1, 0, 1).is_err());
    }
}
