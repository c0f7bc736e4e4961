//! End-to-end acceptance run. Prints one line per criterion and exits
//! non-zero if any of them fails.

use std::time::{Duration, Instant};

use chevalley::cli::{cohn_matrix, roundtrip, run_from, verify_certificate};
use chevalley::exactring::{BaseRing, Coeff, MultiPoly, PolyCtx, Substitution};
use chevalley::factorize::{factor_polynomial, Budget};
use chevalley::io::{to_json, CertificateFile, MatrixFile};
use chevalley::localglobal::{descend_word, dilation_equalizer, dilation_factor, patch, CoveringData, DescentBudget};
use chevalley::relations::run_relation_suite;
use chevalley::rootdata::{build_frame, build_root_system, elem_unipotent, group_inverse, GroupModel, RootKind};
use chevalley::sample::{mutate_certificate, padded_local_word, random_poly, random_word, Mutation, PolySpec};
use chevalley::{Error, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn relations() -> Outcome {
    let start = Instant::now();
    let mut failures = 0;
    let mut checks = 0;
    for (kind, rank) in [(RootKind::A, 2), (RootKind::A, 3), (RootKind::C, 2), (RootKind::C, 3)] {
        let r = run_relation_suite(kind, rank, 100, 2024, 2).unwrap();
        for t in [r.commutator, r.additivity, r.torus] {
            checks += t.checks;
            failures += t.failures;
        }
    }
    let elapsed = start.elapsed();
    outcome(failures == 0 && elapsed < Duration::from_secs(60), format!("{checks} checks, {failures} failures, {elapsed:.2?}"))
}

fn dilate(g: &Matrix, a: &num_bigint::BigInt) -> Matrix {
    let ctx = g.ctx();
    g.substitute(&Substitution::dilation(ctx, 0, &Coeff::from_integer(a.clone()))).unwrap()
}

fn telescoping() -> Outcome {
    let ctx = PolyCtx::new(BaseRing::Integers, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut ok = 0;
    let mut total = 0;
    for elems in [vec![2u64, 3], vec![2, 3, 5]] {
        for i in 0..50 {
            total += 1;
            let kind = if i % 2 == 0 { RootKind::A } else { RootKind::C };
            let rs = build_root_system(kind, 2).unwrap();
            let len = rng.gen_range(1..=6);
            let w = random_word(&mut rng, &rs, ctx, len, &PolySpec::default());
            let g = w.eval();
            let certs: Result<Vec<_>, _> = elems
                .iter()
                .map(|&s| dilation_factor(&g, &padded_local_word(&w, s)?, 0, &DescentBudget::default()))
                .collect();
            let Ok(certs) = certs else { continue };
            let ks: Vec<u32> = certs.iter().map(|c| c.k).collect();
            let cov = CoveringData::new(elems.iter().map(|&s| s.into()).collect()).unwrap().raised(&ks).unwrap();
            let chain = cov.chain();
            let mut prod = Matrix::identity(g.size(), ctx);
            for j in 0..chain.len() - 1 {
                prod = prod.mul(&dilate(&g, &chain[j])).mul(&group_inverse(&dilate(&g, &chain[j + 1]), rs.model()));
            }
            let expected = g.mul(&group_inverse(&g.at_zero(0), rs.model()));
            let patched = patch(&g, 0, &certs, &cov);
            if prod == expected && patched.is_ok_and(|h| h.is_integral() && h.eval() == expected) {
                ok += 1;
            }
        }
    }
    outcome(ok == total, format!("{ok}/{total} chains exact"))
}

fn equalizer() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let spec = PolySpec::default();
    let two = Coeff::from_integer(2.into());
    let mut ok = 0;
    let mut total = 0;
    for e in 2..=6u32 {
        let ctx = PolyCtx::new(BaseRing::IntegersMod(1 << e), 1);
        let z = MultiPoly::var(ctx, 0);
        for _ in 0..20 {
            total += 1;
            let mut g = Matrix::identity(3, ctx);
            let mut h = Matrix::identity(3, ctx);
            for i in 0..3 {
                for j in 0..3 {
                    let lift = MultiPoly::from_int(ctx, 1u64 << rng.gen_range(0..e));
                    g[(i, j)] = random_poly(&mut rng, ctx, &spec);
                    h[(i, j)] = g[(i, j)].add(&random_poly(&mut rng, ctx, &spec).mul(&z).mul(&lift));
                }
            }
            let dilated = |n: u32| {
                let sub = Substitution::dilation(ctx, 0, &Coeff::from_integer((1u64 << n).into()));
                g.substitute(&sub).unwrap() == h.substitute(&sub).unwrap()
            };
            let brute = (0..=e).find(|&n| dilated(n));
            if let Ok(n) = dilation_equalizer(&g, &h, &two, 0) {
                if dilated(n) && Some(n) == brute {
                    ok += 1;
                }
            }
        }
    }
    outcome(ok == total, format!("{ok}/{total} match brute force"))
}

fn descent() -> Outcome {
    let ctx = PolyCtx::new(BaseRing::localized(2).unwrap(), 1);
    let spec = PolySpec { denom_base: 2, max_denom_exp: 3, ..PolySpec::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut ok, mut clean, mut wrong) = (0, 0, 0);
    for i in 0..30 {
        let kind = if i % 2 == 0 { RootKind::A } else { RootKind::C };
        let rs = build_root_system(kind, 2).unwrap();
        let len = rng.gen_range(1..=3);
        let v = random_word(&mut rng, &rs, ctx, len, &spec);
        let v0 = v.map_args(ctx, |p| Ok(p.at_zero(0))).unwrap();
        let w = v.concat(&v0.inverse());
        match descend_word(&w, 0, &DescentBudget::default()) {
            Ok((h, k)) => {
                let factor = ctx.base.from_int(num_bigint::BigInt::from(2).pow(k));
                let dilated = w.eval().substitute(&Substitution::dilation(ctx, 0, &factor)).unwrap();
                if h.is_integral() && h.eval().change_base(ctx.base).unwrap() == dilated {
                    ok += 1;
                } else {
                    wrong += 1;
                }
            }
            Err(Error::DescentBudgetExceeded(_)) => clean += 1,
            Err(_) => wrong += 1,
        }
    }
    outcome(ok >= 25 && wrong == 0, format!("{ok}/30 descended, {clean} budget exits, {wrong} wrong"))
}

fn round_trip() -> Outcome {
    let start = Instant::now();
    let budget = Budget::default();
    let suites = [
        (GroupModel::new(RootKind::A, 2), 1, 200, 15),
        (GroupModel::new(RootKind::A, 3), 2, 50, 10),
        (GroupModel::new(RootKind::C, 2), 1, 50, 10),
    ];
    let mut ok = 0;
    let mut total = 0;
    for (model, nvars, trials, max_len) in suites {
        let r = roundtrip(model, nvars, trials, 7, max_len, &budget).unwrap();
        for (i, msg) in &r.failures {
            eprintln!("  {}{} trial {i}: {msg}", model.kind, model.rank);
        }
        ok += r.factored;
        total += r.trials;
    }
    let elapsed = start.elapsed();
    outcome(ok == total && elapsed < Duration::from_secs(600), format!("{ok}/{total} verified, {elapsed:.2?}"))
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("chevalley-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn cli(args: &[&str]) -> i32 {
    let mut sink = Vec::new();
    let mut err = Vec::new();
    run_from(std::iter::once("chevalley").chain(args.iter().copied()), &mut sink, &mut err)
}

fn cohn() -> Outcome {
    let g = cohn_matrix(3);
    let start = Instant::now();
    let cert = factor_polynomial(GroupModel::new(RootKind::A, 2), &g, &Budget::default());
    let elapsed = start.elapsed();
    let Ok(cert) = cert else { return outcome(false, "not factored".into()) };
    let path = scratch("cohn3-cert.json");
    std::fs::write(&path, to_json(&CertificateFile::from_certificate(&cert, false))).unwrap();
    let code = cli(&["verify", "--in", path.to_str().unwrap()]);
    let pass = cert.verified && cert.word.is_integral() && elapsed < Duration::from_secs(10) && code == 0;
    outcome(pass, format!("{} letters, {elapsed:.2?}, verify exit {code}", cert.word_length()))
}

fn rank_one_gate() -> Outcome {
    let ctx = PolyCtx::new(BaseRing::Integers, 1);
    let mut rejected = 0;
    let mut total = 0;
    let mut inputs = vec![cohn_matrix(2), Matrix::identity(2, ctx)];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for kind in [RootKind::A, RootKind::C] {
        let rs = build_frame(kind, 1).unwrap();
        for _ in 0..5 {
            inputs.push(random_word(&mut rng, &rs, ctx, 4, &PolySpec::default()).eval());
        }
    }
    for g in &inputs {
        for kind in [RootKind::A, RootKind::C] {
            total += 1;
            if matches!(factor_polynomial(GroupModel::new(kind, 1), g, &Budget::default()), Err(Error::RankTooLow(1))) {
                rejected += 1;
            }
        }
    }
    let input = scratch("sl2.json");
    let out = scratch("sl2-cert.json");
    std::fs::write(&input, to_json(&MatrixFile::from_matrix(GroupModel::new(RootKind::A, 1), &cohn_matrix(2)))).unwrap();
    let code = cli(&["factor", "--in", input.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    let pass = rejected == total && code == 3 && !out.exists();
    outcome(pass, format!("{rejected}/{total} rejected with RankTooLow, factor exit {code}"))
}

fn literal_product(file: &CertificateFile) -> Matrix {
    let rs = build_frame(file.group.kind, file.group.rank).unwrap();
    let ctx = PolyCtx::new(file.base.parse().unwrap(), file.nvars);
    let mut m = Matrix::identity(file.group.size(), ctx);
    for rec in &file.word {
        m = m.mul(&elem_unipotent(&rs, &rec.root, &MultiPoly::parse(ctx, &rec.arg).unwrap()).unwrap());
    }
    m.mul(&Matrix::parse(ctx, &file.residual).unwrap())
}

fn mutation_fuzz() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let ctx = PolyCtx::new(BaseRing::Integers, 1);
    let mut targets = vec![(GroupModel::new(RootKind::A, 2), cohn_matrix(3))];
    for model in [GroupModel::new(RootKind::A, 2), GroupModel::new(RootKind::A, 3), GroupModel::new(RootKind::C, 2)] {
        let rs = build_root_system(model.kind, model.rank).unwrap();
        for _ in 0..4 {
            targets.push((model, random_word(&mut rng, &rs, ctx, 8, &PolySpec::default()).eval()));
        }
    }
    let certs: Vec<CertificateFile> = targets
        .iter()
        .map(|(m, g)| CertificateFile::from_certificate(&factor_polynomial(*m, g, &Budget::default()).unwrap(), false))
        .collect();
    let originals_ok = certs.iter().all(|c| verify_certificate(c).unwrap_or(false));
    let (mut changing, mut rejected, mut false_accepts) = (0, 0, 0);
    for i in 0..1000 {
        let base = &certs[rng.gen_range(0..certs.len())];
        let m = mutate_certificate(&mut rng, base, Mutation::ALL[i % 3]).unwrap();
        let target = Matrix::parse(ctx, &m.target).unwrap();
        let accepted = verify_certificate(&m).unwrap_or(false);
        if literal_product(&m) != target {
            changing += 1;
            if accepted {
                false_accepts += 1;
            } else {
                rejected += 1;
            }
        }
    }
    let pass = originals_ok && false_accepts == 0 && rejected == changing;
    outcome(pass, format!("{changing}/1000 change the product, {rejected} rejected, {false_accepts} false accepts"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("relation soundness", relations),
        ("telescoping identity", telescoping),
        ("equalizer vs brute force", equalizer),
        ("descent verification", descent),
        ("round-trip completeness", round_trip),
        ("cohn flagship", cohn),
        ("rank-1 gate", rank_one_gate),
        ("mutation fuzz", mutation_fuzz),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("criterion {} {name}: {} ({})", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} of 8 criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
