//! Certificates under mutation: every edit that changes the product must be
//! rejected by the verifier. The oracle multiplies literal unipotent
//! matrices.
//!
//! Usage: `cargo run --release --example certificate -- [mutations] [seed]`

use chevalley::cli::{cohn_matrix, verify_certificate};
use chevalley::exactring::{BaseRing, MultiPoly, PolyCtx};
use chevalley::factorize::{factor_polynomial, Budget};
use chevalley::io::CertificateFile;
use chevalley::rootdata::{build_frame, build_root_system, elem_unipotent, GroupModel, RootKind};
use chevalley::sample::{mutate_certificate, random_word, Mutation, PolySpec};
use chevalley::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn literal_product(file: &CertificateFile) -> Matrix {
    let rs = build_frame(file.group.kind, file.group.rank).unwrap();
    let ctx = PolyCtx::new(file.base.parse::<BaseRing>().unwrap(), file.nvars);
    let mut m = Matrix::identity(file.group.size(), ctx);
    for rec in &file.word {
        let t = MultiPoly::parse(ctx, &rec.arg).unwrap();
        m = m.mul(&elem_unipotent(&rs, &rec.root, &t).unwrap());
    }
    m.mul(&Matrix::parse(ctx, &file.residual).unwrap())
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let count: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(300);
    let seed: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ctx = PolyCtx::new(BaseRing::Integers, 1);

    let mut files = vec![(GroupModel::new(RootKind::A, 2), cohn_matrix(3))];
    for model in [GroupModel::new(RootKind::A, 2), GroupModel::new(RootKind::C, 2)] {
        let rs = build_root_system(model.kind, model.rank).unwrap();
        for _ in 0..3 {
            files.push((model, random_word(&mut rng, &rs, ctx, 6, &PolySpec::default()).eval()));
        }
    }
    let certs: Vec<CertificateFile> = files
        .iter()
        .map(|(model, g)| CertificateFile::from_certificate(&factor_polynomial(*model, g, &Budget::default()).unwrap(), false))
        .collect();
    for c in &certs {
        assert!(verify_certificate(c).unwrap());
    }

    let (mut changed, mut rejected, mut false_accepts, mut neutral) = (0, 0, 0, 0);
    for i in 0..count {
        let base = &certs[rng.gen_range(0..certs.len())];
        let kind = Mutation::ALL[i % 3];
        let m = mutate_certificate(&mut rng, base, kind).unwrap();
        let target = Matrix::parse(ctx, &m.target).unwrap();
        let moves = literal_product(&m) != target;
        let accepted = verify_certificate(&m).unwrap_or(false);
        match (moves, accepted) {
            (true, false) => {
                changed += 1;
                rejected += 1;
            }
            (true, true) => {
                changed += 1;
                false_accepts += 1;
                println!("false accept: {kind:?}");
            }
            (false, _) => neutral += 1,
        }
    }
    println!("{count} mutations: {changed} change the product, {rejected} rejected, {false_accepts} false accepts, {neutral} leave it unchanged");
}
