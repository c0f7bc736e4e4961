//! Factorization over Z[x] localized at the monic polynomials, then back
//! down to Z[x].

use chevalley::exactring::{BaseRing, MonicLocElem, MultiPoly, PolyCtx, RingElem};
use chevalley::factorize::{descend_monic, factor_monic_localized, Budget};
use chevalley::rootdata::{build_root_system, RootKind};
use chevalley::words::ElemWord;

fn main() {
    let ctx = PolyCtx::new(BaseRing::Integers, 1);
    let p = |s: &str| MultiPoly::parse(ctx, s).unwrap();
    let rs = build_root_system(RootKind::A, 2).unwrap();
    let f = p("x1^2 + 1");

    // x_a(1/f) x_b(x) x_a(-1/f) with a + b a root
    let (a, b) = (rs.root_id(&[1, -1, 0]).unwrap(), rs.root_id(&[0, 1, -1]).unwrap());
    let inv_f = MonicLocElem::new(p("1"), f.clone(), 1).unwrap();
    let x = MonicLocElem::from_poly(p("x1"));
    let w = ElemWord::new(rs.clone(), ctx, vec![(a, inv_f.clone()), (b, x), (a, inv_f.neg())]).unwrap();
    let g = w.eval();
    println!("g over Z[x]_monic =\n{g}");

    let w_f = factor_monic_localized(&g, RootKind::A).unwrap();
    println!("local word ({} letters): {w_f}", w_f.len());

    let integral = g.entries().iter().all(|e| e.as_poly().is_some());
    println!("entries in Z[x]: {integral}");

    // Cohn's matrix: factor locally, then recover a word over Z[x]
    let cohn = chevalley::cli::cohn_matrix(3);
    let lifted = cohn.map(ctx, |e| Ok(MonicLocElem::from_poly(e.clone()))).unwrap();
    let w_cohn = factor_monic_localized(&lifted, RootKind::A).unwrap();
    println!("Cohn over Z[x]_monic: {} letters", w_cohn.len());
    let down = descend_monic(&cohn, &w_cohn, &p("x1"), &Budget::default()).unwrap();
    println!("descended to Z[x]: {} letters, exact = {}", down.len(), down.eval() == cohn);
}
