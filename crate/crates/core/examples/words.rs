//! Words in root unipotents: products, inverses, free reduction, ring maps
//! and the congruence test.

use chevalley::exactring::{BaseRing, MultiPoly, PolyCtx, Substitution};
use chevalley::rootdata::{build_root_system, commutator_expand, RootKind};
use chevalley::words::{congruence_check, free_reduce, invert_word, map_word, ElemWord, Hom};

fn main() {
    let rs = build_root_system(RootKind::C, 2).unwrap();
    let ctx = PolyCtx::new(BaseRing::Integers, 1);
    let p = |s: &str| MultiPoly::parse(ctx, s).unwrap();
    for a in rs.roots() {
        println!("root {a}: {:?} ({})", rs.root_vector(a), if rs.is_long(a) { "long" } else { "short" });
    }

    let w = ElemWord::new(rs.clone(), ctx, vec![(0, p("x1")), (0, p("2")), (3, p("x1^2")), (3, p("-x1^2")), (5, p("1"))]).unwrap();
    println!("w = {w}");
    println!("free_reduce(w) = {}", free_reduce(&w));
    let inv = invert_word(&w);
    println!("w w^-1 = identity: {}", w.clone().concat(&inv).eval().is_identity());

    let (a, b) = (0, 2);
    let c = commutator_expand(&rs, a, b, &p("x1"), &p("3")).unwrap();
    println!("[x_{}(x1), x_{}(3)] = {c}", rs.format_root(a), rs.format_root(b));

    let half = map_word(&w, &Hom::Localize(2)).unwrap();
    println!("over {}: {half}", half.ctx().base);
    let sub = Substitution::single(ctx, 0, p("x1 + 1"));
    println!("x1 -> x1 + 1: {}", map_word(&w, &Hom::Substitute(sub)).unwrap());
    println!("mod 4: {}", map_word(&w, &Hom::Rebase(BaseRing::IntegersMod(4))).unwrap());

    let cong = w.clone().concat(&map_word(&w, &Hom::Substitute(Substitution::single(ctx, 0, p("0")))).unwrap().inverse());
    println!("w(x) w(0)^-1 trivial at x = 0: {}", congruence_check(&cong, 0).holds);
    println!("w trivial at x = 0: {}", congruence_check(&w, 0).holds);
}
