//! Exact arithmetic over the supported base rings.

use chevalley::exactring::{monic_divrem, poly_op, BaseRing, MonicLocElem, MultiPoly, PolyCtx, PolyOpKind, Substitution};

fn main() {
    for base in ["Z", "Q", "Z[1/6]", "Z/8", "GF(7)"] {
        let b: BaseRing = base.parse().unwrap();
        let ctx = PolyCtx::new(b, 2);
        let p = MultiPoly::parse(ctx, "3*x1^2 - x1*x2 + 5").unwrap();
        let q = MultiPoly::parse(ctx, "2*x2 + 1").unwrap();
        let prod = p.mul(&q);
        println!("{b}: ({p}) * ({q}) = {prod}");
        let two = b.from_int(2);
        match b.inverse(&two) {
            Some(inv) => println!("    1/2 = {inv}"),
            None => println!("    2 is not a unit"),
        }
    }

    let ctx = PolyCtx::new(BaseRing::Integers, 2);
    let p = MultiPoly::parse(ctx, "x1^3 + 2*x1*x2 - 4").unwrap();
    let d = MultiPoly::parse(ctx, "x1 + x2").unwrap();
    let (q, r) = monic_divrem(&p, &d, 0).unwrap();
    println!("({p}) = ({d}) * ({q}) + ({r})");
    let other = MultiPoly::parse(PolyCtx::new(BaseRing::Rationals, 2), "x1").unwrap();
    println!("mixing Z and Q: {:?}", poly_op(PolyOpKind::Add, &p, Some(&other)));

    let dil = Substitution::dilation(ctx, 0, &BaseRing::Integers.from_int(3));
    println!("{p} at x1 -> 3 x1: {}", p.substitute(&dil).unwrap());

    let ctx1 = PolyCtx::new(BaseRing::Integers, 1);
    let u = MonicLocElem::from_poly(MultiPoly::parse(ctx1, "x1 + 5").unwrap());
    let v = MonicLocElem::from_poly(MultiPoly::parse(ctx1, "2*x1 + 1").unwrap());
    println!("x1 + 5 unit after inverting monics: {}", u.is_unit());
    println!("2*x1 + 1 unit after inverting monics: {}", v.is_unit());
    println!("1/(x1 + 5) = {:?}", u.unit_inverse().map(|e| e.to_string()));
}
