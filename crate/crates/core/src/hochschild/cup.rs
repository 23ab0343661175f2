use alloc::vec::Vec;

use super::CochainComplex;
use crate::error::{Error, Result};
use crate::kcat::KCategory;
use crate::linalg::SparseVec;

/// `(α ∪ β)(a_1..a_{p+q}) = α(a_1..a_p) ∘ β(a_{p+1}..a_{p+q})` for cocycles of
/// the regular bimodule, in the coordinates of `cx`.
pub fn cup_product(
    cx: &CochainComplex,
    c: &KCategory,
    p: usize,
    alpha: &SparseVec,
    q: usize,
    beta: &SparseVec,
) -> Result<SparseVec> {
    let n = p + q;
    assert!(n <= cx.max_degree() + 1, "cup product degree above the truncation");
    if !cx.is_cocycle(p, alpha) {
        return Err(Error::NotACocycle { degree: p });
    }
    if !cx.is_cocycle(q, beta) {
        return Err(Error::NotACocycle { degree: q });
    }
    let av = cx.values(p, alpha);
    let bv = cx.values(q, beta);
    let nerve = cx.nerve();
    let mut out = Vec::new();
    for (k, ch) in nerve.chains(n).iter().enumerate() {
        let (front, back) = ch.morphs.split_at(p);
        let mid = back.first().map_or(ch.source, |&g| c.morphism(g).target);
        let kb = nerve.lookup(q, ch.source, back).expect("back chain exists");
        let kf = nerve.lookup(p, mid, front).expect("front chain exists");
        let (Some(x), Some(y)) = (av.get(&kf), bv.get(&kb)) else { continue };
        let v = c.compose(ch.source, mid, ch.target, x, y);
        for (pos, s) in v.iter() {
            out.push((cx.coordinate(n, k, pos), s.clone()));
        }
    }
    Ok(SparseVec::from_entries(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::kcat::Bimodule;
    use crate::kcat::corpus::Family;

    fn identity_family(cx: &CochainComplex, c: &KCategory) -> SparseVec {
        let f = cx.field();
        SparseVec::from_entries((0..c.num_objects()).map(|x| (cx.coordinate(0, x, c.position(c.identity(x))), f.one())))
    }

    #[test]
    fn unit_and_vanishing_square() {
        let q = FieldSpec::Rationals;
        let c = Family::CrownIncidence { rows: 2, n: 3, extra: 0 }.generate(q).unwrap();
        let cx = CochainComplex::normalized(&c, &Bimodule::regular(&c), 2).unwrap();
        let one = identity_family(&cx, &c);
        let h1 = cx.classes(1).unwrap();
        let x = h1.representatives()[0].clone();
        assert_eq!(cup_product(&cx, &c, 0, &one, 1, &x).unwrap(), x);
        assert_eq!(cup_product(&cx, &c, 1, &x, 0, &one).unwrap(), x);
        let sq = cup_product(&cx, &c, 1, &x, 1, &x).unwrap();
        assert!(cx.classes(2).unwrap().is_coboundary(&sq).unwrap());
    }

    #[test]
    fn rejects_non_cocycles() {
        let q = FieldSpec::Rationals;
        let c = Family::Chain { n: 2 }.generate(q).unwrap();
        let cx = CochainComplex::normalized(&c, &Bimodule::regular(&c), 2).unwrap();
        let e = SparseVec::unit(0, q);
        assert!(matches!(cup_product(&cx, &c, 0, &e, 0, &e), Err(Error::NotACocycle { degree: 0 })));
    }
}
