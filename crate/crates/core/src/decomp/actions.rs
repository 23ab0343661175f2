use alloc::format;
use alloc::vec::Vec;

use super::{EquivariantBimodule, GModule, Side};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::gsmash::{Coinvariants, GaloisCertificate};
use crate::hochschild::{ClassSpace, CochainComplex, Variant};
use crate::kcat::{Bimodule, BimoduleParts, KCategory};
use crate::linalg::{SparseMatrix, SparseVec};

/// `(g·f)(a_1, .., a_q) = τ_g(f(g^{-1}a_1, .., g^{-1}a_q))`, expanded
/// multilinearly; identity directions are dropped in the normalized complex.
pub fn conjugate_cochain(
    cx: &CochainComplex,
    c: &KCategory,
    m: &EquivariantBimodule,
    g: usize,
    q: usize,
    f: &SparseVec,
) -> SparseVec {
    let act = &m.action;
    let gi = act.group().inv(g);
    let normalized = cx.variant() == Variant::Normalized;
    let values = cx.values(q, f);
    let one = c.field().one();
    let mut entries = Vec::new();
    for (ri, ch) in cx.nerve().chains(q).iter().enumerate() {
        let src = act.object(gi, ch.source);
        let mut terms: Vec<(Vec<usize>, Scalar)> = alloc::vec![(Vec::new(), one.clone())];
        for &a in &ch.morphs {
            let ma = c.morphism(a);
            let start = c.hom(act.object(gi, ma.source), act.object(gi, ma.target)).start;
            let image = act.morphism(gi, a);
            let mut next = Vec::with_capacity(terms.len() * image.nnz());
            for (morphs, coeff) in &terms {
                for (i, b) in image.iter() {
                    let id = start + i;
                    if normalized && c.is_identity(id) {
                        continue;
                    }
                    let mut extended = morphs.clone();
                    extended.push(id);
                    next.push((extended, coeff * b));
                }
            }
            terms = next;
        }
        let mut value = SparseVec::new();
        for (morphs, coeff) in &terms {
            let k = cx.nerve().lookup(q, src, morphs).expect("image chain exists");
            if let Some(v) = values.get(&k) {
                value.add_scaled(coeff, v);
            }
        }
        if value.is_zero() {
            continue;
        }
        let moved = m.apply(g, src, act.object(gi, ch.target), &value);
        for (pos, a) in moved.iter() {
            entries.push((cx.coordinate(q, ri, pos), a.clone()));
        }
    }
    SparseVec::from_entries(entries)
}

/// The left action of `G` on `H^q(c, M)` by conjugating representatives.
pub fn conjugation_action(
    cx: &CochainComplex,
    classes: &ClassSpace,
    c: &KCategory,
    m: &EquivariantBimodule,
) -> Result<GModule> {
    let g = m.action.group();
    let field = c.field();
    let q = classes.degree();
    let mut matrices = Vec::with_capacity(g.order());
    for s in 0..g.order() {
        let cols = classes
            .representatives()
            .iter()
            .map(|z| classes.classify(&conjugate_cochain(cx, c, m, s, q, z)))
            .collect::<Result<Vec<_>>>()?;
        matrices.push(SparseMatrix::from_columns(field, classes.dim(), &cols));
    }
    GModule::new(g.clone(), field, classes.dim(), Side::Left, matrices)
}

/// A `D`-bimodule restricted along the embedding of the coinvariants.
pub fn restrict_to_coinvariants(d: &KCategory, n: &Bimodule, co: &Coinvariants) -> Result<Bimodule> {
    let c = &co.category;
    let mut parts = BimoduleParts { elements: n.elements().to_vec(), ..Default::default() };
    for f in 0..c.total_dim() {
        let mf = c.morphism(f);
        let fv = &co.embedding[f];
        for e in 0..n.total_dim() {
            let el = n.element(e);
            if el.target == mf.source {
                let v = n.act_left(d, el.source, mf.source, mf.target, fv, &n.basis_vec(e));
                let start = n.space(el.source, mf.target).start;
                parts.left.insert((f, e), v.map_indices(|i| start + i));
            }
            if el.source == mf.target {
                let v = n.act_right(d, mf.source, mf.target, el.target, &n.basis_vec(e), fv);
                let start = n.space(mf.source, el.target).start;
                parts.right.insert((e, f), v.map_indices(|i| start + i));
            }
        }
    }
    Bimodule::from_parts(c, parts)
}

/// `H^0(C, N)` for a `D`-bimodule `N`, with the right action
/// `(m·h)_y = Σ_i r_{i,y}(h) m_{y_i} l_{i,y}(h)`.
#[derive(Clone, Debug)]
pub struct H0Action {
    pub complex: CochainComplex,
    pub classes: ClassSpace,
    pub module: GModule,
}

pub fn h0_action(cert: &GaloisCertificate, n: &Bimodule) -> Result<H0Action> {
    let d = cert.grading.category();
    let g = cert.grading.group();
    let co = &cert.coinvariants;
    let restricted = restrict_to_coinvariants(d, n, co)?;
    let complex = CochainComplex::normalized(&co.category, &restricted, 0)?;
    let classes = complex.classes(0)?;
    let field = d.field();
    let one = field.one();
    let mut matrices = Vec::with_capacity(g.order());
    for h in 0..g.order() {
        let mut cols = Vec::with_capacity(classes.dim());
        for z in classes.representatives() {
            let values = complex.values(0, z);
            let mut entries = Vec::new();
            for y in 0..d.num_objects() {
                let mut acc = SparseVec::new();
                for t in cert.terms(y, h) {
                    let Some(mv) = values.get(&t.mid) else { continue };
                    let ml = n.act_right(d, y, t.mid, t.mid, mv, &t.l);
                    acc.add_scaled(&one, &n.act_left(d, y, t.mid, y, &t.r, &ml));
                }
                for (pos, a) in acc.iter() {
                    entries.push((complex.coordinate(0, y, pos), a.clone()));
                }
            }
            let image = SparseVec::from_entries(entries);
            if !complex.is_cocycle(0, &image) {
                return Err(Error::NotInvariant(format!("image under {} is not invariant", g.name(h))));
            }
            cols.push(classes.classify(&image)?);
        }
        matrices.push(SparseMatrix::from_columns(field, classes.dim(), &cols));
    }
    let module = GModule::new(g.clone(), field, classes.dim(), Side::Right, matrices)?;
    Ok(H0Action { complex, classes, module })
}
