use alloc::vec::Vec;

use super::{
    EquivariantBimodule, GModule, class_component, coinduce, conjugate_cochain, conjugation_action, g_component,
    group_cohomology, smash_bimodule, transport,
};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::group::FiniteGroup;
use crate::gsmash::SmashProduct;
use crate::hochschild::{ChainComplex, CochainComplex};
use crate::kcat::{Bimodule, KCategory};
use crate::linalg::{SparseMatrix, SparseVec, rank};

/// One degree of a dimension comparison. `holds` says whether the columns
/// satisfy the relation the check asks for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeComparison {
    pub degree: usize,
    pub columns: Vec<usize>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub field: FieldSpec,
    pub max_degree: usize,
    pub rows: Vec<DegreeComparison>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

fn all_equal(cols: &[usize]) -> bool {
    cols.windows(2).all(|w| w[0] == w[1])
}

/// Per degree: `dim H^q(C, M#kG)`, `Σ_[g] dim H^q(C, M_[g])` and
/// `Σ_[g] [G : Z(g)] dim H^q(C, M.g)`.
pub fn decomposition_check(c: &KCategory, sp: &SmashProduct, m: &EquivariantBimodule, nmax: usize) -> Result<ComparisonReport> {
    let dims = |b: &Bimodule| -> Result<Vec<usize>> { Ok(CochainComplex::normalized(c, b, nmax)?.cohomology().dims) };
    three_columns(c, sp, m, nmax, dims)
}

/// The homology version of [`decomposition_check`].
pub fn homology_decomposition_check(
    c: &KCategory,
    sp: &SmashProduct,
    m: &EquivariantBimodule,
    nmax: usize,
) -> Result<ComparisonReport> {
    let dims = |b: &Bimodule| -> Result<Vec<usize>> { Ok(ChainComplex::normalized(c, b, nmax)?.homology().dims) };
    three_columns(c, sp, m, nmax, dims)
}

fn three_columns<F>(c: &KCategory, sp: &SmashProduct, m: &EquivariantBimodule, nmax: usize, dims: F) -> Result<ComparisonReport>
where
    F: Fn(&Bimodule) -> Result<Vec<usize>>,
{
    let g = sp.action.group();
    let sb = smash_bimodule(c, sp, m)?;
    let whole = dims(&sb.over_c.bimodule)?;
    let mut by_class = alloc::vec![0; nmax + 1];
    let mut induced = alloc::vec![0; nmax + 1];
    for class in g.conjugacy_classes() {
        let part = dims(&class_component(c, &sb, &class)?.bimodule)?;
        let rep = dims(&g_component(c, &sb, class[0])?.bimodule)?;
        let index = g.order() / g.centralizer(class[0]).len();
        for q in 0..=nmax {
            by_class[q] += part[q];
            induced[q] += index * rep[q];
        }
    }
    let rows = (0..=nmax)
        .map(|q| {
            let columns = alloc::vec![whole[q], by_class[q], induced[q]];
            DegreeComparison { degree: q, holds: all_equal(&columns), columns }
        })
        .collect();
    Ok(ComparisonReport { field: c.field(), max_degree: nmax, rows })
}

/// `φ: H^0(C, M_[g]) -> Hom_{kZ(g)}(kG, H^0(C, M.g))`, `φ(a)(s) = proj_g(s·a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiReport {
    pub element: usize,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub rank: usize,
    pub bijective: bool,
    pub linear: bool,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.linear
    }
}

pub fn phi_check(c: &KCategory, sp: &SmashProduct, m: &EquivariantBimodule, g: usize) -> Result<PhiReport> {
    let group = sp.action.group();
    if g >= group.order() {
        return Err(Error::InvalidInput(alloc::format!("unknown group element {g}")));
    }
    let field = c.field();
    let class = group.conjugacy_classes().into_iter().find(|cl| cl.contains(&g)).expect("every element has a class");
    let sb = smash_bimodule(c, sp, m)?;
    let whole = class_component(c, &sb, &class)?;
    let part = g_component(c, &sb, g)?;
    let keep_class = sb.elements_of_degrees(&class);
    let keep_g = sb.elements_of_degrees(&[g]);
    let cx_a = CochainComplex::normalized(c, &whole.bimodule, 0)?;
    let a = cx_a.classes(0)?;
    let conj_a = conjugation_action(&cx_a, &a, c, &whole)?;
    let cx_b = CochainComplex::normalized(c, &part.bimodule, 0)?;
    let b = cx_b.classes(0)?;
    let conj_b = conjugation_action(&cx_b, &b, c, &part)?;
    let (_, embedding) = group.subgroup(&group.centralizer(g))?;
    let co = coinduce(group, &embedding, &conj_b);
    let reps = group.right_coset_reps(&embedding);
    // degree-zero cochain of M_[g] -> its degree-g part as a cochain of M.g
    let project = |v: &SparseVec| -> SparseVec {
        let mut entries = Vec::new();
        for (coord, x) in v.iter() {
            let (obj, pos) = cx_a.locate(0, coord);
            let sb_id = keep_class[whole.bimodule.space(obj, obj).start + pos];
            if let Ok(k) = keep_g.binary_search(&sb_id) {
                let local = k - part.bimodule.space(obj, obj).start;
                entries.push((cx_b.coordinate(0, obj, local), x.clone()));
            }
        }
        SparseVec::from_entries(entries)
    };
    let mut cols = Vec::with_capacity(a.dim());
    for z in a.representatives() {
        let mut col = SparseVec::new();
        for (i, &s) in reps.iter().enumerate() {
            let moved = conjugate_cochain(&cx_a, c, &whole, s, 0, z);
            let value = b.classify(&project(&moved))?;
            col.add_scaled(&field.one(), &value.map_indices(|k| i * b.dim() + k));
        }
        cols.push(col);
    }
    let phi = SparseMatrix::from_columns(field, co.dim, &cols);
    let r = rank(&phi);
    let bijective = a.dim() == co.dim && r == co.dim;
    let linear = (0..group.order()).all(|k| phi.mul(&conj_a.matrices[k]) == co.matrices[k].mul(&phi));
    Ok(PhiReport { element: g, domain_dim: a.dim(), codomain_dim: co.dim, rank: r, bijective, linear })
}

/// `dim H^p(G, Hom_{kZ}(kG, V))` against `dim H^p(Z, V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapiroReport {
    pub coinduced: Vec<usize>,
    pub restricted: Vec<usize>,
}

impl ShapiroReport {
    pub fn passed(&self) -> bool {
        self.coinduced == self.restricted
    }
}

pub fn shapiro_check(group: &FiniteGroup, embedding: &[usize], v: &GModule, pmax: usize) -> ShapiroReport {
    let co = coinduce(group, embedding, v);
    ShapiroReport { coinduced: group_cohomology(&co, pmax), restricted: group_cohomology(v, pmax) }
}

/// [`shapiro_check`] for `V = H^q(C, M.g)` over `Z(g)`, one report per
/// conjugacy class representative `g`.
pub fn shapiro_components(
    c: &KCategory,
    sp: &SmashProduct,
    m: &EquivariantBimodule,
    q: usize,
    pmax: usize,
) -> Result<Vec<(usize, ShapiroReport)>> {
    let group = sp.action.group();
    let sb = smash_bimodule(c, sp, m)?;
    let mut out = Vec::new();
    for class in group.conjugacy_classes() {
        let g = class[0];
        let part = g_component(c, &sb, g)?;
        let cx = CochainComplex::normalized(c, &part.bimodule, q)?;
        let v = conjugation_action(&cx, &cx.classes(q)?, c, &part)?;
        let (_, embedding) = group.subgroup(&group.centralizer(g))?;
        out.push((g, shapiro_check(group, &embedding, &v, pmax)));
    }
    Ok(out)
}

/// `dims[p][q] = dim H^p(G, H^q(C, M))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2Page {
    pub field: FieldSpec,
    pub pmax: usize,
    pub qmax: usize,
    pub dims: Vec<Vec<usize>>,
}

impl E2Page {
    /// `Σ_{p+q=n} E_2^{p,q}`, using only entries inside the page.
    pub fn total(&self, n: usize) -> usize {
        (0..=n.min(self.pmax)).filter(|&p| n - p <= self.qmax).map(|p| self.dims[p][n - p]).sum()
    }
}

pub fn e2_page(c: &KCategory, m: &EquivariantBimodule, pmax: usize, qmax: usize) -> Result<E2Page> {
    let cx = CochainComplex::normalized(c, &m.bimodule, qmax)?;
    let mut dims = alloc::vec![alloc::vec![0; qmax + 1]; pmax + 1];
    for q in 0..=qmax {
        let classes = cx.classes(q)?;
        let v = conjugation_action(&cx, &classes, c, m)?;
        for (p, d) in group_cohomology(&v, pmax).into_iter().enumerate() {
            dims[p][q] = d;
        }
    }
    Ok(E2Page { field: c.field(), pmax, qmax, dims })
}

/// Per degree: `dim H^n(D, N)` and `dim H^n(C, N)^G`, which agree when the
/// characteristic does not divide `|G|`.
pub fn collapse_check(c: &KCategory, sp: &SmashProduct, n: &Bimodule, nmax: usize) -> Result<ComparisonReport> {
    let order = sp.action.group().order();
    let p = c.field().characteristic();
    if p != 0 && order as u64 % p == 0 {
        return Err(Error::CharDividesOrder { characteristic: p, order });
    }
    let eq = transport(sp, c, n);
    let lhs = CochainComplex::normalized(&sp.category, n, nmax)?.cohomology().dims;
    let cx = CochainComplex::normalized(c, &eq.bimodule, nmax)?;
    let mut rows = Vec::with_capacity(nmax + 1);
    for q in 0..=nmax {
        let classes = cx.classes(q)?;
        let invariant = conjugation_action(&cx, &classes, c, &eq)?.invariants().len();
        let columns = alloc::vec![lhs[q], invariant];
        rows.push(DegreeComparison { degree: q, holds: all_equal(&columns), columns });
    }
    Ok(ComparisonReport { field: c.field(), max_degree: nmax, rows })
}

/// Per degree: `dim H^n(D, N)` and `Σ_{p+q=n} E_2^{p,q}`, the first at most the second.
pub fn bound_check(c: &KCategory, sp: &SmashProduct, n: &Bimodule, nmax: usize) -> Result<ComparisonReport> {
    let eq = transport(sp, c, n);
    let lhs = CochainComplex::normalized(&sp.category, n, nmax)?.cohomology().dims;
    let page = e2_page(c, &eq, nmax, nmax)?;
    let rows = (0..=nmax)
        .map(|q| {
            let bound = page.total(q);
            DegreeComparison { degree: q, columns: alloc::vec![lhs[q], bound], holds: lhs[q] <= bound }
        })
        .collect();
    Ok(ComparisonReport { field: c.field(), max_degree: nmax, rows })
}
