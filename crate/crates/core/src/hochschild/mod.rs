//! Hochschild-Mitchell cochain and chain complexes of a category with
//! coefficients in a bimodule, their (co)homology and class representatives.
//!
//! A chain of degree `n` is a composable sequence `(a_1, ..., a_n)` of basis
//! morphisms with `a_n: x_0 -> x_1` applied first and `a_1: x_{n-1} -> x_n`
//! last. A cochain assigns to it a value in `M(x_0 -> x_n)`; the coboundary is
//!
//! ```text
//! (df)(a_1..a_{n+1}) = a_1·f(a_2..a_{n+1})
//!                    + Σ_{i=1..n} (-1)^i f(.., a_i∘a_{i+1}, ..)
//!                    + (-1)^{n+1} f(a_1..a_n)·a_{n+1}
//! ```
//!
//! The normalized variant only uses non-identity basis morphisms and drops
//! identity components of inner composites.

mod center;
mod cup;
mod oracle;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::kcat::{Bimodule, KCategory};
use crate::linalg::{Echelon, SparseMatrix, SparseVec, kernel_basis, rank};

pub use center::{Center, center};
pub use cup::cup_product;
pub use oracle::order_complex_cohomology;

/// Default cap on the dimension of any single cochain space.
pub const DEFAULT_BUDGET: usize = 400_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Full,
    Normalized,
}

impl Variant {
    pub fn label(self) -> &'static str {
        match self {
            Variant::Full => "full",
            Variant::Normalized => "normalized",
        }
    }
}

/// A composable sequence of basis morphisms, `morphs[0]` applied last.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Chain {
    pub morphs: Vec<usize>,
    pub source: usize,
    pub target: usize,
}

/// All chains of each degree, with lookup by `(source, morphs)`.
#[derive(Clone, Debug)]
pub struct Nerve {
    variant: Variant,
    chains: Vec<Vec<Chain>>,
    index: Vec<BTreeMap<(usize, Vec<usize>), usize>>,
}

impl Nerve {
    /// Chains of degrees `0..=top`.
    pub fn build(c: &KCategory, variant: Variant, top: usize, budget: usize) -> Result<Self> {
        let allowed: Vec<usize> = (0..c.total_dim())
            .filter(|&f| variant == Variant::Full || !c.is_identity(f))
            .collect();
        let mut into: Vec<Vec<usize>> = alloc::vec![Vec::new(); c.num_objects()];
        for &f in &allowed {
            into[c.morphism(f).source].push(f);
        }
        let mut chains: Vec<Vec<Chain>> = alloc::vec![(0..c.num_objects())
            .map(|x| Chain { morphs: Vec::new(), source: x, target: x })
            .collect()];
        for degree in 1..=top {
            let mut next = Vec::new();
            for ch in &chains[degree - 1] {
                for &f in &into[ch.target] {
                    let mut morphs = Vec::with_capacity(degree);
                    morphs.push(f);
                    morphs.extend_from_slice(&ch.morphs);
                    next.push(Chain { morphs, source: ch.source, target: c.morphism(f).target });
                }
                if next.len() > budget {
                    return Err(Error::DimensionOverflow { degree, dim: next.len(), budget });
                }
            }
            chains.push(next);
        }
        let index = chains
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, ch)| ((ch.source, ch.morphs.clone()), i)).collect())
            .collect();
        Ok(Nerve { variant, chains, index })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn top(&self) -> usize {
        self.chains.len() - 1
    }

    pub fn chains(&self, degree: usize) -> &[Chain] {
        &self.chains[degree]
    }

    pub fn lookup(&self, degree: usize, source: usize, morphs: &[usize]) -> Option<usize> {
        self.index[degree].get(&(source, morphs.to_vec())).copied()
    }
}

/// Where the coordinates of one chain start, and how many there are.
#[derive(Clone, Debug)]
struct Layout {
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

impl Layout {
    fn new<F: Fn(&Chain) -> usize>(nerve: &Nerve, width: F, budget: usize) -> Result<Self> {
        let mut offsets = Vec::new();
        let mut dims = Vec::new();
        for degree in 0..=nerve.top() {
            let mut off = Vec::with_capacity(nerve.chains(degree).len());
            let mut total = 0;
            for ch in nerve.chains(degree) {
                off.push(total);
                total += width(ch);
            }
            if total > budget {
                return Err(Error::DimensionOverflow { degree, dim: total, budget });
            }
            offsets.push(off);
            dims.push(total);
        }
        Ok(Layout { offsets, dims })
    }
}

fn sign(i: usize) -> i64 {
    if i % 2 == 0 { 1 } else { -1 }
}

/// `C^n(c, M)` for `n <= max_degree + 1` with differentials `d^0..d^{max_degree}`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    field: FieldSpec,
    max_degree: usize,
    nerve: Nerve,
    layout: Layout,
    diffs: Vec<SparseMatrix>,
}

impl CochainComplex {
    pub fn build(c: &KCategory, m: &Bimodule, variant: Variant, max_degree: usize, budget: usize) -> Result<Self> {
        let nerve = Nerve::build(c, variant, max_degree + 1, budget)?;
        let layout = Layout::new(&nerve, |ch| m.space_dim(ch.source, ch.target), budget)?;
        let field = c.field();
        let mut diffs = Vec::with_capacity(max_degree + 1);
        for n in 0..=max_degree {
            diffs.push(coboundary(c, m, &nerve, &layout, n));
        }
        for n in 0..max_degree {
            let dd = diffs[n + 1].mul(&diffs[n]);
            assert!(dd.is_zero(), "d^{} d^{} is not zero", n + 1, n);
        }
        Ok(CochainComplex { field, max_degree, nerve, layout, diffs })
    }

    pub fn normalized(c: &KCategory, m: &Bimodule, max_degree: usize) -> Result<Self> {
        Self::build(c, m, Variant::Normalized, max_degree, DEFAULT_BUDGET)
    }

    pub fn full(c: &KCategory, m: &Bimodule, max_degree: usize) -> Result<Self> {
        Self::build(c, m, Variant::Full, max_degree, DEFAULT_BUDGET)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn variant(&self) -> Variant {
        self.nerve.variant
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn nerve(&self) -> &Nerve {
        &self.nerve
    }

    /// Dimension of `C^n`, for `n <= max_degree + 1`.
    pub fn dim(&self, n: usize) -> usize {
        self.layout.dims[n]
    }

    pub fn dims(&self) -> &[usize] {
        &self.layout.dims
    }

    /// `d^n: C^n -> C^{n+1}` (rows index `C^{n+1}`).
    pub fn differential(&self, n: usize) -> &SparseMatrix {
        &self.diffs[n]
    }

    /// Coordinate of the value basis element `pos` at chain `chain` of degree `n`.
    pub fn coordinate(&self, n: usize, chain: usize, pos: usize) -> usize {
        self.layout.offsets[n][chain] + pos
    }

    /// Chain index and value position of a coordinate.
    pub fn locate(&self, n: usize, coord: usize) -> (usize, usize) {
        let off = &self.layout.offsets[n];
        // The last chain starting at or before `coord` is the one holding it,
        // since empty chains share their successor's offset.
        let k = off.partition_point(|&o| o <= coord) - 1;
        (k, coord - off[k])
    }

    /// Splits a cochain into its values, keyed by chain index.
    pub fn values(&self, n: usize, v: &SparseVec) -> BTreeMap<usize, SparseVec> {
        let mut out: BTreeMap<usize, Vec<(usize, crate::field::Scalar)>> = BTreeMap::new();
        for (coord, a) in v.iter() {
            let (ch, pos) = self.locate(n, coord);
            out.entry(ch).or_default().push((pos, a.clone()));
        }
        out.into_iter().map(|(k, e)| (k, SparseVec::from_entries(e))).collect()
    }

    pub fn apply(&self, n: usize, v: &SparseVec) -> SparseVec {
        self.diffs[n].mul_vec(v)
    }

    pub fn is_cocycle(&self, n: usize, v: &SparseVec) -> bool {
        n > self.max_degree || self.apply(n, v).is_zero()
    }

    /// Dimensions of `H^n` for `n <= max_degree`.
    pub fn cohomology(&self) -> CohomologyResult {
        let ranks: Vec<usize> = self.diffs.iter().map(rank).collect();
        let dims = (0..=self.max_degree)
            .map(|n| self.dim(n) - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] })
            .collect();
        CohomologyResult { field: self.field, variant: self.variant(), max_degree: self.max_degree, dims }
    }

    /// A basis of `H^n` by representative cocycles, with a classifier.
    pub fn classes(&self, n: usize) -> Result<ClassSpace> {
        assert!(n <= self.max_degree, "degree above the truncation");
        let boundaries: Vec<SparseVec> =
            if n == 0 { Vec::new() } else { self.diffs[n - 1].columns() };
        let cocycles = kernel_basis(&self.diffs[n]);
        ClassSpace::new(self.field, n, self.dim(n), boundaries, cocycles.basis())
    }
}

fn coboundary(c: &KCategory, m: &Bimodule, nerve: &Nerve, layout: &Layout, n: usize) -> SparseMatrix {
    let field = c.field();
    let normalized = nerve.variant == Variant::Normalized;
    let mut triplets = Vec::new();
    for (ri, ch) in nerve.chains(n + 1).iter().enumerate() {
        let (x0, xt) = (ch.source, ch.target);
        let rows = m.space(x0, xt);
        if rows.is_empty() {
            continue;
        }
        let row_off = layout.offsets[n + 1][ri];
        let a = &ch.morphs;
        // a_1 · f(a_2 .. a_{n+1})
        {
            let a1 = a[0];
            let xn = c.morphism(a1).source;
            let k = nerve.lookup(n, x0, &a[1..]).expect("face chain exists");
            let col_off = layout.offsets[n][k];
            for (j, e) in m.space(x0, xn).enumerate() {
                if let Some(v) = m.left_basis(a1, e) {
                    for (i, s) in v.iter() {
                        triplets.push((row_off + i, col_off + j, s.clone()));
                    }
                }
            }
        }
        // inner faces
        for i in 1..=n {
            let (f, g) = (a[i - 1], a[i]);
            let Some(comp) = c.compose_basis(f, g) else { continue };
            let hom = c.hom(c.morphism(g).source, c.morphism(f).target);
            let s = field.from_i64(sign(i));
            for (pos, coeff) in comp.iter() {
                let b = hom.start + pos;
                if normalized && c.is_identity(b) {
                    continue;
                }
                let mut face = Vec::with_capacity(n);
                face.extend_from_slice(&a[..i - 1]);
                face.push(b);
                face.extend_from_slice(&a[i + 1..]);
                let k = nerve.lookup(n, x0, &face).expect("face chain exists");
                let col_off = layout.offsets[n][k];
                let w = &s * coeff;
                for j in 0..rows.len() {
                    triplets.push((row_off + j, col_off + j, w.clone()));
                }
            }
        }
        // (-1)^{n+1} f(a_1 .. a_n) · a_{n+1}
        {
            let last = a[n];
            let x1 = c.morphism(last).target;
            let k = nerve.lookup(n, x1, &a[..n]).expect("face chain exists");
            let col_off = layout.offsets[n][k];
            let s = field.from_i64(sign(n + 1));
            for (j, e) in m.space(x1, xt).enumerate() {
                if let Some(v) = m.right_basis(e, last) {
                    for (i, coeff) in v.iter() {
                        triplets.push((row_off + i, col_off + j, &s * coeff));
                    }
                }
            }
        }
    }
    SparseMatrix::from_triplets(field, layout.dims[n + 1], layout.dims[n], triplets)
}

/// `C_n(c, M)` for `n <= max_degree + 1` with boundaries `d_1..d_{max_degree+1}`.
/// A chain `(a_1..a_n)` from `x_0` to `x_n` carries a coefficient in
/// `M(x_n -> x_0)`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    field: FieldSpec,
    max_degree: usize,
    variant: Variant,
    dims: Vec<usize>,
    /// `boundaries[n-1] = d_n: C_n -> C_{n-1}`.
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn build(c: &KCategory, m: &Bimodule, variant: Variant, max_degree: usize, budget: usize) -> Result<Self> {
        let nerve = Nerve::build(c, variant, max_degree + 1, budget)?;
        let layout = Layout::new(&nerve, |ch| m.space_dim(ch.target, ch.source), budget)?;
        let mut boundaries = Vec::new();
        for n in 1..=max_degree + 1 {
            boundaries.push(boundary(c, m, &nerve, &layout, n));
        }
        for n in 1..=max_degree {
            let dd = boundaries[n - 1].mul(&boundaries[n]);
            assert!(dd.is_zero(), "d_{} d_{} is not zero", n, n + 1);
        }
        Ok(ChainComplex { field: c.field(), max_degree, variant, dims: layout.dims, boundaries })
    }

    pub fn normalized(c: &KCategory, m: &Bimodule, max_degree: usize) -> Result<Self> {
        Self::build(c, m, Variant::Normalized, max_degree, DEFAULT_BUDGET)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundary(&self, n: usize) -> &SparseMatrix {
        &self.boundaries[n - 1]
    }

    /// Dimensions of `H_n` for `n <= max_degree`.
    pub fn homology(&self) -> CohomologyResult {
        let ranks: Vec<usize> = self.boundaries.iter().map(rank).collect();
        let dims = (0..=self.max_degree)
            .map(|n| self.dims[n] - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] })
            .collect();
        CohomologyResult { field: self.field, variant: self.variant, max_degree: self.max_degree, dims }
    }
}

fn boundary(c: &KCategory, m: &Bimodule, nerve: &Nerve, layout: &Layout, n: usize) -> SparseMatrix {
    let field = c.field();
    let normalized = nerve.variant == Variant::Normalized;
    let mut triplets = Vec::new();
    for (ci, ch) in nerve.chains(n).iter().enumerate() {
        let (x0, xn) = (ch.source, ch.target);
        let cols = m.space(xn, x0);
        if cols.is_empty() {
            continue;
        }
        let col_off = layout.offsets[n][ci];
        let a = &ch.morphs;
        // m·a_1 ⊗ (a_2 .. a_n)
        {
            let a1 = a[0];
            let k = nerve.lookup(n - 1, x0, &a[1..]).expect("face chain exists");
            let row_off = layout.offsets[n - 1][k];
            for (j, e) in cols.clone().enumerate() {
                if let Some(v) = m.right_basis(e, a1) {
                    for (i, s) in v.iter() {
                        triplets.push((row_off + i, col_off + j, s.clone()));
                    }
                }
            }
        }
        for i in 1..n {
            let (f, g) = (a[i - 1], a[i]);
            let Some(comp) = c.compose_basis(f, g) else { continue };
            let hom = c.hom(c.morphism(g).source, c.morphism(f).target);
            let s = field.from_i64(sign(i));
            for (pos, coeff) in comp.iter() {
                let b = hom.start + pos;
                if normalized && c.is_identity(b) {
                    continue;
                }
                let mut face = Vec::with_capacity(n - 1);
                face.extend_from_slice(&a[..i - 1]);
                face.push(b);
                face.extend_from_slice(&a[i + 1..]);
                let k = nerve.lookup(n - 1, x0, &face).expect("face chain exists");
                let row_off = layout.offsets[n - 1][k];
                let w = &s * coeff;
                for j in 0..cols.len() {
                    triplets.push((row_off + j, col_off + j, w.clone()));
                }
            }
        }
        // (-1)^n a_n·m ⊗ (a_1 .. a_{n-1})
        {
            let an = a[n - 1];
            let x1 = c.morphism(an).target;
            let k = nerve.lookup(n - 1, x1, &a[..n - 1]).expect("face chain exists");
            let row_off = layout.offsets[n - 1][k];
            let s = field.from_i64(sign(n));
            for (j, e) in cols.clone().enumerate() {
                if let Some(v) = m.left_basis(an, e) {
                    for (i, coeff) in v.iter() {
                        triplets.push((row_off + i, col_off + j, &s * coeff));
                    }
                }
            }
        }
    }
    SparseMatrix::from_triplets(field, layout.dims[n - 1], layout.dims[n], triplets)
}

/// Per-degree (co)homology dimensions and the regime they were computed in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyResult {
    pub field: FieldSpec,
    pub variant: Variant,
    pub max_degree: usize,
    pub dims: Vec<usize>,
}

/// `H^n` as representatives modulo coboundaries.
#[derive(Clone, Debug)]
pub struct ClassSpace {
    degree: usize,
    ambient: usize,
    reps: Vec<SparseVec>,
    echelon: Echelon,
    boundary_rank: usize,
}

impl ClassSpace {
    /// Builds representatives from coboundaries and a basis of cocycles.
    pub fn new(
        field: FieldSpec,
        degree: usize,
        ambient: usize,
        boundaries: Vec<SparseVec>,
        cocycles: &[SparseVec],
    ) -> Result<Self> {
        let mut echelon = Echelon::new(field, ambient);
        for b in &boundaries {
            echelon.insert_tagged(b, SparseVec::new());
        }
        let boundary_rank = echelon.rank();
        let mut reps = Vec::new();
        for z in cocycles {
            if echelon.insert_tagged(z, SparseVec::unit(reps.len(), field)).is_some() {
                reps.push(z.clone());
            }
        }
        if echelon.rank() != cocycles.len() {
            // Some coboundary is not a cocycle.
            return Err(Error::InclusionViolation { index: 0 });
        }
        Ok(ClassSpace { degree, ambient, reps, echelon, boundary_rank })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn boundary_rank(&self) -> usize {
        self.boundary_rank
    }

    pub fn representatives(&self) -> &[SparseVec] {
        &self.reps
    }

    /// Coordinates of the class of `z`; fails if `z` is not a cocycle.
    pub fn classify(&self, z: &SparseVec) -> Result<SparseVec> {
        let (residual, combo) = self.echelon.reduce_tagged(z);
        if residual.is_zero() {
            Ok(combo)
        } else {
            Err(Error::NotACocycle { degree: self.degree })
        }
    }

    pub fn is_coboundary(&self, z: &SparseVec) -> Result<bool> {
        Ok(self.classify(z)?.is_zero())
    }
}

/// `HH^n(c)` dims of the regular bimodule, normalized complex.
pub fn hh_dims(c: &KCategory, max_degree: usize) -> Result<Vec<usize>> {
    Ok(CochainComplex::normalized(c, &Bimodule::regular(c), max_degree)?.cohomology().dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kcat::corpus::Family;
    use crate::kcat::{CategoryBuilder, expand_with_isomorphic_object};

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn one() -> KCategory {
        CategoryBuilder::new(q()).object("x").build().unwrap()
    }

    #[test]
    fn ground_field() {
        let c = one();
        let m = Bimodule::regular(&c);
        let full = CochainComplex::full(&c, &m, 2).unwrap();
        assert_eq!(&full.dims()[..3], &[1, 1, 1]);
        assert_eq!(full.cohomology().dims, [1, 0, 0]);
        let norm = CochainComplex::normalized(&c, &m, 2).unwrap();
        assert_eq!(&norm.dims()[..3], &[1, 0, 0]);
        assert_eq!(norm.cohomology().dims, [1, 0, 0]);
    }

    #[test]
    fn two_chain() {
        let c = Family::Chain { n: 2 }.generate(q()).unwrap();
        let m = Bimodule::regular(&c);
        let full = CochainComplex::full(&c, &m, 3).unwrap();
        assert_eq!(full.dim(0), 2);
        assert_eq!(full.cohomology().dims, [1, 0, 0, 0]);
        assert_eq!(hh_dims(&c, 3).unwrap(), [1, 0, 0, 0]);
        let zero = CochainComplex::normalized(&c, &Bimodule::zero(&c), 2).unwrap();
        assert!(zero.dims().iter().all(|&d| d == 0));
    }

    #[test]
    fn three_chain_degree_one_space() {
        let c = Family::Chain { n: 3 }.generate(q()).unwrap();
        let cx = CochainComplex::normalized(&c, &Bimodule::regular(&c), 1).unwrap();
        assert_eq!(cx.nerve().chains(1).len(), 3);
        assert_eq!(cx.dim(1), 3);
    }

    #[test]
    fn crown_cohomology() {
        let c = Family::CrownIncidence { rows: 2, n: 3, extra: 0 }.generate(q()).unwrap();
        assert_eq!(hh_dims(&c, 3).unwrap(), [1, 1, 0, 0]);
    }

    #[test]
    fn homology_examples() {
        let c = one();
        let m = Bimodule::regular(&c);
        assert_eq!(ChainComplex::normalized(&c, &m, 2).unwrap().homology().dims, [1, 0, 0]);
        let full = ChainComplex::build(&c, &m, Variant::Full, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(full.homology().dims, [1, 0, 0]);
        let anti = Family::Antichain { n: 2 }.generate(q()).unwrap();
        let h = ChainComplex::normalized(&anti, &Bimodule::regular(&anti), 2).unwrap().homology();
        assert_eq!(h.dims, [2, 0, 0]);
        let z = ChainComplex::normalized(&anti, &Bimodule::zero(&anti), 2).unwrap().homology();
        assert_eq!(z.dims, [0, 0, 0]);
    }

    #[test]
    fn loop_algebra_matches_known_values() {
        // k[l]/(l^2) over Q: HH^n is 2-dimensional in degree 0 and 1-dimensional above.
        let mut b = CategoryBuilder::new(q());
        b.object("x").hom("x", "x", &["1", "l"], Some("1"));
        let c = b.build().unwrap();
        let m = Bimodule::regular(&c);
        let norm = CochainComplex::normalized(&c, &m, 3).unwrap().cohomology().dims;
        let full = CochainComplex::full(&c, &m, 3).unwrap().cohomology().dims;
        assert_eq!(norm, [2, 1, 1, 1]);
        assert_eq!(norm, full);
        // Over F2 the dual numbers have two-dimensional cohomology in every degree.
        let f2 = FieldSpec::prime(2).unwrap();
        let mut b = CategoryBuilder::new(f2);
        b.object("x").hom("x", "x", &["1", "l"], Some("1"));
        let c = b.build().unwrap();
        assert_eq!(hh_dims(&c, 3).unwrap(), [2, 2, 2, 2]);
    }

    #[test]
    fn expansion_keeps_dims() {
        let c = Family::CrownIncidence { rows: 2, n: 3, extra: 0 }.generate(q()).unwrap();
        let e = expand_with_isomorphic_object(&c, "00.00").unwrap().category;
        assert_eq!(hh_dims(&e, 2).unwrap(), hh_dims(&c, 2).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let c = Family::ULayered { n: 3, m: 2 }.generate(q()).unwrap();
        let err = CochainComplex::build(&c, &Bimodule::regular(&c), Variant::Full, 3, 100).unwrap_err();
        assert!(matches!(err, Error::DimensionOverflow { .. }));
    }

    #[test]
    fn classes_classify_their_representatives() {
        let c = Family::CrownIncidence { rows: 2, n: 3, extra: 0 }.generate(q()).unwrap();
        let cx = CochainComplex::normalized(&c, &Bimodule::regular(&c), 2).unwrap();
        let h1 = cx.classes(1).unwrap();
        assert_eq!(h1.dim(), 1);
        let r = h1.representatives()[0].clone();
        assert_eq!(h1.classify(&r).unwrap(), SparseVec::unit(0, q()));
        let b = cx.apply(0, &SparseVec::unit(0, q()));
        assert!(h1.is_coboundary(&b).unwrap());
        let shifted = r.add(&b, q());
        assert_eq!(h1.classify(&shifted).unwrap(), SparseVec::unit(0, q()));
    }
}
