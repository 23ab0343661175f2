use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::group::FiniteGroup;
use crate::linalg::{SparseMatrix, SparseVec, kernel_basis, rank};
use crate::validation::Validation;

/// Whether `matrices[g]` describes `v ↦ g·v` or `v ↦ v·g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A finite-dimensional representation, one matrix per group element acting
/// on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    pub group: FiniteGroup,
    pub field: FieldSpec,
    pub dim: usize,
    pub side: Side,
    pub matrices: Vec<SparseMatrix>,
}

impl GModule {
    pub fn trivial(group: FiniteGroup, field: FieldSpec, dim: usize) -> Self {
        let matrices = alloc::vec![SparseMatrix::identity(field, dim); group.order()];
        GModule { group, field, dim, side: Side::Left, matrices }
    }

    pub fn new(group: FiniteGroup, field: FieldSpec, dim: usize, side: Side, matrices: Vec<SparseMatrix>) -> Result<Self> {
        let m = GModule { group, field, dim, side, matrices };
        let v = m.validate();
        if v.passed() { Ok(m) } else { Err(Error::InvalidAction(v.failures.join("; "))) }
    }

    /// The regular representation `kG`, with `g` acting by left multiplication.
    pub fn regular(group: FiniteGroup, field: FieldSpec) -> Self {
        let n = group.order();
        let matrices = (0..n)
            .map(|g| SparseMatrix::from_triplets(field, n, n, (0..n).map(|h| (group.mul(g, h), h, field.one()))))
            .collect();
        GModule { group, field, dim: n, side: Side::Left, matrices }
    }

    pub fn validate(&self) -> Validation {
        let mut v = Validation::new();
        let g = &self.group;
        if self.matrices.len() != g.order() {
            v.fail(format!("{} matrices for a group of order {}", self.matrices.len(), g.order()));
            return v;
        }
        if self.matrices.iter().any(|m| m.rows() != self.dim || m.cols() != self.dim) {
            v.fail("matrix of the wrong size".into());
            return v;
        }
        if self.matrices[0] != SparseMatrix::identity(self.field, self.dim) {
            v.fail("the unit does not act as the identity".into());
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                // left: ρ(a)ρ(b) = ρ(ab); right: (v·a)·b = ρ(b)ρ(a)v = ρ(ab)v
                let product = match self.side {
                    Side::Left => self.matrices[a].mul(&self.matrices[b]),
                    Side::Right => self.matrices[b].mul(&self.matrices[a]),
                };
                if product != self.matrices[ab] {
                    v.fail(format!("group law fails for {} and {}", g.name(a), g.name(b)));
                }
            }
        }
        v
    }

    /// The same representation as a left module, `g·v = v·g^{-1}`.
    pub fn to_left(&self) -> GModule {
        match self.side {
            Side::Left => self.clone(),
            Side::Right => GModule {
                matrices: (0..self.group.order()).map(|g| self.matrices[self.group.inv(g)].clone()).collect(),
                side: Side::Left,
                ..self.clone()
            },
        }
    }

    /// Left matrix of `g`.
    pub fn left(&self, g: usize) -> SparseMatrix {
        match self.side {
            Side::Left => self.matrices[g].clone(),
            Side::Right => self.matrices[self.group.inv(g)].clone(),
        }
    }

    /// A basis of the vectors fixed by every group element.
    pub fn invariants(&self) -> Vec<SparseVec> {
        let id = SparseMatrix::identity(self.field, self.dim);
        let mut rows = Vec::new();
        for m in &self.matrices {
            rows.extend(m.sub(&id).row_vectors().iter().cloned());
        }
        kernel_basis(&SparseMatrix::from_rows(self.field, self.dim, rows)).into_basis()
    }

    /// The module restricted to the subgroup with the given embedding.
    pub fn restrict(&self, sub: FiniteGroup, embedding: &[usize]) -> GModule {
        GModule { group: sub, matrices: embedding.iter().map(|&g| self.matrices[g].clone()).collect(), ..self.clone() }
    }
}

/// Index of a tuple of non-unit elements, written in base `|G| - 1`.
fn tuple_index(t: &[usize], base: usize) -> usize {
    t.iter().fold(0, |acc, &g| acc * base + (g - 1))
}

fn tuples(order: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = alloc::vec![Vec::new()];
    for _ in 0..p {
        let mut next = Vec::with_capacity(out.len() * (order - 1));
        for t in &out {
            for g in 1..order {
                let mut u = t.clone();
                u.push(g);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// `d^p` of the normalized inhomogeneous cochains `(G \ 1)^p -> V`.
fn bar_differential(v: &GModule, p: usize) -> SparseMatrix {
    let g = &v.group;
    let field = v.field;
    let base = g.order() - 1;
    let dim = v.dim;
    let lefts: Vec<SparseMatrix> = (0..g.order()).map(|s| v.left(s)).collect();
    let rows_count = base.pow(p as u32 + 1) * dim;
    let cols_count = base.pow(p as u32) * dim;
    let mut triplets = Vec::new();
    for t in tuples(g.order(), p + 1) {
        let row = tuple_index(&t, base) * dim;
        // g_1 · f(g_2, ..)
        let col = tuple_index(&t[1..], base) * dim;
        for (i, j, a) in lefts[t[0]].entries() {
            triplets.push((row + i, col + j, a.clone()));
        }
        for i in 1..=p {
            let merged = g.mul(t[i - 1], t[i]);
            if merged == 0 {
                continue;
            }
            let mut face = Vec::with_capacity(p);
            face.extend_from_slice(&t[..i - 1]);
            face.push(merged);
            face.extend_from_slice(&t[i + 1..]);
            let col = tuple_index(&face, base) * dim;
            let s = if i % 2 == 0 { field.one() } else { -field.one() };
            for k in 0..dim {
                triplets.push((row + k, col + k, s.clone()));
            }
        }
        let col = tuple_index(&t[..p], base) * dim;
        let s = if (p + 1) % 2 == 0 { field.one() } else { -field.one() };
        for k in 0..dim {
            triplets.push((row + k, col + k, s.clone()));
        }
    }
    SparseMatrix::from_triplets(field, rows_count, cols_count, triplets)
}

/// `dim H^p(G, V)` for `p <= pmax`.
pub fn group_cohomology(v: &GModule, pmax: usize) -> Vec<usize> {
    if v.group.order() == 1 {
        let mut dims = alloc::vec![0; pmax + 1];
        dims[0] = v.dim;
        return dims;
    }
    let base = v.group.order() - 1;
    let ranks: Vec<usize> = (0..=pmax).map(|p| rank(&bar_differential(v, p))).collect();
    (0..=pmax)
        .map(|p| base.pow(p as u32) * v.dim - ranks[p] - if p == 0 { 0 } else { ranks[p - 1] })
        .collect()
}

/// `Hom_{kH}(kG, V)` for a left `H`-module `V` of the subgroup with `embedding`,
/// with `(k·F)(x) = F(xk)`. Coordinates are the values on right coset
/// representatives, the unit first.
pub fn coinduce(group: &FiniteGroup, embedding: &[usize], v: &GModule) -> GModule {
    let field = v.field;
    let reps = group.right_coset_reps(embedding);
    let dim = reps.len() * v.dim;
    let sub_index = |g: usize| embedding.iter().position(|&e| e == g);
    let mut matrices = Vec::with_capacity(group.order());
    for k in 0..group.order() {
        let mut triplets = Vec::new();
        for (i, &si) in reps.iter().enumerate() {
            // s_i k = z s_j
            let sk = group.mul(si, k);
            let (j, z) = reps
                .iter()
                .enumerate()
                .find_map(|(j, &sj)| sub_index(group.mul(sk, group.inv(sj))).map(|z| (j, z)))
                .expect("right cosets cover the group");
            for (a, b, c) in v.left(z).entries() {
                triplets.push((i * v.dim + a, j * v.dim + b, c.clone()));
            }
        }
        matrices.push(SparseMatrix::from_triplets(field, dim, dim, triplets));
    }
    GModule { group: group.clone(), field, dim, side: Side::Left, matrices }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_cohomology() {
        let f2 = FieldSpec::prime(2).unwrap();
        let q = FieldSpec::Rationals;
        let c2 = FiniteGroup::cyclic(2);
        assert_eq!(group_cohomology(&GModule::trivial(c2.clone(), f2, 1), 3), [1, 1, 1, 1]);
        assert_eq!(group_cohomology(&GModule::trivial(c2.clone(), q, 1), 3), [1, 0, 0, 0]);
        let c3 = FiniteGroup::cyclic(3);
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(group_cohomology(&GModule::trivial(c3.clone(), f3, 1), 3), [1, 1, 1, 1]);
        assert_eq!(group_cohomology(&GModule::trivial(c3, f2, 1), 2), [1, 0, 0]);
        // kG is coinduced from the trivial group, so its higher cohomology vanishes
        assert_eq!(group_cohomology(&GModule::regular(c2, f2), 3), [1, 0, 0, 0]);
    }

    #[test]
    fn symmetric_group_cohomology() {
        let s3 = FiniteGroup::symmetric(3);
        let f2 = FieldSpec::prime(2).unwrap();
        let f3 = FieldSpec::prime(3).unwrap();
        // H^*(S3, F2) = H^*(C2, F2), H^*(S3, F3) = (1, 0, 0, 1, 1, ...)
        assert_eq!(group_cohomology(&GModule::trivial(s3.clone(), f2, 1), 2), [1, 1, 1]);
        assert_eq!(group_cohomology(&GModule::trivial(s3, f3, 1), 3), [1, 0, 0, 1]);
    }

    #[test]
    fn right_modules_convert() {
        let s3 = FiniteGroup::symmetric(3);
        let q = FieldSpec::Rationals;
        let left = GModule::regular(s3.clone(), q);
        assert!(left.validate().passed());
        let right = GModule { side: Side::Right, matrices: (0..6).map(|g| left.matrices[s3.inv(g)].clone()).collect(), ..left.clone() };
        assert!(right.validate().passed());
        assert_eq!(right.to_left(), left);
        let wrong = GModule { side: Side::Right, ..left.clone() };
        assert!(!wrong.validate().passed());
    }

    #[test]
    fn shapiro_on_small_cases() {
        let s3 = FiniteGroup::symmetric(3);
        let f2 = FieldSpec::prime(2).unwrap();
        let t = s3.conjugacy_classes().into_iter().find(|c| c.len() == 3).unwrap()[0];
        let (z, emb) = s3.subgroup(&s3.centralizer(t)).unwrap();
        let v = GModule::trivial(z.clone(), f2, 1);
        let co = coinduce(&s3, &emb, &v);
        assert!(co.validate().passed());
        assert_eq!(co.dim, 3);
        assert_eq!(group_cohomology(&co, 2), group_cohomology(&v, 2));
        let (one, emb1) = s3.subgroup(&[0]).unwrap();
        let free = coinduce(&s3, &emb1, &GModule::trivial(one, f2, 1));
        assert_eq!(group_cohomology(&free, 2), [1, 0, 0]);
        assert_eq!(free.invariants().len(), 1);
    }
}
