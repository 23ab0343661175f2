use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Coinvariants, GradedCategory, coinvariants, strongly_graded_check};
use crate::error::{Error, Result};
use crate::kcat::KCategory;
use crate::linalg::{Echelon, SparseMatrix, SparseVec, solve};

/// `(D ⊗_C D)(source -> target)`: the sum over middle objects `z` of
/// `D(z -> target) ⊗ D(source -> z)`, modulo `(f∘c) ⊗ g - f ⊗ (c∘g)` for `c` in `C`.
#[derive(Clone, Debug)]
pub struct TensorQuotient {
    pub source: usize,
    pub target: usize,
    /// Start of the summand for each middle object.
    offsets: Vec<usize>,
    /// `dim D(source -> z)` for each `z`.
    right_dims: Vec<usize>,
    ambient: usize,
    relations: Echelon,
    /// Ambient columns that carry the quotient basis.
    free: Vec<usize>,
    /// `slot[col] = Some(k)` when `col = free[k]`.
    slot: Vec<Option<usize>>,
}

impl TensorQuotient {
    fn build(d: &KCategory, co: &Coinvariants, source: usize, target: usize) -> Self {
        let n = d.num_objects();
        let field = d.field();
        let mut offsets = Vec::with_capacity(n);
        let mut right_dims = Vec::with_capacity(n);
        let mut ambient = 0;
        for z in 0..n {
            offsets.push(ambient);
            right_dims.push(d.hom_dim(source, z));
            ambient += d.hom_dim(z, target) * d.hom_dim(source, z);
        }
        let mut q = TensorQuotient {
            source,
            target,
            offsets,
            right_dims,
            ambient,
            relations: Echelon::new(field, ambient),
            free: Vec::new(),
            slot: Vec::new(),
        };
        let c = &co.category;
        for z in 0..n {
            for w in 0..n {
                for cm in c.hom(z, w) {
                    let cv = &co.embedding[cm];
                    for f in 0..d.hom_dim(w, target) {
                        let fv = SparseVec::unit(f, field);
                        let fc = d.compose(z, w, target, &fv, cv);
                        for g in 0..d.hom_dim(source, z) {
                            let gv = SparseVec::unit(g, field);
                            let cg = d.compose(source, z, w, cv, &gv);
                            let rel = q.tensor(z, &fc, &gv).sub(&q.tensor(w, &fv, &cg), field);
                            q.relations.insert(&rel);
                        }
                    }
                }
            }
        }
        q.relations.make_reduced();
        q.slot = alloc::vec![None; ambient];
        for col in 0..ambient {
            if !q.relations.is_pivot(col) {
                q.slot[col] = Some(q.free.len());
                q.free.push(col);
            }
        }
        q
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn relation_rank(&self) -> usize {
        self.relations.rank()
    }

    /// Ambient vector of `a ⊗ b` with `a ∈ D(z -> target)`, `b ∈ D(source -> z)`.
    pub fn tensor(&self, z: usize, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let base = self.offsets[z];
        let width = self.right_dims[z];
        let mut out = SparseVec::new();
        for (i, x) in a.iter() {
            let row: SparseVec = b.map_indices(|j| base + i * width + j);
            out.add_scaled(x, &row);
        }
        out
    }

    /// Coordinates of the class of an ambient vector.
    pub fn class(&self, v: &SparseVec) -> SparseVec {
        self.relations.reduce(v).map_indices(|col| self.slot[col].expect("reduction leaves only free columns"))
    }

    /// Class of `a ⊗ b`.
    pub fn class_of(&self, z: usize, a: &SparseVec, b: &SparseVec) -> SparseVec {
        self.class(&self.tensor(z, a, b))
    }

    /// `(z, a, b)` with basis morphism indices for the ambient column `col`.
    fn split(&self, col: usize) -> (usize, usize, usize) {
        let z = self.offsets.partition_point(|&o| o <= col) - 1;
        let local = col - self.offsets[z];
        (z, local / self.right_dims[z], local % self.right_dims[z])
    }
}

/// One summand `r ⊗ l` of the decomposition of an identity, with
/// `r: mid -> x` of degree `h^{-1}` and `l: x -> mid` of degree `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RlTerm {
    pub mid: usize,
    pub r: SparseVec,
    pub l: SparseVec,
}

/// `β: (D ⊗_C D)(x -> y) -> D(x -> y) ⊗ kG` and its inverse for one object pair.
/// Target coordinates are `s * dim D(x -> y) + i`.
#[derive(Clone, Debug)]
pub struct PairData {
    pub quotient: TensorQuotient,
    pub beta: SparseMatrix,
    pub beta_prime: SparseMatrix,
}

#[derive(Clone, Debug)]
pub struct GaloisCertificate {
    pub grading: GradedCategory,
    pub coinvariants: Coinvariants,
    /// Indexed by `source * n + target`.
    pub pairs: Vec<PairData>,
    /// `rl[x][h]`.
    pub rl: Vec<Vec<Vec<RlTerm>>>,
}

impl GaloisCertificate {
    pub fn pair(&self, source: usize, target: usize) -> &PairData {
        &self.pairs[source * self.grading.category().num_objects() + target]
    }

    pub fn terms(&self, x: usize, h: usize) -> &[RlTerm] {
        &self.rl[x][h]
    }

    /// `id_x ⊗ h` in target coordinates of `β` on `(x, x)`.
    fn unit_tensor(&self, x: usize, h: usize) -> SparseVec {
        let d = self.grading.category();
        let m = d.hom_dim(x, x);
        d.basis_vec(d.identity(x)).map_indices(|i| h * m + i)
    }

    /// Class of `Σ_i (a∘r_i) ⊗ (l_i∘b)` in `(D ⊗_C D)(source -> target)`, for
    /// `a ∈ D(x -> target)` and `b ∈ D(source -> x)`.
    fn sandwich(&self, q: &TensorQuotient, x: usize, h: usize, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let d = self.grading.category();
        let mut out = SparseVec::new();
        for t in self.terms(x, h) {
            let ar = d.compose(t.mid, x, q.target, a, &t.r);
            let lb = d.compose(q.source, x, t.mid, &t.l, b);
            out.add_scaled(&d.field().one(), &q.class_of(t.mid, &ar, &lb));
        }
        out
    }
}

/// Column order used when solving for the decompositions of identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotOrder {
    Forward,
    Reverse,
}

pub fn galois_check(d: &GradedCategory) -> Result<GaloisCertificate> {
    galois_check_with(d, PivotOrder::Forward)
}

pub fn galois_check_with(d: &GradedCategory, order: PivotOrder) -> Result<GaloisCertificate> {
    let sg = strongly_graded_check(d);
    if let Some(w) = sg.witness {
        return Err(Error::NotStronglyGraded { object: w.source, element: w.right });
    }
    let co = coinvariants(d)?;
    let c = d.category();
    let g = d.group();
    let field = c.field();
    let n = c.num_objects();
    let mut rl = Vec::with_capacity(n);
    for x in 0..n {
        let mut per = Vec::with_capacity(g.order());
        for h in 0..g.order() {
            per.push(decompose_identity(d, x, h, order)?);
        }
        rl.push(per);
    }
    let mut cert = GaloisCertificate { grading: d.clone(), coinvariants: co, pairs: Vec::new(), rl };
    for source in 0..n {
        for target in 0..n {
            let q = TensorQuotient::build(c, &cert.coinvariants, source, target);
            let m = c.hom_dim(source, target);
            let width = g.order() * m;
            let beta_of = |v: &SparseVec| -> SparseVec {
                let mut out = SparseVec::new();
                for (col, a) in v.iter() {
                    let (z, i, j) = q.split(col);
                    let fv = SparseVec::unit(i, field);
                    for s in 0..g.order() {
                        let gs = d.project(source, z, s, &SparseVec::unit(j, field));
                        let p = c.compose(source, z, target, &fv, &gs);
                        out.add_scaled(a, &p.map_indices(|k| s * m + k));
                    }
                }
                out
            };
            for (_, row) in q.relations.rows_by_pivot() {
                if !beta_of(row).is_zero() {
                    return Err(Error::TensorQuotientDegenerate(format!(
                        "β does not vanish on a relation of ({}, {})",
                        c.object_name(source),
                        c.object_name(target)
                    )));
                }
            }
            let beta_cols: Vec<SparseVec> = q.free.iter().map(|&col| beta_of(&SparseVec::unit(col, field))).collect();
            let beta = SparseMatrix::from_columns(field, width, &beta_cols);
            let mut bp_cols = Vec::with_capacity(width);
            for s in 0..g.order() {
                for i in 0..m {
                    let f = SparseVec::unit(i, field);
                    bp_cols.push(cert.sandwich(&q, source, s, &f, &c.basis_vec(c.identity(source))));
                }
            }
            let beta_prime = SparseMatrix::from_columns(field, q.dim(), &bp_cols);
            cert.pairs.push(PairData { quotient: q, beta, beta_prime });
        }
    }
    Ok(cert)
}

/// Solves `id_x = Σ λ u∘v` over `u ∈ D^{h^{-1}}(y -> x)`, `v ∈ D^h(x -> y)`.
fn decompose_identity(d: &GradedCategory, x: usize, h: usize, order: PivotOrder) -> Result<Vec<RlTerm>> {
    let c = d.category();
    let g = d.group();
    let field = c.field();
    let hi = g.inv(h);
    let mut products = Vec::new();
    let mut factors = Vec::new();
    for y in 0..c.num_objects() {
        for u in d.component(y, x, hi) {
            for v in d.component(x, y, h) {
                products.push(c.compose(x, y, x, u, v));
                factors.push((y, u.clone(), v.clone()));
            }
        }
    }
    if order == PivotOrder::Reverse {
        products.reverse();
        factors.reverse();
    }
    let m = SparseMatrix::from_columns(field, c.hom_dim(x, x), &products);
    let id = c.basis_vec(c.identity(x));
    let lambda = solve(&m, &id).ok_or_else(|| Error::NotStronglyGraded {
        object: c.object_name(x).to_string(),
        element: g.name(h).to_string(),
    })?;
    Ok(lambda
        .iter()
        .map(|(k, a)| {
            let (y, u, v) = &factors[k];
            RlTerm { mid: *y, r: u.scaled(a), l: v.clone() }
        })
        .collect())
}

/// Pass/fail for each of the seven identities, with the first failure described.
#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub passed: [bool; 7],
    pub failures: Vec<String>,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.passed.iter().all(|&p| p)
    }
}

pub fn properties_check(cert: &GaloisCertificate) -> PropertyReport {
    let d = cert.grading.category();
    let g = cert.grading.group();
    let field = d.field();
    let n = d.num_objects();
    let one = field.one();
    let mut report = PropertyReport { passed: [true; 7], failures: Vec::new() };
    let fail = |report: &mut PropertyReport, k: usize, msg: String| {
        if report.passed[k - 1] {
            report.failures.push(format!("property {k}: {msg}"));
        }
        report.passed[k - 1] = false;
    };
    for x in 0..n {
        let q = &cert.pair(x, x).quotient;
        let pd = cert.pair(x, x);
        let id = d.basis_vec(d.identity(x));
        let classes: Vec<SparseVec> = (0..g.order()).map(|h| cert.sandwich(q, x, h, &id, &id)).collect();
        for h in 0..g.order() {
            let hn = g.name(h);
            let xn = d.object_name(x);
            // 1: β(Σ r ⊗ l) = 1 ⊗ h
            if pd.beta.mul_vec(&classes[h]) != cert.unit_tensor(x, h) {
                fail(&mut report, 1, format!("at {xn}, {hn}"));
            }
            // 2: Σ r(hk) ⊗ l(hk) = Σ r_i(k) r_j(h) ⊗ l_j(h) l_i(k)
            for k in 0..g.order() {
                let lhs = &classes[g.mul(h, k)];
                let mut rhs = SparseVec::new();
                for ti in cert.terms(x, k) {
                    for tj in cert.terms(ti.mid, h) {
                        let rr = d.compose(tj.mid, ti.mid, x, &ti.r, &tj.r);
                        let ll = d.compose(x, ti.mid, tj.mid, &tj.l, &ti.l);
                        rhs.add_scaled(&one, &q.class_of(tj.mid, &rr, &ll));
                    }
                }
                if *lhs != rhs {
                    fail(&mut report, 2, format!("at {xn}, h = {hn}, k = {}", g.name(k)));
                }
            }
            // 3: c·r ⊗ l = r ⊗ l·c for c ∈ C(x -> x)
            for cm in cert.coinvariants.category.hom(x, x) {
                let cv = &cert.coinvariants.embedding[cm];
                if cert.sandwich(q, x, h, cv, &id) != cert.sandwich(q, x, h, &id, cv) {
                    fail(&mut report, 3, format!("at {xn}, {hn}, {}", cert.coinvariants.category.morphism(cm).name));
                }
            }
            // 4: Σ r ⊗ l_(0) ⊗ l_(1) = Σ r ⊗ l ⊗ h
            for s in 0..g.order() {
                let mut part = SparseVec::new();
                for t in cert.terms(x, h) {
                    let ls = cert.grading.project(x, t.mid, s, &t.l);
                    part.add_scaled(&one, &q.class_of(t.mid, &t.r, &ls));
                }
                let expect = if s == h { classes[h].clone() } else { SparseVec::new() };
                if part != expect {
                    fail(&mut report, 4, format!("at {xn}, {hn}, component {}", g.name(s)));
                }
            }
            // 6: Σ r∘l = ε(h) id_x
            let mut rl = SparseVec::new();
            for t in cert.terms(x, h) {
                rl.add_scaled(&one, &d.compose(x, t.mid, x, &t.r, &t.l));
            }
            if rl != id {
                fail(&mut report, 6, format!("at {xn}, {hn}"));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let pd = cert.pair(x, y);
            let q = &pd.quotient;
            let m = d.hom_dim(x, y);
            let idy = d.basis_vec(d.identity(y));
            for f in 0..m {
                let fv = SparseVec::unit(f, field);
                // 5: Σ_s f_s r(s) ⊗ l(s) = 1_y ⊗ f
                let mut lhs = SparseVec::new();
                for s in 0..g.order() {
                    let fs = cert.grading.project(x, y, s, &fv);
                    lhs.add_scaled(&one, &cert.sandwich(q, x, s, &fs, &d.basis_vec(d.identity(x))));
                }
                if lhs != q.class_of(y, &idy, &fv) {
                    fail(&mut report, 5, format!("at {}", d.morphism(d.hom(x, y).start + f).name));
                }
            }
            // 7: β' agrees with an independently solved inverse of β
            let width = g.order() * m;
            let identity_q = SparseMatrix::identity(field, q.dim());
            let identity_t = SparseMatrix::identity(field, width);
            if pd.beta.mul(&pd.beta_prime) != identity_t || pd.beta_prime.mul(&pd.beta) != identity_q {
                fail(&mut report, 7, format!("β and β' are not inverse on ({}, {})", d.object_name(x), d.object_name(y)));
                continue;
            }
            for col in 0..width {
                let e = SparseVec::unit(col, field);
                let solved = solve(&pd.beta, &e);
                let from_rl = pd.beta_prime.mul_vec(&e);
                if solved.as_ref() != Some(&from_rl) {
                    fail(&mut report, 7, format!("column {col} on ({}, {})", d.object_name(x), d.object_name(y)));
                    break;
                }
            }
        }
    }
    report
}
