//! Exact sparse linear algebra: vectors and matrices over a [`FieldSpec`],
//! incremental row echelon forms, subspaces, ranks and kernels.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(index: usize, field: FieldSpec) -> Self {
        SparseVec { entries: alloc::vec![(index, field.one())] }
    }

    /// Builds a vector from unordered entries, summing repeats and dropping zeros.
    pub fn from_entries<I: IntoIterator<Item = (usize, Scalar)>>(entries: I) -> Self {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, v) in entries {
            match acc.get_mut(&i) {
                Some(slot) => *slot += &v,
                None => {
                    acc.insert(i, v);
                }
            }
        }
        SparseVec {
            entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, dim: usize, field: FieldSpec) -> Vec<Scalar> {
        let mut out = alloc::vec![field.zero(); dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scaled(&self, a: &Scalar) -> SparseVec {
        if a.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * a)).collect(),
        }
    }

    /// `self += a * other`.
    pub fn add_scaled(&mut self, a: &Scalar, other: &SparseVec) {
        if a.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut lhs = core::mem::take(&mut self.entries).into_iter().peekable();
        let mut rhs = other.entries.iter().peekable();
        loop {
            match (lhs.peek(), rhs.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(lhs.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, w) = rhs.next().unwrap();
                    out.push((*j, w * a));
                }
                (Some(_), Some(_)) => {
                    let (i, v) = lhs.next().unwrap();
                    let (_, w) = rhs.next().unwrap();
                    let s = &v + &(w * a);
                    if !s.is_zero() {
                        out.push((i, s));
                    }
                }
                (Some(_), None) => out.push(lhs.next().unwrap()),
                (None, Some(_)) => {
                    let (j, w) = rhs.next().unwrap();
                    out.push((*j, w * a));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn add(&self, other: &SparseVec, field: FieldSpec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(&field.one(), other);
        out
    }

    pub fn sub(&self, other: &SparseVec, field: FieldSpec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(&-field.one(), other);
        out
    }

    /// Re-indexes through `f`, summing collisions.
    pub fn map_indices<F: FnMut(usize) -> usize>(&self, mut f: F) -> SparseVec {
        SparseVec::from_entries(self.entries.iter().map(|(i, v)| (f(*i), v.clone())))
    }

    /// Keeps only entries whose index passes `keep`.
    pub fn filter<F: FnMut(usize) -> bool>(&self, mut keep: F) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().filter(|(i, _)| keep(*i)).cloned().collect(),
        }
    }

    pub fn dot(&self, other: &SparseVec, field: FieldSpec) -> Scalar {
        let mut acc = field.zero();
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (i, j) = (self.entries[a].0, other.entries[b].0);
            if i == j {
                acc += &(&self.entries[a].1 * &other.entries[b].1);
                a += 1;
                b += 1;
            } else if i < j {
                a += 1;
            } else {
                b += 1;
            }
        }
        acc
    }

    fn position_from(&self, cursor: usize) -> usize {
        self.entries.partition_point(|(i, _)| *i < cursor)
    }
}

/// A sparse matrix stored by rows. Columns are the domain, rows the codomain,
/// so `mul_vec` applies the matrix to a column vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        SparseMatrix { field, rows, cols, data: alloc::vec![SparseVec::new(); rows] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        SparseMatrix {
            field,
            rows: n,
            cols: n,
            data: (0..n).map(|i| SparseVec::unit(i, field)).collect(),
        }
    }

    pub fn from_triplets<I>(field: FieldSpec, rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut per_row: Vec<Vec<(usize, Scalar)>> = alloc::vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r},{c}) out of bounds {rows}x{cols}");
            per_row[r].push((c, v));
        }
        SparseMatrix {
            field,
            rows,
            cols,
            data: per_row.into_iter().map(SparseVec::from_entries).collect(),
        }
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.max_index().map_or(true, |m| m < cols)));
        SparseMatrix { field, rows: rows.len(), cols, data: rows }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[SparseVec]) -> Self {
        Self::from_triplets(
            field,
            rows,
            columns.len(),
            columns
                .iter()
                .enumerate()
                .flat_map(|(j, col)| col.iter().map(move |(i, v)| (i, j, v.clone()))),
        )
    }

    pub fn from_dense(field: FieldSpec, rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(field, cols, rows.iter().map(|r| SparseVec::from_dense(r)).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r].get(c).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, c, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut per_col: Vec<Vec<(usize, Scalar)>> = alloc::vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row.iter() {
                per_col[c].push((r, v.clone()));
            }
        }
        SparseMatrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data: per_col.into_iter().map(|entries| SparseVec { entries }).collect(),
        }
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        SparseVec {
            entries: self
                .data
                .iter()
                .enumerate()
                .filter_map(|(r, row)| {
                    let s = row.dot(v, self.field);
                    (!s.is_zero()).then_some((r, s))
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = SparseVec::new();
                for (k, a) in row.iter() {
                    acc.add_scaled(a, &other.data[k]);
                }
                acc
            })
            .collect();
        SparseMatrix { field: self.field, rows: self.rows, cols: other.cols, data }
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        SparseMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.sub(b, self.field))
                .collect(),
        }
    }

    /// Permutes rows and columns: entry `(r, c)` moves to `(row_perm[r], col_perm[c])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseMatrix {
        SparseMatrix::from_triplets(
            self.field,
            self.rows,
            self.cols,
            self.entries().map(|(r, c, v)| (row_perm[r], col_perm[c], v.clone())),
        )
    }
}

#[derive(Clone, Debug)]
struct EchelonRow {
    vec: SparseVec,
    tag: SparseVec,
}

/// An incrementally built row echelon form. Every stored row has leading
/// coefficient one at a distinct pivot column. Rows optionally carry a tag
/// recording how they combine the vectors that were inserted.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    dim: usize,
    rows: Vec<EchelonRow>,
    pivot_row: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(field: FieldSpec, dim: usize) -> Self {
        Echelon { field, dim, rows: Vec::new(), pivot_row: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Inserts `v`; returns `true` when it was independent of the stored rows.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        self.insert_tagged(v, SparseVec::new()).is_some()
    }

    /// Inserts `v` carrying `tag`; returns the new row index if independent.
    pub fn insert_tagged(&mut self, v: &SparseVec, tag: SparseVec) -> Option<usize> {
        let (residual, combo) = self.reduce_leading(v);
        let (lead, a) = residual.leading()?;
        let inv = a.inv();
        let row = residual.scaled(&inv);
        let mut t = tag;
        t.add_scaled(&-self.field.one(), &combo);
        let t = t.scaled(&inv);
        let idx = self.rows.len();
        self.rows.push(EchelonRow { vec: row, tag: t });
        self.pivot_row.insert(lead, idx);
        Some(idx)
    }

    /// Eliminates until the leading column is not a pivot.
    fn reduce_leading(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut v = v.clone();
        let mut combo = SparseVec::new();
        while let Some((lead, a)) = v.leading() {
            let Some(&r) = self.pivot_row.get(&lead) else { break };
            let a = a.clone();
            let row = &self.rows[r];
            v.add_scaled(&-&a, &row.vec);
            combo.add_scaled(&a, &row.tag);
        }
        (v, combo)
    }

    /// Eliminates every pivot column. Returns the residual and the tag
    /// combination `c` with `v = residual + sum_r c_r row_r`.
    pub fn reduce_tagged(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut v = v.clone();
        let mut combo = SparseVec::new();
        let mut cursor = 0;
        loop {
            let start = v.position_from(cursor);
            let hit = v.entries[start..]
                .iter()
                .find_map(|(c, a)| self.pivot_row.get(c).map(|&r| (*c, a.clone(), r)));
            let Some((col, a, r)) = hit else { break };
            let row = &self.rows[r];
            v.add_scaled(&-&a, &row.vec);
            combo.add_scaled(&a, &row.tag);
            cursor = col + 1;
        }
        (v, combo)
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_tagged(v).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce_leading(v).0.is_zero()
    }

    /// Brings the rows to reduced row echelon form (tags are kept consistent).
    pub fn make_reduced(&mut self) {
        let order: Vec<(usize, usize)> = self.pivot_row.iter().rev().map(|(c, r)| (*c, *r)).collect();
        for (col, r) in order {
            let row = self.rows[r].clone();
            let tail = row.vec.filter(|i| i != col);
            let (reduced, combo) = self.reduce_tagged(&tail);
            let mut vec = SparseVec::unit(col, self.field);
            vec.add_scaled(&self.field.one(), &reduced);
            let mut tag = row.tag;
            tag.add_scaled(&-self.field.one(), &combo);
            self.rows[r] = EchelonRow { vec, tag };
        }
    }

    /// Stored rows in pivot order.
    pub fn rows_by_pivot(&self) -> impl Iterator<Item = (usize, &SparseVec)> + '_ {
        self.pivot_row.iter().map(|(c, r)| (*c, &self.rows[*r].vec))
    }
}

/// A subspace of `k^ambient` with a linearly independent basis and a solver
/// for coordinates relative to that basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<SparseVec>,
    echelon: Echelon,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new(), echelon: Echelon::new(field, ambient) }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Self::span(field, ambient, (0..ambient).map(|i| SparseVec::unit(i, field)))
    }

    /// Span of `vectors`; dependent vectors are skipped.
    pub fn span<I: IntoIterator<Item = SparseVec>>(field: FieldSpec, ambient: usize, vectors: I) -> Self {
        let mut s = Self::zero(field, ambient);
        for v in vectors {
            s.add(v);
        }
        s
    }

    /// Adds `v` to the basis when it is independent; returns whether it was.
    pub fn add(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.max_index().map_or(true, |m| m < self.ambient));
        let tag = SparseVec::unit(self.basis.len(), self.field);
        if self.echelon.insert_tagged(&v, tag).is_some() {
            self.basis.push(v);
            true
        } else {
            false
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<SparseVec> {
        self.basis
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.echelon.contains(v)
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let (residual, combo) = self.echelon.reduce_tagged(v);
        residual.is_zero().then_some(combo)
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }
}

/// Rank of `m` over its field.
pub fn rank(m: &SparseMatrix) -> usize {
    let mut rows: Vec<&SparseVec> = m.row_vectors().iter().filter(|r| !r.is_zero()).collect();
    rows.sort_by_key(|r| (r.nnz(), r.leading().map(|(c, _)| c)));
    let mut e = Echelon::new(m.field(), m.cols());
    for r in rows {
        e.insert(r);
        if e.rank() == m.cols() {
            break;
        }
    }
    e.rank()
}

/// Basis of the null space `{x : m x = 0}`, one vector per free column.
pub fn kernel_basis(m: &SparseMatrix) -> Subspace {
    let field = m.field();
    let mut e = Echelon::new(field, m.cols());
    for r in m.row_vectors() {
        e.insert(r);
    }
    e.make_reduced();
    let mut per_free: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
    for c in 0..m.cols() {
        if !e.is_pivot(c) {
            per_free.insert(c, alloc::vec![(c, field.one())]);
        }
    }
    for (pivot, row) in e.rows_by_pivot() {
        for (j, a) in row.iter() {
            if j != pivot {
                per_free.get_mut(&j).expect("reduced row touches a pivot column").push((pivot, -a));
            }
        }
    }
    let vectors: Vec<SparseVec> = per_free.into_values().map(SparseVec::from_entries).collect();
    // Kernel vectors are independent by construction (distinct free unit positions).
    let mut s = Subspace::zero(field, m.cols());
    for v in vectors {
        let added = s.add(v);
        debug_assert!(added);
    }
    s
}

/// `dim(outer) - dim(inner)`, after checking that `inner` lies in `outer`.
pub fn quotient_dim(outer: &Subspace, inner: &Subspace) -> Result<usize> {
    for (index, v) in inner.basis().iter().enumerate() {
        if !outer.contains(v) {
            return Err(Error::InclusionViolation { index });
        }
    }
    Ok(outer.dim() - inner.dim())
}

/// Some `x` with `m x = b`, if one exists.
pub fn solve(m: &SparseMatrix, b: &SparseVec) -> Option<SparseVec> {
    let field = m.field();
    let columns = m.columns();
    let mut e = Echelon::new(field, m.rows());
    for (j, col) in columns.iter().enumerate() {
        e.insert_tagged(col, SparseVec::unit(j, field));
    }
    let (residual, combo) = e.reduce_tagged(b);
    residual.is_zero().then_some(combo)
}
