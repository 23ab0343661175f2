//! Simplicial cohomology of the order complex of a poset, used as an
//! independent check on incidence categories.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Result;
use crate::field::FieldSpec;
use crate::kcat::PosetSpec;
use crate::linalg::{SparseMatrix, rank};

/// Cohomology dims of the order complex in degrees `0..=nmax`.
pub fn order_complex_cohomology(p: &PosetSpec, field: FieldSpec, nmax: usize) -> Result<Vec<usize>> {
    let order = p.order()?;
    let n = order.len();
    // simplices[d] = strictly increasing chains with d+1 elements
    let mut simplices: Vec<Vec<Vec<usize>>> = alloc::vec![(0..n).map(|x| alloc::vec![x]).collect()];
    for d in 1..=nmax + 1 {
        let mut next = Vec::new();
        for s in &simplices[d - 1] {
            let top = *s.last().expect("nonempty simplex");
            for y in 0..n {
                if order.less(top, y) {
                    let mut t = s.clone();
                    t.push(y);
                    next.push(t);
                }
            }
        }
        simplices.push(next);
    }
    let index: Vec<BTreeMap<&[usize], usize>> = simplices
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect())
        .collect();
    // delta[d]: C^d -> C^{d+1}, (δf)(s) = Σ (-1)^i f(s without vertex i)
    let mut ranks = Vec::new();
    for d in 0..=nmax {
        let mut triplets = Vec::new();
        for (row, s) in simplices[d + 1].iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let col = index[d][face.as_slice()];
                let sign = if i % 2 == 0 { 1 } else { -1 };
                triplets.push((row, col, field.from_i64(sign)));
            }
        }
        let m = SparseMatrix::from_triplets(field, simplices[d + 1].len(), simplices[d].len(), triplets);
        ranks.push(rank(&m));
    }
    Ok((0..=nmax)
        .map(|d| simplices[d].len() - ranks[d] - if d == 0 { 0 } else { ranks[d - 1] })
        .collect())
}
