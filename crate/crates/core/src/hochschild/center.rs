use alloc::vec::Vec;

use crate::kcat::KCategory;
use crate::linalg::{SparseMatrix, SparseVec, kernel_basis};

/// Families `(m_x)` with `m_x ∈ hom(x, x)` and `f∘m_x = m_y∘f` for all `f: x -> y`.
#[derive(Clone, Debug)]
pub struct Center {
    /// Start of each endo space inside the coordinate vector.
    pub offsets: Vec<usize>,
    pub basis: Vec<SparseVec>,
}

impl Center {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn center(c: &KCategory) -> Center {
    let field = c.field();
    let n = c.num_objects();
    let mut offsets = Vec::with_capacity(n);
    let mut total = 0;
    for x in 0..n {
        offsets.push(total);
        total += c.hom_dim(x, x);
    }
    let mut triplets = Vec::new();
    let mut row = 0;
    for x in 0..n {
        for y in 0..n {
            let target = c.hom(x, y);
            for f in target.clone() {
                let fv = c.basis_vec(f);
                // f∘e_x for basis e of hom(x, x), minus e_y∘f for basis e of hom(y, y)
                for (j, e) in c.hom(x, x).enumerate() {
                    let v = c.compose(x, x, y, &fv, &c.basis_vec(e));
                    for (i, a) in v.iter() {
                        triplets.push((row + i, offsets[x] + j, a.clone()));
                    }
                }
                for (j, e) in c.hom(y, y).enumerate() {
                    let v = c.compose(x, y, y, &c.basis_vec(e), &fv);
                    for (i, a) in v.iter() {
                        triplets.push((row + i, offsets[y] + j, -a));
                    }
                }
                row += target.len();
            }
        }
    }
    let m = SparseMatrix::from_triplets(field, row, total, triplets);
    Center { offsets, basis: kernel_basis(&m).into_basis() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::kcat::CategoryBuilder;
    use crate::kcat::corpus::Family;

    #[test]
    fn examples() {
        let q = FieldSpec::Rationals;
        let one = CategoryBuilder::new(q).object("x").build().unwrap();
        assert_eq!(center(&one).dim(), 1);
        let crown = Family::CrownIncidence { rows: 2, n: 3, extra: 0 }.generate(q).unwrap();
        assert_eq!(center(&crown).dim(), 1);
        let anti = Family::Antichain { n: 3 }.generate(q).unwrap();
        assert_eq!(center(&anti).dim(), 3);
        let mut b = CategoryBuilder::new(q);
        b.object("x").hom("x", "x", &["1", "l"], Some("1"));
        assert_eq!(center(&b.build().unwrap()).dim(), 2);
    }
}
