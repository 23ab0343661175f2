use hmcoh::linalg::{kernel_basis, rank};
use hmcoh::{FieldSpec, SparseMatrix};
use proptest::prelude::*;

fn dense_rank_mod(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] % p != 0) else { continue };
        a.swap(r, piv);
        let inv = pow(a[r][c], p - 2);
        for j in 0..cols {
            a[r][j] = a[r][j] * inv % p;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p * p - f * a[r][j] % p) % p;
                }
            }
        }
        r += 1;
    }
    r
}

fn matrix(field: FieldSpec, a: &[Vec<i64>]) -> SparseMatrix {
    let rows: Vec<Vec<_>> = a.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    if rows.is_empty() {
        return SparseMatrix::zero(field, 0, cols);
    }
    SparseMatrix::from_dense(field, &rows)
}

fn small_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -4i64..5], c), r)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(a in small_matrix(12), p in prop_oneof![Just(0u64), Just(2), Just(3), Just(7)]) {
        let field = if p == 0 { FieldSpec::Rationals } else { FieldSpec::prime(p).unwrap() };
        let m = matrix(field, &a);
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.dim(), m.cols());
        for v in k.basis() {
            prop_assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn rank_is_permutation_invariant(a in small_matrix(10), seed in any::<u64>()) {
        let field = FieldSpec::Rationals;
        let m = matrix(field, &a);
        let mut rp: Vec<usize> = (0..m.rows()).collect();
        let mut cp: Vec<usize> = (0..m.cols()).collect();
        let mut s = seed;
        for i in (1..rp.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            rp.swap(i, (s >> 33) as usize % (i + 1));
        }
        for i in (1..cp.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            cp.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(rank(&m), rank(&m.permuted(&rp, &cp)));
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn prime_field_rank_matches_dense_oracle(
        dims in (1usize..=50, 1usize..=50),
        p in prop_oneof![Just(2u64), Just(3), Just(5), Just(101)],
        seed in any::<u64>(),
        density in 1u64..=4,
    ) {
        let (r, c) = dims;
        let mut s = seed | 1;
        let mut next = || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s
        };
        let a: Vec<Vec<u64>> = (0..r)
            .map(|_| (0..c).map(|_| if next() % 4 < density { next() % p } else { 0 }).collect())
            .collect();
        let field = FieldSpec::prime(p).unwrap();
        let signed: Vec<Vec<i64>> = a.iter().map(|row| row.iter().map(|&v| v as i64).collect()).collect();
        prop_assert_eq!(rank(&matrix(field, &signed)), dense_rank_mod(a, p));
    }
}
