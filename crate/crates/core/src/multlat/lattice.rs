//! Integer row reduction, Hermite normal form and integer kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Integer row echelon form on the first `ncols` columns using unimodular row
/// operations. Returns the number of pivot rows, which come first.
pub fn echelon_int(rows: &mut [Vec<BigInt>], ncols: usize) -> usize {
    let n = rows.len();
    let mut r = 0;
    for c in 0..ncols {
        if r == n {
            break;
        }
        loop {
            let Some(p) = (r..n)
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()))
            else {
                break;
            };
            rows.swap(r, p);
            let mut clean = true;
            for i in r + 1..n {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &q * y;
                }
                if !rows[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                r += 1;
                break;
            }
        }
    }
    r
}

/// Row-style Hermite normal form of the lattice spanned by `rows`:
/// positive pivots, entries above each pivot reduced into `[0, pivot)`,
/// zero rows removed.
pub fn hnf(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let Some(ncols) = rows.first().map(|r| r.len()) else {
        return Vec::new();
    };
    let mut m = rows.to_vec();
    let rank = echelon_int(&mut m, ncols);
    m.truncate(rank);
    let mut pivots = Vec::with_capacity(rank);
    for row in m.iter_mut() {
        let c = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
        if row[c].is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
        pivots.push(c);
    }
    for (i, &c) in pivots.iter().enumerate() {
        for k in 0..i {
            let q = m[k][c].div_floor(&m[i][c]);
            if !q.is_zero() {
                let pivot = m[i].clone();
                for (x, y) in m[k].iter_mut().zip(&pivot) {
                    *x -= &q * y;
                }
            }
        }
    }
    m
}

/// Basis (in Hermite normal form) of `{k in Z^r : sum_i k_i v_i = 0}` for the
/// given `r` integer vectors of common length.
pub fn integer_kernel(vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let r = vectors.len();
    if r == 0 {
        return Vec::new();
    }
    let dim = vectors[0].len();
    let mut rows: Vec<Vec<BigInt>> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut row = v.clone();
            row.extend((0..r).map(|j| BigInt::from((i == j) as i64)));
            row
        })
        .collect();
    let rank = echelon_int(&mut rows, dim);
    let kernel: Vec<Vec<BigInt>> = rows[rank..].iter().map(|row| row[dim..].to_vec()).collect();
    hnf(&kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_examples() {
        assert!(integer_kernel(&[v(&[-1, 0]), v(&[0, -1])]).is_empty());
        assert_eq!(
            integer_kernel(&[v(&[-1, 0]), v(&[0, -1]), v(&[-1, -1])]),
            vec![v(&[1, 1, -1])]
        );
        assert_eq!(integer_kernel(&[v(&[2]), v(&[3])]), vec![v(&[3, -2])]);
        assert_eq!(integer_kernel(&[v(&[-1]), v(&[-2])]), vec![v(&[2, -1])]);
    }

    #[test]
    fn hnf_is_canonical() {
        let a = hnf(&[v(&[2, 4]), v(&[1, 3])]);
        let b = hnf(&[v(&[1, 3]), v(&[3, 7])]);
        assert_eq!(a, b);
        assert_eq!(a, vec![v(&[1, 1]), v(&[0, 2])]);
    }

    proptest! {
        #[test]
        fn kernel_vectors_annihilate(
            cols in prop::collection::vec(prop::collection::vec(-4i64..5, 3), 1..6)
        ) {
            let vs: Vec<Vec<BigInt>> = cols.iter().map(|c| v(c)).collect();
            let ker = integer_kernel(&vs);
            for k in &ker {
                for d in 0..3 {
                    let s: BigInt = k.iter().zip(&vs).map(|(a, x)| a * &x[d]).sum();
                    prop_assert!(s.is_zero());
                }
            }
            // rank-nullity over Q
            let rows: Vec<Vec<crate::numbers::Rat>> = (0..3)
                .map(|d| vs.iter().map(|x| crate::numbers::Rat::from_integer(x[d].clone())).collect())
                .collect();
            let rk = crate::numbers::field::rank(&rows);
            prop_assert_eq!(ker.len(), vs.len() - rk);
        }
    }
}
