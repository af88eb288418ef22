//! Exact linear algebra on small dense matrices: fraction-free rank,
//! rational kernels, and determinants.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rat::Rat;

/// Rank over the integers (equivalently over Q) by fraction-free
/// Bareiss elimination.
pub fn rank_int(mat: &[Vec<BigInt>]) -> usize {
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let mut a: Vec<Vec<BigInt>> = mat.to_vec();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        for r in 0..rows {
            if r == rank {
                continue;
            }
            for c in 0..cols {
                if c == col {
                    continue;
                }
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Determinant of a square integer matrix (Bareiss).
pub fn det_int(mat: &[Vec<BigInt>]) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = mat.to_vec();
    let mut prev = BigInt::one();
    let mut sign = 1i64;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Determinant parity (mod 2) of an integer matrix.
pub fn det_parity_odd(mat: &[Vec<BigInt>]) -> bool {
    let n = mat.len();
    let mut a: Vec<Vec<u8>> = mat
        .iter()
        .map(|r| r.iter().map(|v| (v.magnitude().bit(0)) as u8).collect())
        .collect();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| a[r][k] == 1) else {
            return false;
        };
        a.swap(k, p);
        for i in 0..n {
            if i != k && a[i][k] == 1 {
                for j in k..n {
                    a[i][j] ^= a[k][j];
                }
            }
        }
    }
    true
}

/// Basis of the right kernel of a rational matrix (columns = unknowns).
pub fn kernel_rat(mat: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut a: Vec<Vec<Rat>> = mat.iter().filter(|r| !r.is_empty()).cloned().collect();
    let rows = a.len();
    let mut pivot_col_of_row = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for j in c..cols {
            let v = &a[r][j] * &inv;
            a[r][j] = v;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let v = &a[i][j] - &f * &a[r][j];
                    a[i][j] = v;
                }
            }
        }
        pivot_col_of_row.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let pivot_cols: std::collections::HashSet<usize> = pivot_col_of_row.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = -a[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn rank_and_det() {
        let m = bi(&[&[1, 2], &[2, 4]]);
        assert_eq!(rank_int(&m), 1);
        let m = bi(&[&[0, 1, 1], &[1, 0, 1], &[1, 2, 0]]);
        assert_eq!(rank_int(&m), 3);
        assert_eq!(det_int(&m), BigInt::from(3));
        assert!(det_parity_odd(&m));
        let even = bi(&[&[1, 1], &[1, 1]]);
        assert!(!det_parity_odd(&even));
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = vec![vec![rat(1), rat(2), rat(3)]];
        let k = kernel_rat(&m, 3);
        assert_eq!(k.len(), 2);
        for v in k {
            let s = &v[0] + &rat(2) * &v[1] + &rat(3) * &v[2];
            assert!(s.is_zero());
        }
    }
}
