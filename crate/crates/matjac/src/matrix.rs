//! Exact integer linear algebra on small dense matrices.
//!
//! Inputs from this crate have entries in {-1, 0, 1}, but every routine here
//! is exact for arbitrary integer matrices: rank and determinants use
//! fraction-free Bareiss elimination, kernels use unimodular column
//! reduction.

// Row operations index two rows of one matrix at once; keep the loops.
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Determinant of a square matrix by fraction-free Bareiss elimination.
/// Pivot choice: first row with a nonzero entry in the current column.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut sign = 1i64;
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot_row = match (k..n).find(|&i| !m[i][k].is_zero()) {
            Some(i) => i,
            None => return BigInt::zero(),
        };
        if pivot_row != k {
            m.swap(pivot_row, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Rank over the rationals, computed exactly.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    rank_big(&to_big(rows))
}

pub fn rank_big(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nr = m.len();
    let nc = if nr == 0 { 0 } else { m[0].len() };
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..nc {
        if r == nr {
            break;
        }
        let pivot_row = match (r..nr).find(|&i| !m[i][c].is_zero()) {
            Some(i) => i,
            None => continue,
        };
        m.swap(pivot_row, r);
        for i in r + 1..nr {
            for j in c + 1..nc {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Gram product A * A^T with exact entries.
pub fn gram_product(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    let r = rows.len();
    let mut out = vec![vec![BigInt::zero(); r]; r];
    for i in 0..r {
        for j in i..r {
            let s: i64 = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum();
            out[i][j] = BigInt::from(s);
            out[j][i] = BigInt::from(s);
        }
    }
    out
}

/// Determinant of the square submatrix formed by the given columns.
/// The number of columns must equal the number of rows.
pub fn det_of_columns(rows: &[Vec<i64>], cols: &[u32]) -> BigInt {
    debug_assert_eq!(rows.len(), cols.len());
    let m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| cols.iter().map(|&c| BigInt::from(r[c as usize])).collect())
        .collect();
    bareiss_det(m)
}

/// Integral basis of ker A, as a list of length-n integer vectors whose
/// Z-span is ker A intersected with Z^n. Uses unimodular column operations,
/// so the span is exactly the kernel lattice.
pub fn kernel_lattice_basis(rows: &[Vec<i64>], n: usize) -> Vec<Vec<BigInt>> {
    let mut w = to_big(rows);
    let nr = w.len();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    // u is kept column-major: u[c] is the c-th column transform.
    let mut t = 0usize; // columns 0..t hold placed pivots
    for r in 0..nr {
        loop {
            let mut best: Option<usize> = None;
            for c in t..n {
                if !w[r][c].is_zero() {
                    let better = match best {
                        None => true,
                        Some(b) => w[r][c].abs() < w[r][b].abs(),
                    };
                    if better {
                        best = Some(c);
                    }
                }
            }
            let Some(pc) = best else { break };
            let mut done = true;
            for c in t..n {
                if c == pc || w[r][c].is_zero() {
                    continue;
                }
                let q = div_round(&w[r][c], &w[r][pc]);
                if !q.is_zero() {
                    for i in 0..nr {
                        let v = &w[i][c] - &q * &w[i][pc];
                        w[i][c] = v;
                    }
                    let col: Vec<BigInt> =
                        (0..n).map(|i| &u[c][i] - &q * &u[pc][i]).collect();
                    u[c] = col;
                }
                if !w[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                for row in w.iter_mut() {
                    row.swap(t, pc);
                }
                u.swap(t, pc);
                t += 1;
                break;
            }
        }
    }
    u.into_iter().skip(t).collect()
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // Round-toward-zero quotient is enough for Euclidean descent.
    a / b
}

/// Gram determinant det(K^T K) for a list of integer vectors K.
pub fn gram_det_of_vectors(vecs: &[Vec<BigInt>]) -> BigInt {
    let k = vecs.len();
    let mut g = vec![vec![BigInt::zero(); k]; k];
    for i in 0..k {
        for j in i..k {
            let s: BigInt = vecs[i].iter().zip(&vecs[j]).map(|(a, b)| a * b).sum();
            g[i][j] = s.clone();
            g[j][i] = s;
        }
    }
    bareiss_det(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn det_small() {
        assert_eq!(bareiss_det(big(&[])), BigInt::from(1));
        assert_eq!(bareiss_det(big(&[&[5]])), BigInt::from(5));
        assert_eq!(bareiss_det(big(&[&[1, 2], &[3, 4]])), BigInt::from(-2));
        assert_eq!(
            bareiss_det(big(&[&[2, -1, -1], &[-1, 3, -1], &[-1, -1, 3]])),
            BigInt::from(8)
        );
        assert_eq!(bareiss_det(big(&[&[1, 1], &[1, 1]])), BigInt::from(0));
    }

    #[test]
    fn rank_small() {
        assert_eq!(rank(&[vec![1, 1], vec![1, 1]]), 1);
        assert_eq!(rank(&[vec![1, 0], vec![0, 1]]), 2);
        assert_eq!(rank(&[vec![0, 0]]), 0);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn kernel_of_parallel_pair() {
        let k = kernel_lattice_basis(&[vec![1, 1]], 2);
        assert_eq!(k.len(), 1);
        let g = gram_det_of_vectors(&k);
        assert_eq!(g, BigInt::from(2));
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let k = kernel_lattice_basis(&[vec![1, 0], vec![0, 1]], 2);
        assert!(k.is_empty());
        assert_eq!(gram_det_of_vectors(&k), BigInt::from(1));
    }
}
