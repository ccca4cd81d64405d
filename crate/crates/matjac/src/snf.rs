//! Smith normal form over the integers with exact arithmetic.

// Row operations index two rows of one matrix at once; keep the loops.
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Diagonal of the Smith normal form, d_1 | d_2 | ..., entries nonnegative,
/// including any trailing ones and zeros. Pivoting is deterministic:
/// smallest nonzero absolute value, ties broken by lowest (row, column).
pub fn smith_invariant_factors(mat: &[Vec<BigInt>]) -> Vec<BigInt> {
    let nr = mat.len();
    let nc = mat.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<BigInt>> = mat.to_vec();
    let k = nr.min(nc);
    let mut out = Vec::with_capacity(k);
    let mut t = 0usize;
    while t < k {
        let Some((pr, pc)) = pick_pivot(&m, t) else {
            break;
        };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            // Clear the pivot column by division with remainder.
            let mut clean = true;
            for i in t + 1..nr {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = div_nearest(&m[i][t], &m[t][t]);
                if !q.is_zero() {
                    for j in t..nc {
                        let v = &m[i][j] - &q * &m[t][j];
                        m[i][j] = v;
                    }
                }
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..nc {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = div_nearest(&m[t][j], &m[t][t]);
                if !q.is_zero() {
                    for row in m.iter_mut().skip(t) {
                        let v = &row[j] - &q * &row[t];
                        row[j] = v;
                    }
                }
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // Remainders are smaller than the pivot; pick the new minimum.
            let (pr, pc) = pick_pivot(&m, t).expect("nonzero remainder exists");
            m.swap(t, pr);
            for row in m.iter_mut() {
                row.swap(t, pc);
            }
        }
        // Make the pivot divide the rest of the block.
        let mut offender = None;
        'scan: for i in t + 1..nr {
            for j in t + 1..nc {
                if !(&m[i][j] % &m[t][t]).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            for j in t..nc {
                let v = &m[t][j] + &m[i][j];
                m[t][j] = v;
            }
            continue;
        }
        t += 1;
    }
    for i in 0..t {
        out.push(m[i][i].abs());
    }
    out.resize(k, BigInt::zero());
    out
}

fn pick_pivot(m: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bj)) => v.abs() < m[bi][bj].abs(),
            };
            if better {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Quotient rounded to nearest, which halves remainders and keeps the
/// reduction loop short.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if r.abs() * 2 > b.abs() {
        // Stepping q by sign(r)*sign(b) replaces r with r - sign(r)|b|.
        if r.sign() == b.sign() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn small(v: Vec<BigInt>) -> Vec<i64> {
        v.into_iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn single_entry() {
        assert_eq!(small(smith_invariant_factors(&big(&[&[2]]))), vec![2]);
    }

    #[test]
    fn diag_6_4_normalizes_to_2_12() {
        assert_eq!(
            small(smith_invariant_factors(&big(&[&[6, 0], &[0, 4]]))),
            vec![2, 12]
        );
    }

    #[test]
    fn identity() {
        assert_eq!(
            small(smith_invariant_factors(&big(&[
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 1]
            ]))),
            vec![1, 1, 1]
        );
    }

    #[test]
    fn singular_matrix_gets_zeros() {
        assert_eq!(
            small(smith_invariant_factors(&big(&[&[2, 2], &[2, 2]]))),
            vec![2, 0]
        );
    }

    #[test]
    fn divisibility_chain_under_permutations() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let base = big(&[&[4, 2, 0], &[2, 8, 2], &[0, 2, 12]]);
        let want = smith_invariant_factors(&base);
        for _ in 0..10 {
            let mut rows: Vec<usize> = (0..3).collect();
            let mut cols: Vec<usize> = (0..3).collect();
            rows.shuffle(&mut rng);
            cols.shuffle(&mut rng);
            let perm: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| base[i][j].clone()).collect())
                .collect();
            assert_eq!(smith_invariant_factors(&perm), want);
        }
    }
}
