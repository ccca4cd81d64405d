//! Basis families as sets of bitmasks, enumeration, and the exchange axiom.

use crate::error::{Error, Result};
use crate::matroid::RegularMatroid;
use crate::MAX_GROUND;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSet {
    pub n: usize,
    pub r: usize,
    pub members: BTreeSet<u64>,
}

impl BasisSet {
    pub fn new(n: usize, r: usize, members: BTreeSet<u64>) -> Self {
        debug_assert!(members.iter().all(|m| m.count_ones() as usize == r));
        BasisSet { n, r, members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Enumerates the column subsets with |det| = 1 by a depth-first scan over
/// columns in increasing order. The running fraction-free elimination keeps
/// the determinant of the chosen columns exact, so non-unimodular square
/// subsets (impossible for regular inputs) are rejected rather than counted.
pub fn enumerate_bases(m: &RegularMatroid) -> Result<BasisSet> {
    let n = m.n();
    let r = m.rank();
    if n > MAX_GROUND {
        return Err(Error::GroundTooLarge(n));
    }
    let mut members = BTreeSet::new();
    if r == 0 {
        members.insert(0u64);
        return Ok(BasisSet::new(n, 0, members));
    }
    let rows = crate::matrix::to_big(m.matrix());
    struct Walk<'a> {
        n: usize,
        r: usize,
        members: &'a mut BTreeSet<u64>,
    }
    impl Walk<'_> {
        fn go(
            &mut self,
            rows: &[Vec<BigInt>],
            prev_pivot: &BigInt,
            depth: usize,
            start: usize,
            mask: u64,
        ) {
            for j in start..self.n {
                if self.n - j < self.r - depth {
                    break;
                }
                let Some(p) = rows.iter().position(|row| !row[j].is_zero()) else {
                    continue;
                };
                let pivot = rows[p][j].clone();
                if depth + 1 == self.r {
                    if pivot.abs().is_one() {
                        self.members.insert(mask | 1 << j);
                    }
                    self.go(rows, prev_pivot, depth, j + 1, mask);
                    return;
                }
                // Bareiss step on the remaining rows, dropping the pivot row.
                let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(rows.len() - 1);
                for (i, row) in rows.iter().enumerate() {
                    if i == p {
                        continue;
                    }
                    let mut nr = vec![BigInt::zero(); self.n];
                    for (c, item) in nr.iter_mut().enumerate().skip(j + 1) {
                        *item = (&pivot * &row[c] - &row[j] * &rows[p][c]) / prev_pivot;
                    }
                    next.push(nr);
                }
                self.go(&next, &pivot, depth + 1, j + 1, mask | 1 << j);
            }
        }
    }
    let mut walk = Walk {
        n,
        r,
        members: &mut members,
    };
    walk.go(&rows, &BigInt::one(), 0, 0, 0);
    Ok(BasisSet::new(n, r, members))
}

/// Brute-force exchange axiom: nonempty, and for every pair B1, B2 and
/// every x in B1 - B2 there is y in B2 - B1 with B1 - x + y in the family.
pub fn check_basis_exchange(b: &BasisSet) -> bool {
    if b.members.is_empty() {
        return false;
    }
    let all: Vec<u64> = b.members.iter().copied().collect();
    for &b1 in &all {
        for &b2 in &all {
            if b1 == b2 {
                continue;
            }
            let mut rest = b1 & !b2;
            while rest != 0 {
                let x = rest & rest.wrapping_neg();
                rest ^= x;
                let mut cands = b2 & !b1;
                let mut ok = false;
                while cands != 0 {
                    let y = cands & cands.wrapping_neg();
                    cands ^= y;
                    if b.members.contains(&((b1 & !x) | y)) {
                        ok = true;
                        break;
                    }
                }
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn c2_has_two_singleton_bases() {
        let m = corpus::corpus_matroid("c2").unwrap();
        let b = enumerate_bases(&m).unwrap();
        assert_eq!(b.members, BTreeSet::from([0b01u64, 0b10]));
    }

    #[test]
    fn diamond_has_eight_bases_of_size_three() {
        let m = corpus::corpus_matroid("diamond").unwrap();
        let b = enumerate_bases(&m).unwrap();
        assert_eq!(b.r, 3);
        assert_eq!(b.len(), 8);
        assert!(b.members.iter().all(|m| m.count_ones() == 3));
    }

    #[test]
    fn coloops_have_one_basis() {
        let m = corpus::corpus_matroid("coloops3").unwrap();
        let b = enumerate_bases(&m).unwrap();
        assert_eq!(b.members, BTreeSet::from([0b111u64]));
    }

    #[test]
    fn banana10_dual_bases_are_all_nine_subsets() {
        let m = corpus::corpus_matroid("banana10").unwrap().dual();
        let b = enumerate_bases(&m).unwrap();
        assert_eq!(b.r, 9);
        assert_eq!(b.len(), 10);
    }

    #[test]
    fn exchange_axiom_on_corpus_and_counterexample() {
        for (_, m) in corpus::corpus() {
            assert!(check_basis_exchange(&enumerate_bases(&m).unwrap()));
        }
        let bad = BasisSet::new(4, 2, BTreeSet::from([0b0011u64, 0b1100]));
        assert!(!check_basis_exchange(&bad));
        let empty_basis = BasisSet::new(0, 0, BTreeSet::from([0u64]));
        assert!(check_basis_exchange(&empty_basis));
    }
}
