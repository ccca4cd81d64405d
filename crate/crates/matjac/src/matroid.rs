//! Regular matroids represented by full-row-rank matrices with entries in
//! {-1, 0, 1}. All operations keep that representation: duality through the
//! standard form [I | D] -> [-D^T | I], minors through pivoting on unit
//! entries, connectivity through fundamental circuits.

// Row operations index two rows of one matrix at once; keep the loops.
#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use crate::matrix;
use crate::MAX_GROUND;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularMatroid {
    mat: Vec<Vec<i64>>,
    ground: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementClass {
    Loop,
    Coloop,
    Ordinary,
}

impl RegularMatroid {
    /// Builds a matroid from a representation matrix. The matrix must have
    /// entries in {-1, 0, 1}, full row rank, and pairwise distinct labels,
    /// one per column.
    pub fn new(mat: Vec<Vec<i64>>, ground: Vec<String>) -> Result<Self> {
        let n = ground.len();
        if n > MAX_GROUND {
            return Err(Error::GroundTooLarge(n));
        }
        for (row, r) in mat.iter().enumerate() {
            if r.len() != n {
                return Err(Error::RaggedMatrix {
                    row,
                    want: n,
                    got: r.len(),
                });
            }
            for &x in r {
                if !(-1..=1).contains(&x) {
                    return Err(Error::EntryOutOfRange(x));
                }
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for label in &ground {
            if !seen.insert(label.clone()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        let found = matrix::rank(&mat);
        if found != mat.len() {
            return Err(Error::RankDeficient {
                rows: mat.len(),
                found,
            });
        }
        Ok(RegularMatroid { mat, ground })
    }

    pub fn rank(&self) -> usize {
        self.mat.len()
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.mat
    }

    pub fn element_index(&self, label: &str) -> Result<usize> {
        self.ground
            .iter()
            .position(|g| g == label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    /// True when the column subset is a basis, decided by |det| = 1.
    pub fn is_basis_mask(&self, mask: u64) -> bool {
        if mask.count_ones() as usize != self.rank() {
            return false;
        }
        let cols: Vec<u32> = (0..self.n() as u32)
            .filter(|&c| mask >> c & 1 == 1)
            .collect();
        matrix::det_of_columns(&self.mat, &cols).abs() == BigInt::one()
    }

    fn column_is_zero(&self, c: usize) -> bool {
        self.mat.iter().all(|r| r[c] == 0)
    }

    /// Standard-form data: pivot column per row after Gauss-Jordan
    /// elimination, plus the fully reduced matrix. Pivots are unit entries,
    /// so the reduction is exact over the integers for regular inputs.
    fn gauss_jordan(&self) -> (Vec<usize>, Vec<Vec<i64>>) {
        let r = self.rank();
        let n = self.n();
        let mut w = self.mat.clone();
        let mut pivots = Vec::with_capacity(r);
        for i in 0..r {
            let j = (0..n)
                .find(|&j| !pivots.contains(&j) && w[i][j] != 0)
                .expect("full row rank");
            let s = w[i][j];
            debug_assert!(s == 1 || s == -1, "pivot on a unit entry");
            if s == -1 {
                for x in w[i].iter_mut() {
                    *x = -*x;
                }
            }
            for k in 0..r {
                if k != i && w[k][j] != 0 {
                    let f = w[k][j];
                    for c in 0..n {
                        w[k][c] -= f * w[i][c];
                    }
                }
            }
            pivots.push(j);
        }
        (pivots, w)
    }

    /// Dual matroid: reduce to [I | D] on unit pivots and emit [-D^T | I]
    /// in the original column order. Bases of the result are exactly the
    /// complements of bases of self.
    pub fn dual(&self) -> RegularMatroid {
        let n = self.n();
        let (pivots, w) = self.gauss_jordan();
        let non_pivots: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        let mut out = vec![vec![0i64; n]; non_pivots.len()];
        for (k, &j) in non_pivots.iter().enumerate() {
            out[k][j] = 1;
            for (i, &pj) in pivots.iter().enumerate() {
                out[k][pj] = -w[i][j];
            }
        }
        RegularMatroid::new(out, self.ground.clone()).expect("dual of a regular matroid")
    }

    /// Deletes the element. If it was a coloop the rank drops, so one
    /// dependent row is removed to restore full row rank.
    pub fn delete(&self, e: &str) -> Result<RegularMatroid> {
        let c = self.element_index(e)?;
        let rows: Vec<Vec<i64>> = self
            .mat
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let keep = independent_row_subset(&rows);
        let rows = keep.into_iter().map(|i| rows[i].clone()).collect();
        let ground = self
            .ground
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != c)
            .map(|(_, g)| g.clone())
            .collect();
        RegularMatroid::new(rows, ground)
    }

    /// Contracts the element by pivoting on one of its unit entries and
    /// removing the pivot row and the column. Errors on loops.
    pub fn contract(&self, e: &str) -> Result<RegularMatroid> {
        let c = self.element_index(e)?;
        if self.column_is_zero(c) {
            return Err(Error::LoopContraction(e.to_string()));
        }
        let mut w = self.mat.clone();
        let pr = (0..w.len()).find(|&i| w[i][c] != 0).unwrap();
        let s = w[pr][c];
        debug_assert!(s == 1 || s == -1);
        for i in 0..w.len() {
            if i != pr && w[i][c] != 0 {
                let f = w[i][c] * s;
                for j in 0..self.n() {
                    w[i][j] -= f * w[pr][j];
                }
            }
        }
        let rows: Vec<Vec<i64>> = w
            .into_iter()
            .enumerate()
            .filter(|&(i, _)| i != pr)
            .map(|(_, r)| {
                r.into_iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, x)| x)
                    .collect()
            })
            .collect();
        let ground = self
            .ground
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != c)
            .map(|(_, g)| g.clone())
            .collect();
        RegularMatroid::new(rows, ground)
    }

    /// Loop: zero column. Coloop: rank drops when the column is removed.
    pub fn element_class(&self, e: &str) -> Result<ElementClass> {
        let c = self.element_index(e)?;
        Ok(self.class_of_column(c))
    }

    pub fn class_of_column(&self, c: usize) -> ElementClass {
        if self.column_is_zero(c) {
            return ElementClass::Loop;
        }
        let rows: Vec<Vec<i64>> = self
            .mat
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        if matrix::rank(&rows) < self.rank() {
            ElementClass::Coloop
        } else {
            ElementClass::Ordinary
        }
    }

    /// Finest partition of the ground set into connectivity classes,
    /// computed from the fundamental circuits of one basis. Loops and
    /// coloops are singleton classes. The partition does not depend on the
    /// chosen basis.
    pub fn irreducible_components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let (pivots, w) = self.gauss_jordan();
        for e in 0..n {
            if pivots.contains(&e) || self.column_is_zero(e) {
                continue;
            }
            // Fundamental circuit of e: e plus the pivots with a nonzero
            // coefficient in the reduced column.
            for (i, &pj) in pivots.iter().enumerate() {
                if w[i][e] != 0 {
                    let a = find(&mut parent, e);
                    let b = find(&mut parent, pj);
                    parent[a] = b;
                }
            }
        }
        let mut classes: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for e in 0..n {
            let root = find(&mut parent, e);
            classes.entry(root).or_default().push(e);
        }
        let mut out: Vec<Vec<usize>> = classes.into_values().collect();
        out.sort_by_key(|c| c[0]);
        out
    }

    /// Restriction to a sorted list of columns, with dependent rows dropped.
    pub fn restriction(&self, cols: &[usize]) -> RegularMatroid {
        let rows: Vec<Vec<i64>> = self
            .mat
            .iter()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect();
        let keep = independent_row_subset(&rows);
        let rows: Vec<Vec<i64>> = keep.into_iter().map(|i| rows[i].clone()).collect();
        let ground = cols.iter().map(|&c| self.ground[c].clone()).collect();
        RegularMatroid::new(rows, ground).expect("restriction of a regular matroid")
    }

    /// Block-diagonal direct sum. Labels must stay pairwise distinct.
    pub fn direct_sum(&self, other: &RegularMatroid) -> Result<RegularMatroid> {
        let n1 = self.n();
        let n2 = other.n();
        let mut rows = Vec::with_capacity(self.rank() + other.rank());
        for r in &self.mat {
            let mut row = r.clone();
            row.extend(std::iter::repeat_n(0, n2));
            rows.push(row);
        }
        for r in &other.mat {
            let mut row = vec![0i64; n1];
            row.extend_from_slice(r);
            rows.push(row);
        }
        let mut ground = self.ground.clone();
        ground.extend(other.ground.iter().cloned());
        RegularMatroid::new(rows, ground)
    }
}

/// Indices of a maximal independent subset of the rows, scanning in order.
/// Row operations never look at dropped rows, so the kept rows are original
/// rows of the input (submatrix discipline keeps unimodularity).
fn independent_row_subset(rows: &[Vec<i64>]) -> Vec<usize> {
    let nc = rows.first().map_or(0, |r| r.len());
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    let mut keep = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut cand = matrix::to_big(std::slice::from_ref(row)).pop().unwrap();
        // Reduce against the accepted rows (kept in echelon form).
        for b in &basis {
            let lead = b.iter().position(|x| !x.is_zero()).unwrap();
            if !cand[lead].is_zero() {
                let f = cand[lead].clone();
                let g = b[lead].clone();
                for j in 0..nc {
                    cand[j] = &cand[j] * &g - &f * &b[j];
                }
            }
        }
        if cand.iter().any(|x| !x.is_zero()) {
            keep.push(i);
            basis.push(cand);
            basis.sort_by_key(|b| b.iter().position(|x| !x.is_zero()).unwrap());
        }
    }
    keep
}
