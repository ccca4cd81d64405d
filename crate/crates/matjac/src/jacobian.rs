//! Jacobian groups of regular matroids.
//!
//! The Jacobian is realized as coker(A·Aᵀ) for any full-row-rank
//! representation A. Its order is det(A·Aᵀ), which equals the number of
//! bases by Cauchy-Binet, since every maximal minor of A is 0 or ±1.

use num_bigint::BigInt;
use num_traits::One;

use crate::matrix;
use crate::matroid::RegularMatroid;
use crate::snf::smith_invariant_factors;

/// Exact product A·Aᵀ: symmetric, positive definite for full row rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    pub entries: Vec<Vec<BigInt>>,
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn det(&self) -> BigInt {
        matrix::bareiss_det(self.entries.clone())
    }
}

/// Finite abelian group in invariant-factor form: d_1 | d_2 | ... | d_k,
/// each factor at least 2, order the product. The trivial group is the
/// empty list with order 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub invariant_factors: Vec<BigInt>,
    pub order: BigInt,
}

pub fn gram(m: &RegularMatroid) -> GramMatrix {
    GramMatrix {
        entries: matrix::gram_product(m.matrix()),
    }
}

/// Jacobian group as coker(A·Aᵀ): the Smith invariant factors bigger
/// than 1. All factors are nonzero because the Gram matrix of a
/// full-row-rank A is nonsingular.
pub fn jacobian_group(m: &RegularMatroid) -> AbelianGroup {
    let g = gram(m);
    let all = smith_invariant_factors(&g.entries);
    let mut order = BigInt::one();
    for d in &all {
        order *= d;
    }
    let invariant_factors: Vec<BigInt> =
        all.into_iter().filter(|d| d > &BigInt::one()).collect();
    AbelianGroup {
        invariant_factors,
        order,
    }
}

/// Order of the Jacobian, det(A·Aᵀ) = number of bases.
pub fn jacobian_order(m: &RegularMatroid) -> BigInt {
    gram(m).det()
}

/// Order via the flow lattice ker A ∩ Zⁿ: an integral kernel basis K is
/// computed by unimodular column reduction and det(KᵀK) returned. Equals
/// jacobian_order, but through an independent route, so it serves as a
/// cross-check.
pub fn flow_lattice_order(m: &RegularMatroid) -> BigInt {
    let k = matrix::kernel_lattice_basis(m.matrix(), m.n());
    debug_assert_eq!(k.len(), m.n() - m.rank());
    matrix::gram_det_of_vectors(&k)
}
