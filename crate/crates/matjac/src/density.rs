//! Densities of length maps whose Jacobian order is divisible by p.
//!
//! Over the box {1..m}^E the condition "p divides #Jac(M, λ)" depends
//! only on residues, and for λ in (F_p)^E it is exactly "Ψ_M(λ) ≡ 0".
//! So the limiting density is the affine zero count of Ψ over F_p
//! divided by p^#E, and finite boxes sandwich it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::bounds::big_o_constant;
use crate::count;
use crate::error::{Error, Result};
use crate::expansion::LengthMap;
use crate::matroid::RegularMatroid;
use crate::poly::MultilinearPoly;
use crate::psi::psi_from_bases;
use crate::EMPIRICAL_BUDGET;

/// Residues in the window {1..p}: a canonical positive representative
/// per element, with 0 stored as p so every entry is a usable length.
pub type ResidueMap = BTreeMap<String, u64>;

/// Reduces each length into {1..p}. The residue map is itself a valid
/// length map and expands to a matroid with the same Jacobian p-rank.
pub fn reduce_mod_p(lengths: &LengthMap, p: u64) -> ResidueMap {
    lengths
        .values()
        .iter()
        .map(|(k, &v)| {
            let r = v % p;
            (k.clone(), if r == 0 { p } else { r })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityMode {
    /// Exact density over all of (Z/p)^E.
    Formula,
    /// Exhaustive count over the box {1..m}^E; the payload is m.
    Empirical(u64),
    /// Exact density over the torus ((Z/p)^*)^E.
    Torus,
}

/// An exact density. The fraction is kept as counted (zero count over box
/// size), not reduced, so the numerator stays readable as a count; `value`
/// reduces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub p: u64,
    pub numerator: BigInt,
    pub denominator: BigInt,
    pub mode: DensityMode,
    /// Which object the density was taken of, when not the default Ψ.
    pub subject: Option<String>,
    /// Set when Ψ is constant and the density is identically zero.
    pub trivial: bool,
}

impl DensityReport {
    pub fn value(&self) -> BigRational {
        BigRational::new(self.numerator.clone(), self.denominator.clone())
    }
}

fn report(num: BigInt, den: BigInt, p: u64, mode: DensityMode) -> DensityReport {
    DensityReport {
        p,
        numerator: num,
        denominator: den,
        mode,
        subject: None,
        trivial: false,
    }
}

/// μ(J_p) = #{λ in (F_p)^E : p | #Jac} / p^#E, via the affine zero
/// count of Ψ.
pub fn density_formula(m: &RegularMatroid, p: u64) -> Result<DensityReport> {
    let psi = psi_from_bases(m);
    psi_density_formula(&psi, p)
}

/// Same, for an arbitrary polynomial in place of Ψ.
pub fn psi_density_formula(psi: &MultilinearPoly, p: u64) -> Result<DensityReport> {
    count::check_prime(p)?;
    if psi.degree() == 0 {
        let zeros = count::affine_zeros(psi, p)?;
        let mut rep = report(
            BigInt::from(zeros),
            BigInt::from(p).pow(psi.var_count() as u32),
            p,
            DensityMode::Formula,
        );
        rep.trivial = true;
        return Ok(rep);
    }
    let affine = count::affine_zeros(psi, p)?;
    // A nonconstant homogeneous zero set is a cone: (p−1) | affine − 1.
    if psi.is_homogeneous() {
        debug_assert_eq!((affine - 1) % (p as u128 - 1), 0);
    }
    Ok(report(
        BigInt::from(affine),
        BigInt::from(p).pow(psi.var_count() as u32),
        p,
        DensityMode::Formula,
    ))
}

/// Density over the unit box: #{λ in {1..m_max}^E : Ψ(λ) ≡ 0 mod p} / m_max^E,
/// by exhaustive enumeration.
pub fn density_empirical(m: &RegularMatroid, p: u64, m_max: u64) -> Result<DensityReport> {
    count::check_prime(p)?;
    if m_max == 0 {
        return Err(Error::BoxTooSmall { m_max, p });
    }
    let psi = psi_from_bases(m);
    let n = psi.var_count();
    let total = checked_box(m_max, n)?;
    let terms = psi.terms_mod(p);
    if terms.is_empty() {
        let mut rep = report(
            BigInt::from(total),
            BigInt::from(total),
            p,
            DensityMode::Empirical(m_max),
        );
        rep.trivial = psi.degree() == 0;
        return Ok(rep);
    }
    let mut hits: u128 = 0;
    let mut digits = vec![1u64; n];
    loop {
        let mut acc: u64 = 0;
        for &(mask, c) in &terms {
            let mut prod = c;
            let mut bits = mask;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                prod = (prod as u128 * (digits[i] % p) as u128 % p as u128) as u64;
            }
            acc = (acc + prod) % p;
        }
        if acc == 0 {
            hits += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(report(
                    BigInt::from(hits),
                    BigInt::from(total),
                    p,
                    DensityMode::Empirical(m_max),
                ));
            }
            digits[i] += 1;
            if digits[i] <= m_max {
                break;
            }
            digits[i] = 1;
            i += 1;
        }
    }
}

fn checked_box(m_max: u64, n: usize) -> Result<u128> {
    let mut total: u128 = 1;
    for _ in 0..n {
        total = total.saturating_mul(m_max as u128);
        if total > EMPIRICAL_BUDGET {
            return Err(Error::BudgetExceeded {
                need: total,
                limit: EMPIRICAL_BUDGET,
            });
        }
    }
    Ok(total)
}

/// Outcome of comparing a box density against the residue density.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandwichReport {
    pub p: u64,
    pub m_max: u64,
    /// m_max = p·t + l with 0 ≤ l < p and t ≥ 1.
    pub t: u64,
    pub l: u64,
    pub empirical: DensityReport,
    pub formula: DensityReport,
    pub lower: BigRational,
    pub upper: BigRational,
    pub holds: bool,
    /// True exactly when p | m_max, which forces empirical == formula.
    pub exact: bool,
}

/// Checks (t/(t+1))^E μ_p ≤ μ_{m_max} ≤ ((t+1)/t)^E μ_p, where
/// m_max = p·t + l. Needs m_max ≥ p so that t ≥ 1.
pub fn sandwich_check(m: &RegularMatroid, p: u64, m_max: u64) -> Result<SandwichReport> {
    count::check_prime(p)?;
    if m_max < p {
        return Err(Error::BoxTooSmall { m_max, p });
    }
    let t = m_max / p;
    let l = m_max % p;
    let empirical = density_empirical(m, p, m_max)?;
    let formula = density_formula(m, p)?;
    let n = m.n() as i32;
    let ratio = BigRational::new(BigInt::from(t), BigInt::from(t + 1));
    let mu_p = formula.value();
    let lower = ratio.pow(n) * &mu_p;
    let upper = ratio.pow(-n) * &mu_p;
    let mu_box = empirical.value();
    let holds = lower <= mu_box && mu_box <= upper;
    let exact = l == 0;
    if exact {
        debug_assert_eq!(mu_box, mu_p);
    }
    Ok(SandwichReport {
        p,
        m_max,
        t,
        l,
        empirical,
        formula,
        lower,
        upper,
        holds,
        exact,
    })
}

/// μ(S_p): density of Ψ-zeros among length maps with all residues
/// invertible mod p.
pub fn torus_density(m: &RegularMatroid, p: u64) -> Result<DensityReport> {
    let psi = psi_from_bases(m);
    count::check_prime(p)?;
    if psi.degree() == 0 {
        let zeros = count::count_torus(&psi, p)?;
        let mut rep = report(
            BigInt::from(zeros),
            BigInt::from(p).pow(psi.var_count() as u32),
            p,
            DensityMode::Torus,
        );
        rep.trivial = true;
        return Ok(rep);
    }
    let zeros = count::count_torus(&psi, p)?;
    if psi.is_homogeneous() {
        debug_assert_eq!(zeros % (p as u128 - 1), 0);
    }
    Ok(report(
        BigInt::from(zeros),
        BigInt::from(p).pow(psi.var_count() as u32),
        p,
        DensityMode::Torus,
    ))
}

/// Torus densities of M and its dual agree: inversion λ ↦ λ^{-1} maps
/// torus zeros of Ψ_M onto torus zeros of Ψ_{M*}.
pub fn dual_density_check(m: &RegularMatroid, p: u64) -> Result<bool> {
    let a = torus_density(m, p)?;
    let b = torus_density(&m.dual(), p)?;
    Ok(a.numerator == b.numerator && a.denominator == b.denominator)
}

/// Result of testing |μ(J_p) − 1/p| ≤ (C+1)/p² with the explicit
/// envelope constant C.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticReport {
    pub p: u64,
    pub density: BigRational,
    pub target: BigRational,
    pub deviation: BigRational,
    pub bound: BigRational,
    pub big_o: BigInt,
    pub holds: bool,
}

/// The density of p-divisible Jacobians tends to 1/p with an explicit
/// second-order error for irreducible matroids.
pub fn asymptotic_check(m: &RegularMatroid, p: u64) -> Result<AsymptoticReport> {
    if m.n() == 0 {
        return Err(Error::EmptyGround);
    }
    if m.irreducible_components().len() != 1 {
        return Err(Error::Reducible);
    }
    let psi = psi_from_bases(m);
    let deg = psi.degree();
    if deg == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let big_o = big_o_constant(m.n() as i64 - 1, deg as u64)?;
    let rep = density_formula(m, p)?;
    let density = rep.value();
    let target = BigRational::new(BigInt::one(), BigInt::from(p));
    let deviation = (&density - &target).abs();
    let bound = BigRational::new(big_o.clone() + 1, BigInt::from(p).pow(2));
    let holds = deviation <= bound;
    Ok(AsymptoticReport {
        p,
        density,
        target,
        deviation,
        bound,
        big_o,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn frac(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn residue_window_is_one_through_p() {
        let lengths = LengthMap::new(
            [("a".into(), 4u64), ("b".into(), 9), ("c".into(), 3)]
                .into_iter()
                .collect(),
        )
        .unwrap();
        let r = reduce_mod_p(&lengths, 3);
        assert_eq!(r["a"], 1);
        assert_eq!(r["b"], 3); // 9 ≡ 0 maps to the top of the window
        assert_eq!(r["c"], 3);
        let r5 = reduce_mod_p(&lengths, 5);
        assert_eq!(r5["a"], 4);
        assert_eq!(r5["b"], 4);
        assert_eq!(r5["c"], 3);
    }

    #[test]
    fn two_cycle_density_is_one_over_p() {
        let m = corpus::get("c2").unwrap();
        for p in [2u64, 3, 5, 7, 11, 13] {
            let rep = density_formula(&m, p).unwrap();
            assert_eq!(rep.value(), frac(1, p as i64), "p={p}");
        }
    }

    #[test]
    fn diamond_density_examples() {
        let m = corpus::get("diamond").unwrap();
        let rep = density_formula(&m, 2).unwrap();
        // 16 affine zeros out of 2^5; the fraction stays unreduced.
        assert_eq!(rep.value(), frac(1, 2));
        assert_eq!(rep.numerator, BigInt::from(16));
        assert_eq!(rep.denominator, BigInt::from(32));
        assert!(!rep.trivial);
    }

    #[test]
    fn trivial_psi_has_zero_density() {
        let m = corpus::get("coloops3").unwrap();
        let rep = density_formula(&m, 3).unwrap();
        assert!(rep.trivial);
        assert_eq!(rep.numerator, BigInt::from(0));
    }

    #[test]
    fn empirical_matches_formula_on_full_boxes() {
        let c2 = corpus::get("c2").unwrap();
        let rep = density_empirical(&c2, 2, 2).unwrap();
        assert_eq!(rep.value(), frac(1, 2));
        let rep = density_empirical(&c2, 3, 3).unwrap();
        assert_eq!(rep.value(), frac(1, 3));
        let rep = density_empirical(&c2, 3, 6).unwrap();
        assert_eq!(rep.value(), frac(1, 3));
        let diamond = corpus::get("diamond").unwrap();
        let rep = density_empirical(&diamond, 2, 4).unwrap();
        assert_eq!(rep.value(), frac(1, 2));
    }

    #[test]
    fn empirical_partial_box_deviates_within_sandwich() {
        let c2 = corpus::get("c2").unwrap();
        // m_max = 3, p = 2: pairs (a,b) in {1,2,3}² with a+b even: 5 of 9.
        let rep = density_empirical(&c2, 2, 3).unwrap();
        assert_eq!(rep.value(), frac(5, 9));
        let s = sandwich_check(&c2, 2, 3).unwrap();
        assert!(s.holds);
        assert!(!s.exact);
        assert_eq!(s.t, 1);
        assert_eq!(s.l, 1);
        let s = sandwich_check(&c2, 2, 4).unwrap();
        assert!(s.holds);
        assert!(s.exact);
        assert_eq!(s.empirical.value(), s.formula.value());
    }

    #[test]
    fn sandwich_needs_a_full_period() {
        let c2 = corpus::get("c2").unwrap();
        assert!(matches!(
            sandwich_check(&c2, 5, 3),
            Err(Error::BoxTooSmall { m_max: 3, p: 5 })
        ));
    }

    #[test]
    fn torus_density_examples() {
        let c2 = corpus::get("c2").unwrap();
        // Torus zeros of a+b: p=2 has (1,1); p=5 has b = -a, 4 points.
        let rep = torus_density(&c2, 2).unwrap();
        assert_eq!(rep.value(), frac(1, 4));
        let rep = torus_density(&c2, 5).unwrap();
        assert_eq!(rep.value(), frac(4, 25));
        let diamond = corpus::get("diamond").unwrap();
        let rep = torus_density(&diamond, 2).unwrap();
        assert_eq!(rep.value(), frac(1, 32));
    }

    #[test]
    fn dual_torus_densities_agree() {
        for id in ["c2", "c3", "diamond", "k4", "banana3"] {
            let m = corpus::get(id).unwrap();
            for p in [2u64, 3, 5] {
                assert!(dual_density_check(&m, p).unwrap(), "{id} p={p}");
            }
        }
    }

    #[test]
    fn diamond_asymptotics() {
        let m = corpus::get("diamond").unwrap();
        for p in [2u64, 3, 5, 7, 11, 13] {
            let rep = asymptotic_check(&m, p).unwrap();
            assert!(rep.holds, "p={p}: {rep:?}");
            assert_eq!(rep.big_o, BigInt::from(7));
        }
    }

    #[test]
    fn asymptotic_rejects_reducible() {
        let m = corpus::get("diamond_c2").unwrap();
        assert!(matches!(asymptotic_check(&m, 3), Err(Error::Reducible)));
    }
}
