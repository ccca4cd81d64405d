//! Configuration polynomials: Ψ_M = Σ_{bases B} ∏_{e∉B} λ_e.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::basis::enumerate_bases;
use crate::error::{Error, Result};
use crate::matroid::{ElementClass, RegularMatroid};
use crate::poly::{full_mask, inv_mod, MultilinearPoly};

/// One monomial per basis, supported on the cobasis. A free matroid
/// (rank = ground size) gives the constant 1.
pub fn psi_from_bases(m: &RegularMatroid) -> MultilinearPoly {
    let full = full_mask(m.n());
    let mut terms = BTreeMap::new();
    let bases = enumerate_bases(m).expect("matroid ground already fits the mask width");
    for &b in &bases.members {
        terms.insert(full & !b, BigInt::one());
    }
    MultilinearPoly::new(m.ground().to_vec(), terms).expect("ground labels are valid vars")
}

/// Same polynomial through the recurrence
///   Ψ_M = λ_e·Ψ_{M∖e} + Ψ_{M/e}   for ordinary e,
///   Ψ_M = Ψ_{M/e}                  for a coloop,
///   Ψ_M = λ_e·Ψ_{M∖e}              for a loop.
/// Loops and coloops are stripped first; branching is on the lowest
/// surviving ordinary element. Minors are memoized by the pair
/// (surviving elements, contracted elements) over the original ground,
/// which pins the minor down exactly.
pub fn psi_deletion_contraction(m: &RegularMatroid) -> MultilinearPoly {
    let vars = m.ground().to_vec();
    let positions: BTreeMap<&str, usize> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let mut memo: BTreeMap<(u64, u64), MultilinearPoly> = BTreeMap::new();
    rec(m, &vars, &positions, 0, &mut memo)
}

fn rec(
    m: &RegularMatroid,
    vars: &[String],
    positions: &BTreeMap<&str, usize>,
    contracted: u64,
    memo: &mut BTreeMap<(u64, u64), MultilinearPoly>,
) -> MultilinearPoly {
    if m.n() == 0 {
        return MultilinearPoly::one(vars.to_vec());
    }
    let mut survivors = 0u64;
    for g in m.ground() {
        survivors |= 1 << positions[g.as_str()];
    }
    let key = (survivors, contracted);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let mut pick = 0usize;
    let mut class = ElementClass::Ordinary;
    for c in 0..m.n() {
        let cl = m.class_of_column(c);
        if cl != ElementClass::Ordinary {
            pick = c;
            class = cl;
            break;
        }
    }
    let label = m.ground()[pick].clone();
    let bit = positions[label.as_str()];
    let out = match class {
        ElementClass::Loop => {
            let del = m.delete(&label).expect("label present");
            rec(&del, vars, positions, contracted, memo)
                .mul_var(bit)
                .expect("deletion removed the variable")
        }
        ElementClass::Coloop => {
            let con = m.contract(&label).expect("not a loop");
            rec(&con, vars, positions, contracted | 1 << bit, memo)
        }
        ElementClass::Ordinary => {
            let con = m.contract(&label).expect("not a loop");
            let del = m.delete(&label).expect("label present");
            let a = rec(&con, vars, positions, contracted | 1 << bit, memo);
            let b = rec(&del, vars, positions, contracted, memo)
                .mul_var(bit)
                .expect("deletion removed the variable");
            a.add(&b).expect("same variable list")
        }
    };
    memo.insert(key, out.clone());
    out
}

/// Ψ of every irreducible component on its own variable block. Embedded
/// back into the full ground and multiplied together, they reassemble Ψ_M.
pub fn factor_by_components(m: &RegularMatroid) -> Vec<MultilinearPoly> {
    m.irreducible_components()
        .iter()
        .map(|comp| psi_from_bases(&m.restriction(comp)))
        .collect()
}

/// Inversion identity for a claimed pair (Ψ, Ψ*):
///   Ψ(λ) = (∏ λ_e) · Ψ*(1/λ)
/// checked exactly at a rational point with nonzero coordinates.
pub fn cremona_pair_holds(
    psi: &MultilinearPoly,
    psi_dual: &MultilinearPoly,
    point: &[BigRational],
) -> Result<bool> {
    for v in point {
        if v.numer() == &BigInt::from(0) {
            return Err(Error::NotInvertible("zero coordinate".to_string()));
        }
    }
    let lhs = psi.evaluate_rational(point)?;
    let inverted: Vec<BigRational> = point.iter().map(|v| v.recip()).collect();
    let mut rhs = psi_dual.evaluate_rational(&inverted)?;
    for v in point {
        rhs *= v;
    }
    Ok(lhs == rhs)
}

/// The inversion identity for M against its actual dual, at a rational
/// point with all coordinates nonzero.
pub fn cremona_identity_check(m: &RegularMatroid, point: &[BigRational]) -> Result<bool> {
    cremona_pair_holds(&psi_from_bases(m), &psi_from_bases(&m.dual()), point)
}

/// Same identity in F_p at a point of units.
pub fn cremona_identity_check_mod(m: &RegularMatroid, point: &[u64], p: u64) -> Result<bool> {
    let psi = psi_from_bases(m);
    let psi_dual = psi_from_bases(&m.dual());
    if point.len() != m.n() {
        return Err(Error::LengthMismatch {
            want: m.n(),
            got: point.len(),
        });
    }
    let mut inverted = Vec::with_capacity(point.len());
    let mut product = 1u64;
    for &x in point {
        inverted.push(inv_mod(x, p)?);
        product = product * (x % p) % p;
    }
    let lhs = psi.evaluate_mod(point, p)?;
    let rhs = psi_dual.evaluate_mod(&inverted, p)? * product % p;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::expansion::{expand, LengthMap};
    use crate::jacobian::jacobian_order;
    use rand::Rng;
    use rand::SeedableRng;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn diamond_psi_has_the_eight_expected_monomials() {
        let m = corpus::get("diamond").unwrap();
        let psi = psi_from_bases(&m);
        let got: Vec<u64> = psi.terms().keys().copied().collect();
        // Pairs: e1e3 e2e3 e1e4 e2e4 e1e5 e2e5 e3e5 e4e5.
        assert_eq!(got, vec![5, 6, 9, 10, 17, 18, 20, 24]);
        assert!(psi.terms().values().all(|c| c == &big(1)));
        assert!(psi.is_homogeneous());
        assert_eq!(psi.degree(), 2);
    }

    #[test]
    fn cycle_psi_is_the_sum_of_variables() {
        let m = corpus::get("c3").unwrap();
        let psi = psi_from_bases(&m);
        assert_eq!(
            psi.terms().keys().copied().collect::<Vec<_>>(),
            vec![1, 2, 4]
        );
    }

    #[test]
    fn free_matroid_psi_is_one() {
        let m = corpus::get("coloops3").unwrap();
        let psi = psi_from_bases(&m);
        assert_eq!(psi, MultilinearPoly::one(m.ground().to_vec()));
    }

    #[test]
    fn deletion_contraction_matches_basis_sum_on_corpus() {
        for id in corpus::ids() {
            let m = corpus::get(id).unwrap();
            assert_eq!(psi_deletion_contraction(&m), psi_from_bases(&m), "{id}");
        }
    }

    #[test]
    fn loop_divides_psi_and_coloop_is_absent() {
        // One loop (zero column) next to a parallel pair: λ_ell divides Ψ.
        let m = RegularMatroid::new(
            vec![vec![1, 1, 0]],
            vec!["e1".into(), "e2".into(), "ell".into()],
        )
        .unwrap();
        let psi = psi_deletion_contraction(&m);
        assert!(!psi.is_zero());
        assert!(psi.terms().keys().all(|mask| mask & 0b100 != 0));

        // A coloop never appears in any monomial: ∂Ψ/∂λ_b = 0.
        let c3 = corpus::get("c3").unwrap();
        let bridge = RegularMatroid::new(vec![vec![1]], vec!["b".into()]).unwrap();
        let with_coloop = c3.direct_sum(&bridge).unwrap();
        let psi = psi_deletion_contraction(&with_coloop);
        assert!(!psi.is_zero());
        assert!(psi.terms().keys().all(|mask| mask & 0b1000 == 0));
    }

    #[test]
    fn evaluation_examples() {
        let m = corpus::get("diamond").unwrap();
        let psi = psi_from_bases(&m);
        let ones = vec![big(1); 5];
        assert_eq!(psi.evaluate(&ones, None).unwrap(), big(8));
        let mut v = ones.clone();
        v[4] = big(2);
        assert_eq!(psi.evaluate(&v, None).unwrap(), big(12));

        let c2 = corpus::get("c2").unwrap();
        let p2 = psi_from_bases(&c2);
        assert_eq!(p2.evaluate(&[big(2), big(3)], None).unwrap(), big(5));
    }

    #[test]
    fn psi_evaluates_to_jacobian_order_of_the_expansion() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for id in ["c2", "c3", "diamond", "k4"] {
            let m = corpus::get(id).unwrap();
            let psi = psi_from_bases(&m);
            for _ in 0..5 {
                let lens: Vec<u64> = (0..m.n()).map(|_| rng.gen_range(1..=3)).collect();
                if lens.iter().sum::<u64>() > 16 {
                    continue;
                }
                let lm = LengthMap::new(
                    m.ground()
                        .iter()
                        .cloned()
                        .zip(lens.iter().copied())
                        .collect(),
                )
                .unwrap();
                let (mx, _) = expand(&m, &lm).unwrap();
                let point: Vec<BigInt> = lens.iter().map(|&l| big(l as i64)).collect();
                assert_eq!(
                    psi.evaluate(&point, None).unwrap(),
                    jacobian_order(&mx),
                    "{id} at {lens:?}"
                );
            }
        }
    }

    #[test]
    fn components_factor_psi() {
        for id in corpus::ids() {
            let m = corpus::get(id).unwrap();
            let factors = factor_by_components(&m);
            let mut product = MultilinearPoly::one(m.ground().to_vec());
            for f in &factors {
                let emb = f.embed(m.ground()).unwrap();
                product = product.mul_disjoint(&emb).unwrap();
            }
            assert_eq!(product, psi_from_bases(&m), "{id}");
        }
        let diamond_c2 = corpus::get("diamond_c2").unwrap();
        assert_eq!(factor_by_components(&diamond_c2).len(), 2);
        assert_eq!(factor_by_components(&corpus::get("coloops3").unwrap()).len(), 3);
    }

    #[test]
    fn loop_plus_pair_factors() {
        let m = RegularMatroid::new(
            vec![vec![1, 1, 0]],
            vec!["e1".into(), "e2".into(), "ell".into()],
        )
        .unwrap();
        let fs = factor_by_components(&m);
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].vars(), &["e1".to_string(), "e2".to_string()]);
        assert_eq!(
            fs[0].terms().keys().copied().collect::<Vec<_>>(),
            vec![1, 2]
        );
        assert_eq!(fs[1].vars(), &["ell".to_string()]);
        assert_eq!(
            fs[1].terms().keys().copied().collect::<Vec<_>>(),
            vec![1]
        );
    }

    #[test]
    fn cremona_hand_example() {
        let m = corpus::get("c2").unwrap();
        let point = vec![
            BigRational::from_integer(big(2)),
            BigRational::from_integer(big(3)),
        ];
        assert!(cremona_identity_check(&m, &point).unwrap());
    }

    #[test]
    fn cremona_random_points_rational_and_mod_p() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for id in corpus::ids() {
            let m = corpus::get(id).unwrap();
            for _ in 0..10 {
                let point: Vec<BigRational> = (0..m.n())
                    .map(|_| {
                        let n = loop {
                            let x: i64 = rng.gen_range(-9..=9);
                            if x != 0 {
                                break x;
                            }
                        };
                        let d: i64 = rng.gen_range(1..=9);
                        BigRational::new(big(n), big(d))
                    })
                    .collect();
                assert!(cremona_identity_check(&m, &point).unwrap(), "{id}");
            }
            for p in [3u64, 5, 7] {
                for _ in 0..10 {
                    let point: Vec<u64> = (0..m.n()).map(|_| rng.gen_range(1..p)).collect();
                    assert!(cremona_identity_check_mod(&m, &point, p).unwrap(), "{id} p={p}");
                }
            }
        }
    }

    #[test]
    fn cremona_negative_control() {
        // Pair the diamond's Ψ with the Ψ of a *different* matroid posing
        // as the dual: swap two columns of the true dual's matrix while
        // keeping labels in place.
        let m = corpus::get("diamond").unwrap();
        let dual = m.dual();
        let mut rows: Vec<Vec<i64>> = dual.matrix().to_vec();
        for r in &mut rows {
            r.swap(0, 2);
        }
        let fake = RegularMatroid::new(rows, dual.ground().to_vec()).unwrap();
        let psi = psi_from_bases(&m);
        let fake_psi = psi_from_bases(&fake);
        assert_ne!(fake_psi, psi_from_bases(&dual));
        let point: Vec<BigRational> = (2..7)
            .map(|x| BigRational::from_integer(big(x)))
            .collect();
        assert!(!cremona_pair_holds(&psi, &fake_psi, &point).unwrap());
        assert!(cremona_pair_holds(&psi, &psi_from_bases(&dual), &point).unwrap());
    }

    #[test]
    fn zero_coordinate_is_rejected() {
        let m = corpus::get("c2").unwrap();
        let point = vec![
            BigRational::from_integer(big(0)),
            BigRational::from_integer(big(3)),
        ];
        assert!(cremona_identity_check(&m, &point).is_err());
        assert!(cremona_identity_check_mod(&m, &[7, 3], 7).is_err());
    }
}
