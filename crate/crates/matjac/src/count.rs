//! Exact zero counts of multilinear polynomials over F_p.
//!
//! Two independent routes: a naive exhaustive loop over F_pⁿ (the oracle,
//! deliberately unoptimized) and an eliminative O(p^{n-1}) kernel that
//! solves for one pivot variable per assignment of the others. The two
//! must agree; tests enforce it.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bounds::proj_points;
use crate::error::{Error, Result};
use crate::poly::MultilinearPoly;
use crate::{ELIMINATIVE_BUDGET, MAX_PRIME, NAIVE_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    Naive,
    Eliminative,
}

/// Zero counts of one polynomial at one prime. Torus zeros are filled
/// only when requested; they cost a second enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub p: u64,
    pub n_vars: usize,
    pub affine_zeros: u128,
    pub projective_points: u128,
    pub torus_zeros: Option<u128>,
}

pub fn check_prime(p: u64) -> Result<()> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
        return Err(Error::NotPrime(p));
    }
    if p > MAX_PRIME {
        return Err(Error::PrimeTooLarge(p));
    }
    Ok(())
}

fn checked_pow(base: u64, exp: usize, limit: u128) -> Result<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
        if acc > limit {
            return Err(Error::BudgetExceeded { need: acc, limit });
        }
    }
    Ok(acc)
}

/// Exhaustive count of zeros of psi in F_pⁿ. The oracle: one evaluation
/// per point, no shortcuts.
pub fn count_affine_naive(psi: &MultilinearPoly, p: u64) -> Result<u128> {
    check_prime(p)?;
    let n = psi.var_count();
    let total = checked_pow(p, n, NAIVE_BUDGET)?;
    let terms = psi.terms_mod(p);
    if terms.is_empty() {
        return Ok(total);
    }
    let mut digits = vec![0u64; n];
    let mut count = 0u128;
    loop {
        let mut acc = 0u64;
        for &(mask, c) in &terms {
            let mut t = c;
            let mut bits = mask;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                t = t * digits[i] % p;
            }
            acc = (acc + t) % p;
        }
        if acc == 0 {
            count += 1;
        }
        let mut k = 0;
        while k < n {
            digits[k] += 1;
            if digits[k] < p {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        if k == n {
            return Ok(count);
        }
    }
}

/// Exhaustive count of zeros with every coordinate nonzero.
pub fn count_torus_naive(psi: &MultilinearPoly, p: u64) -> Result<u128> {
    check_prime(p)?;
    let n = psi.var_count();
    checked_pow(p, n, NAIVE_BUDGET)?;
    let terms = psi.terms_mod(p);
    if terms.is_empty() {
        return checked_pow(p - 1, n, NAIVE_BUDGET);
    }
    let mut digits = vec![1u64; n];
    let mut count = 0u128;
    loop {
        let mut acc = 0u64;
        for &(mask, c) in &terms {
            let mut t = c;
            let mut bits = mask;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                t = t * digits[i] % p;
            }
            acc = (acc + t) % p;
        }
        if acc == 0 {
            count += 1;
        }
        let mut k = 0;
        while k < n {
            digits[k] += 1;
            if digits[k] < p {
                break;
            }
            digits[k] = 1;
            k += 1;
        }
        if k == n {
            return Ok(count);
        }
    }
}

fn pivot_index(psi: &MultilinearPoly, pivot: &str) -> Result<usize> {
    psi.vars()
        .iter()
        .position(|v| v == pivot)
        .ok_or_else(|| Error::InvalidPivot(format!("unknown variable {pivot}")))
}

/// Lowest variable occurring in some monomial; errors on constants.
pub fn default_pivot(psi: &MultilinearPoly) -> Result<&str> {
    let mut used = 0u64;
    for m in psi.terms().keys() {
        used |= m;
    }
    if used == 0 {
        return Err(Error::ConstantPolynomial);
    }
    Ok(&psi.vars()[used.trailing_zeros() as usize])
}

/// Specializes the top remaining variable (mask `bit`) to the value `x`.
/// Terms are sorted by mask and `bit` dominates every remaining mask, so
/// the carriers of `bit` form the tail; clearing the bit keeps both halves
/// sorted and a single merge combines them.
fn specialize(terms: &[(u64, u64)], bit: u64, x: u64, p: u64) -> Vec<(u64, u64)> {
    let split = terms.partition_point(|&(m, _)| m & bit == 0);
    let (without, with) = terms.split_at(split);
    let mut out = Vec::with_capacity(terms.len());
    let (mut i, mut j) = (0, 0);
    while i < without.len() || j < with.len() {
        let mw = without.get(i).map(|&(m, _)| m);
        let mc = with.get(j).map(|&(m, _)| m & !bit);
        match (mw, mc) {
            (Some(a), Some(b)) if a == b => {
                let c = (without[i].1 + with[j].1 * x) % p;
                if c != 0 {
                    out.push((a, c));
                }
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a < b => {
                out.push(without[i]);
                i += 1;
            }
            (Some(_), Some(b)) => {
                let c = with[j].1 * x % p;
                if c != 0 {
                    out.push((b, c));
                }
                j += 1;
            }
            (Some(a), None) => {
                out.push((a, without[i].1));
                i += 1;
            }
            (None, Some(b)) => {
                let c = with[j].1 * x % p;
                if c != 0 {
                    out.push((b, c));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn const_val(terms: &[(u64, u64)]) -> u64 {
    debug_assert!(terms.len() <= 1 && terms.iter().all(|&(m, _)| m == 0));
    terms.first().map_or(0, |&(_, c)| c)
}

/// Leaf-level fiber sizes and the recursion over the non-pivot variables.
/// At a leaf the pivot equation reads g1·x + g0 = 0:
///   affine: one solution if g1 ≠ 0, p if g1 = g0 = 0, none otherwise;
///   torus:  the solution −g0/g1 is nonzero iff g0 ≠ 0; a free pivot
///           contributes its p−1 nonzero values.
fn rec_count(
    g1: &[(u64, u64)],
    g0: &[(u64, u64)],
    vars: &[u64],
    p: u64,
    torus: bool,
) -> u128 {
    let Some((&bit, rest)) = vars.split_first() else {
        let a = const_val(g1);
        let b = const_val(g0);
        return if torus {
            match (a != 0, b != 0) {
                (true, true) => 1,
                (true, false) => 0,
                (false, false) => (p - 1) as u128,
                (false, true) => 0,
            }
        } else if a != 0 {
            1
        } else if b == 0 {
            p as u128
        } else {
            0
        };
    };
    let lo = if torus { 1 } else { 0 };
    let mut acc = 0u128;
    for x in lo..p {
        let g1x = specialize(g1, bit, x, p);
        let g0x = specialize(g0, bit, x, p);
        acc += rec_count(&g1x, &g0x, rest, p, torus);
    }
    acc
}

fn eliminative(
    psi: &MultilinearPoly,
    p: u64,
    pivot: &str,
    workers: usize,
    torus: bool,
) -> Result<u128> {
    check_prime(p)?;
    if workers == 0 {
        return Err(Error::NoWorkers);
    }
    let n = psi.var_count();
    let pi = pivot_index(psi, pivot)?;
    checked_pow(p, n.saturating_sub(1), ELIMINATIVE_BUDGET)?;
    let (g1, g0) = psi.split_var(pi);
    let g1 = g1.terms_mod(p);
    let g0 = g0.terms_mod(p);
    if g1.is_empty() {
        return Err(Error::InvalidPivot(format!(
            "{pivot} is absent from every monomial mod {p}"
        )));
    }
    // Remaining variables, highest bit first, so each specialization peels
    // the dominating bit.
    let vars: Vec<u64> = (0..n)
        .rev()
        .filter(|&i| i != pi)
        .map(|i| 1u64 << i)
        .collect();
    let Some((&top, rest)) = vars.split_first() else {
        return Ok(rec_count(&g1, &g0, &[], p, torus));
    };
    let lo = if torus { 1u64 } else { 0 };
    let values: Vec<u64> = (lo..p).collect();
    if workers == 1 || values.len() == 1 {
        let mut acc = 0u128;
        for &x in &values {
            acc += rec_count(&specialize(&g1, top, x, p), &specialize(&g0, top, x, p), rest, p, torus);
        }
        return Ok(acc);
    }
    let w = workers.min(values.len());
    let partials = std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(w);
        for wi in 0..w {
            let g1 = &g1;
            let g0 = &g0;
            let values = &values;
            handles.push(scope.spawn(move || {
                let mut acc = 0u128;
                for &x in values.iter().skip(wi).step_by(w) {
                    acc += rec_count(
                        &specialize(g1, top, x, p),
                        &specialize(g0, top, x, p),
                        rest,
                        p,
                        torus,
                    );
                }
                acc
            }));
        }
        handles
            .into_iter()
            .map(|h| h.join().expect("counting worker"))
            .collect::<Vec<u128>>()
    });
    // Partials combine by addition in worker order; the total is the same
    // for every worker count.
    Ok(partials.iter().sum())
}

/// O(p^{n-1}) count: enumerate the non-pivot variables, solve for the
/// pivot. Equals count_affine_naive.
pub fn count_affine_eliminative(psi: &MultilinearPoly, p: u64, pivot: &str) -> Result<u128> {
    count_affine_eliminative_with_workers(psi, p, pivot, auto_workers())
}

pub fn count_affine_eliminative_with_workers(
    psi: &MultilinearPoly,
    p: u64,
    pivot: &str,
    workers: usize,
) -> Result<u128> {
    eliminative(psi, p, pivot, workers, false)
}

pub fn count_torus_eliminative(psi: &MultilinearPoly, p: u64, pivot: &str) -> Result<u128> {
    count_torus_eliminative_with_workers(psi, p, pivot, auto_workers())
}

pub fn count_torus_eliminative_with_workers(
    psi: &MultilinearPoly,
    p: u64,
    pivot: &str,
    workers: usize,
) -> Result<u128> {
    eliminative(psi, p, pivot, workers, true)
}

pub fn auto_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get().min(8))
}

/// Affine zero count by the cheapest valid route: direct formula for
/// constants, otherwise the eliminative kernel on the lowest variable.
pub fn affine_zeros(psi: &MultilinearPoly, p: u64) -> Result<u128> {
    check_prime(p)?;
    match default_pivot(psi) {
        Ok(pivot) => {
            let pivot = pivot.to_string();
            count_affine_eliminative(psi, p, &pivot)
        }
        Err(_) => {
            // Constant: either nowhere zero or everywhere zero.
            if psi.terms_mod(p).is_empty() {
                checked_pow(p, psi.var_count(), NAIVE_BUDGET)
            } else {
                Ok(0)
            }
        }
    }
}

/// Torus zero count, same dispatch as affine_zeros.
pub fn count_torus(psi: &MultilinearPoly, p: u64) -> Result<u128> {
    check_prime(p)?;
    match default_pivot(psi) {
        Ok(pivot) => {
            let pivot = pivot.to_string();
            count_torus_eliminative(psi, p, &pivot)
        }
        Err(_) => {
            if psi.terms_mod(p).is_empty() {
                checked_pow(p - 1, psi.var_count(), NAIVE_BUDGET)
            } else {
                Ok(0)
            }
        }
    }
}

/// #X(F_p) for the projective zero locus: (affine − 1)/(p − 1), exact by
/// homogeneity. Degree-0 input is rejected; projective space needs an
/// actual hypersurface.
pub fn projective_count(psi: &MultilinearPoly, p: u64) -> Result<u128> {
    if psi.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let affine = affine_zeros(psi, p)?;
    debug_assert_eq!((affine - 1) % (p as u128 - 1), 0);
    Ok((affine - 1) / (p as u128 - 1))
}

/// Projective zero count that also tolerates constants: a nonzero
/// constant cuts out the empty scheme, the zero polynomial all of
/// P^{n-1}.
fn projective_zeros_any(psi: &MultilinearPoly, p: u64) -> Result<u128> {
    if psi.degree() == 0 && !psi.terms_mod(p).is_empty() {
        return Ok(0);
    }
    let affine = affine_zeros(psi, p)?;
    debug_assert_eq!((affine - 1) % (p as u128 - 1), 0);
    Ok((affine - 1) / (p as u128 - 1))
}

/// Projective count of the common zeros of two polynomials on the same
/// variables, by one exhaustive affine pass.
fn projective_common_zeros(a: &MultilinearPoly, b: &MultilinearPoly, p: u64) -> Result<u128> {
    let ta = a.terms_mod(p);
    let tb = b.terms_mod(p);
    let constant_nonzero =
        |t: &[(u64, u64)]| t.len() == 1 && t[0].0 == 0;
    if constant_nonzero(&ta) || constant_nonzero(&tb) {
        return Ok(0);
    }
    let n = a.var_count();
    checked_pow(p, n, NAIVE_BUDGET)?;
    let eval = |terms: &[(u64, u64)], digits: &[u64]| -> u64 {
        let mut acc = 0u64;
        for &(mask, c) in terms {
            let mut t = c;
            let mut bits = mask;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                t = t * digits[i] % p;
            }
            acc = (acc + t) % p;
        }
        acc
    };
    let mut digits = vec![0u64; n];
    let mut count = 0u128;
    loop {
        if eval(&ta, &digits) == 0 && eval(&tb, &digits) == 0 {
            count += 1;
        }
        let mut k = 0;
        while k < n {
            digits[k] += 1;
            if digits[k] < p {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    debug_assert_eq!((count - 1) % (p as u128 - 1), 0);
    Ok((count - 1) / (p as u128 - 1))
}

/// Checks the fiber identity for the split F = λ_pivot·G₁ + G₀:
///
///   #X_F = q·#(X_{G₁} ∩ X_{G₀}) + #P^{N-2} − #X_{G₁} + ε
///
/// where the G-loci live in P^{N-2} and ε counts the pivot vertex
/// (1 if F(e_pivot) = 0, else 0). For deg F ≥ 2 the vertex always lies
/// on X_F, so ε = 1 and this is the displayed identity; for a linear F
/// the vertex term vanishes and the identity degenerates to the
/// hyperplane count. All counts are computed independently of the
/// identity (exhaustive or eliminative enumeration).
pub fn stembridge_identity_check(psi: &MultilinearPoly, pivot: &str, p: u64) -> Result<bool> {
    check_prime(p)?;
    if !psi.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let n = psi.var_count();
    let pi = pivot_index(psi, pivot)?;
    let (g1, g0) = psi.split_var(pi);
    if g1.terms_mod(p).is_empty() {
        return Err(Error::InvalidPivot(format!(
            "{pivot} is absent from every monomial mod {p}"
        )));
    }
    let g1 = g1.drop_var(pi)?;
    let g0 = g0.drop_var(pi)?;
    let x_f = BigInt::from(match count_affine_naive(psi, p) {
        Ok(aff) => (aff - 1) / (p as u128 - 1),
        Err(Error::BudgetExceeded { .. }) => projective_count(psi, p)?,
        Err(e) => return Err(e),
    });
    let x_g1 = BigInt::from(projective_zeros_any(&g1, p)?);
    let x_both = BigInt::from(projective_common_zeros(&g1, &g0, p)?);
    // ε: does the pivot vertex (0:…:0:1) lie on X_F?
    let vertex_value = (psi.coeff(1 << pi) + psi.coeff(0)) % BigInt::from(p);
    let eps = if vertex_value.is_zero() {
        BigInt::from(1)
    } else {
        BigInt::zero()
    };
    let rhs = BigInt::from(p) * &x_both + proj_points(p, n as i64 - 2) - &x_g1 + eps;
    Ok(x_f == rhs)
}

/// Runs the requested counting route and assembles the full report.
/// Requires a homogeneous input (the projective field is meaningless
/// otherwise); `workers` caps the eliminative kernel, `None` meaning
/// auto-detect.
pub fn count_report(
    psi: &MultilinearPoly,
    p: u64,
    method: CountMethod,
    pivot: Option<&str>,
    with_torus: bool,
    workers: Option<usize>,
) -> Result<CountReport> {
    check_prime(p)?;
    if !psi.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let workers = workers.unwrap_or_else(auto_workers);
    let resolved;
    let affine = match method {
        CountMethod::Naive => count_affine_naive(psi, p)?,
        CountMethod::Eliminative => {
            resolved = match pivot {
                Some(v) => v.to_string(),
                None => default_pivot(psi)?.to_string(),
            };
            count_affine_eliminative_with_workers(psi, p, &resolved, workers)?
        }
    };
    let projective = if psi.degree() == 0 && !psi.terms_mod(p).is_empty() {
        0
    } else {
        debug_assert_eq!((affine - 1) % (p as u128 - 1), 0);
        (affine - 1) / (p as u128 - 1)
    };
    let torus = if with_torus {
        Some(match method {
            CountMethod::Naive => count_torus_naive(psi, p)?,
            CountMethod::Eliminative => {
                let pivot = match pivot {
                    Some(v) => v.to_string(),
                    None => default_pivot(psi)?.to_string(),
                };
                count_torus_eliminative_with_workers(psi, p, &pivot, workers)?
            }
        })
    } else {
        None
    };
    Ok(CountReport {
        p,
        n_vars: psi.var_count(),
        affine_zeros: affine,
        projective_points: projective,
        torus_zeros: torus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::psi::psi_from_bases;
    use std::collections::BTreeMap;

    fn two_var_line() -> MultilinearPoly {
        // λ_e + λ_f
        let terms: BTreeMap<u64, BigInt> =
            [(1u64, BigInt::from(1)), (2, BigInt::from(1))].into_iter().collect();
        MultilinearPoly::new(vec!["e".into(), "f".into()], terms).unwrap()
    }

    #[test]
    fn naive_examples() {
        assert_eq!(count_affine_naive(&two_var_line(), 5).unwrap(), 5);
        let diamond = psi_from_bases(&corpus::get("diamond").unwrap());
        assert_eq!(count_affine_naive(&diamond, 2).unwrap(), 16);
        let one = MultilinearPoly::one(vec!["x".into()]);
        assert_eq!(count_affine_naive(&one, 3).unwrap(), 0);
    }

    #[test]
    fn eliminative_matches_naive_and_workers_agree() {
        for id in ["c2", "c3", "diamond", "k4", "banana3"] {
            let psi = psi_from_bases(&corpus::get(id).unwrap());
            for p in [2u64, 3, 5] {
                let naive = count_affine_naive(&psi, p).unwrap();
                for v in psi.vars() {
                    let elim = count_affine_eliminative_with_workers(&psi, p, v, 1).unwrap();
                    assert_eq!(naive, elim, "{id} p={p} pivot={v}");
                }
                for w in [2usize, 3, 8] {
                    let v = default_pivot(&psi).unwrap().to_string();
                    assert_eq!(
                        count_affine_eliminative_with_workers(&psi, p, &v, w).unwrap(),
                        naive,
                        "{id} p={p} workers={w}"
                    );
                }
            }
        }
    }

    #[test]
    fn torus_examples_and_agreement() {
        assert_eq!(count_torus_naive(&two_var_line(), 2).unwrap(), 1);
        assert_eq!(count_torus_naive(&two_var_line(), 5).unwrap(), 4);
        for id in ["c2", "c3", "diamond", "banana3"] {
            let psi = psi_from_bases(&corpus::get(id).unwrap());
            for p in [2u64, 3, 5] {
                let naive = count_torus_naive(&psi, p).unwrap();
                assert_eq!(count_torus(&psi, p).unwrap(), naive, "{id} p={p}");
            }
        }
    }

    #[test]
    fn projective_examples() {
        for p in [2u64, 3, 5, 7] {
            assert_eq!(projective_count(&two_var_line(), p).unwrap(), 1);
        }
        let diamond = psi_from_bases(&corpus::get("diamond").unwrap());
        assert_eq!(projective_count(&diamond, 2).unwrap(), 15);
        let one = MultilinearPoly::one(vec!["x".into()]);
        assert!(matches!(
            projective_count(&one, 3),
            Err(Error::ConstantPolynomial)
        ));
    }

    #[test]
    fn affine_equals_fiber_formula() {
        for id in ["c2", "c3", "diamond", "k4"] {
            let psi = psi_from_bases(&corpus::get(id).unwrap());
            for p in [2u64, 3, 5] {
                let aff = count_affine_naive(&psi, p).unwrap();
                let proj = projective_count(&psi, p).unwrap();
                assert_eq!(aff, (p as u128 - 1) * proj + 1, "{id} p={p}");
            }
        }
    }

    #[test]
    fn stembridge_on_small_corpus() {
        for id in ["c2", "c3", "diamond", "banana3", "k4"] {
            let psi = psi_from_bases(&corpus::get(id).unwrap());
            for p in [2u64, 3, 5] {
                for v in psi.vars() {
                    assert!(
                        stembridge_identity_check(&psi, v, p).unwrap(),
                        "{id} pivot={v} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn stembridge_with_vanishing_g0() {
        // Ψ of a loop next to a parallel pair: λ_ell·(λ_1+λ_2), so the
        // split at ell has G₀ = 0.
        let m = crate::matroid::RegularMatroid::new(
            vec![vec![1, 1, 0]],
            vec!["e1".into(), "e2".into(), "ell".into()],
        )
        .unwrap();
        let psi = psi_from_bases(&m);
        for p in [2u64, 3, 5] {
            assert!(stembridge_identity_check(&psi, "ell", p).unwrap());
            assert!(stembridge_identity_check(&psi, "e1", p).unwrap());
        }
    }

    #[test]
    fn invalid_pivot_is_rejected() {
        let psi = psi_from_bases(&corpus::get("c2").unwrap());
        assert!(matches!(
            count_affine_eliminative(&psi, 3, "nope"),
            Err(Error::InvalidPivot(_))
        ));
        // A coloop variable appears in no monomial.
        let c3 = corpus::get("c3").unwrap();
        let bridge = crate::matroid::RegularMatroid::new(vec![vec![1]], vec!["b".into()]).unwrap();
        let sum = c3.direct_sum(&bridge).unwrap();
        let psi = psi_from_bases(&sum);
        assert!(matches!(
            count_affine_eliminative(&psi, 3, "b"),
            Err(Error::InvalidPivot(_))
        ));
    }

    #[test]
    fn guards_reject_bad_primes_and_budgets() {
        let psi = psi_from_bases(&corpus::get("banana10").unwrap());
        assert!(matches!(count_affine_naive(&psi, 7), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(count_affine_naive(&psi, 6), Err(Error::NotPrime(6))));
        assert!(matches!(count_affine_naive(&psi, 37), Err(Error::PrimeTooLarge(37))));
        assert!(count_affine_eliminative(&psi, 2, "e1").is_ok());
    }

    #[test]
    fn report_assembles_all_fields() {
        let psi = psi_from_bases(&corpus::get("diamond").unwrap());
        let r = count_report(&psi, 2, CountMethod::Naive, None, true, None).unwrap();
        assert_eq!(r.affine_zeros, 16);
        assert_eq!(r.projective_points, 15);
        assert_eq!(r.torus_zeros, Some(1));
        let r2 =
            count_report(&psi, 2, CountMethod::Eliminative, Some("e3"), false, Some(2)).unwrap();
        assert_eq!(r2.affine_zeros, 16);
        assert_eq!(r2.torus_zeros, None);
    }
}
