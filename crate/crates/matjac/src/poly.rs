//! Multilinear polynomials with bitmask monomials.
//!
//! A monomial is a subset of the variables, stored as a u64 mask, so the
//! whole polynomial is a sorted map from mask to coefficient. Configuration
//! polynomials are multilinear and homogeneous with all coefficients 1;
//! the type itself allows arbitrary integer coefficients so that sums and
//! partial evaluations stay closed.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::MAX_GROUND;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearPoly {
    vars: Vec<String>,
    terms: BTreeMap<u64, BigInt>,
}

impl MultilinearPoly {
    /// Zero coefficients are dropped; masks must fit the variable list.
    pub fn new(vars: Vec<String>, terms: BTreeMap<u64, BigInt>) -> Result<Self> {
        if vars.len() > MAX_GROUND {
            return Err(Error::GroundTooLarge(vars.len()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for v in &vars {
            if !seen.insert(v.clone()) {
                return Err(Error::DuplicateLabel(v.clone()));
            }
        }
        let full = full_mask(vars.len());
        let mut kept = BTreeMap::new();
        for (mask, c) in terms {
            if mask & !full != 0 {
                return Err(Error::Parse(format!(
                    "monomial mask {mask:#x} uses variables beyond the {} declared",
                    vars.len()
                )));
            }
            if !c.is_zero() {
                kept.insert(mask, c);
            }
        }
        Ok(MultilinearPoly { vars, terms: kept })
    }

    pub fn zero(vars: Vec<String>) -> Self {
        MultilinearPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vec<String>, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0u64, c);
        }
        MultilinearPoly { vars, terms }
    }

    pub fn one(vars: Vec<String>) -> Self {
        Self::constant(vars, BigInt::one())
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &BTreeMap<u64, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mask: u64) -> BigInt {
        self.terms.get(&mask).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Total degree: largest support size, 0 for constants and zero.
    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return true };
        let d = first.count_ones();
        it.all(|m| m.count_ones() == d)
    }

    pub fn add_term(&mut self, mask: u64, c: &BigInt) {
        debug_assert_eq!(mask & !full_mask(self.vars.len()), 0);
        let e = self.terms.entry(mask).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&self, other: &MultilinearPoly) -> Result<MultilinearPoly> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c);
        }
        Ok(out)
    }

    /// Multiplication by the single variable at bit `i`. Every monomial
    /// must be free of that variable, otherwise the result would not be
    /// multilinear.
    pub fn mul_var(&self, i: usize) -> Result<MultilinearPoly> {
        let bit = 1u64 << i;
        let mut terms = BTreeMap::new();
        for (&m, c) in &self.terms {
            if m & bit != 0 {
                return Err(Error::Parse(format!(
                    "variable {} already present in a monomial",
                    self.vars[i]
                )));
            }
            terms.insert(m | bit, c.clone());
        }
        Ok(MultilinearPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Product of polynomials on the same variable list with disjoint
    /// monomial supports (factors of a direct sum). Errors if any monomial
    /// pair collides on a variable.
    pub fn mul_disjoint(&self, other: &MultilinearPoly) -> Result<MultilinearPoly> {
        self.check_same_vars(other)?;
        let mut out = MultilinearPoly::zero(self.vars.clone());
        for (&m1, c1) in &self.terms {
            for (&m2, c2) in &other.terms {
                if m1 & m2 != 0 {
                    return Err(Error::Parse(
                        "monomial supports overlap in product".to_string(),
                    ));
                }
                out.add_term(m1 | m2, &(c1 * c2));
            }
        }
        Ok(out)
    }

    /// Re-embeds into a larger variable list; every variable of self must
    /// appear there.
    pub fn embed(&self, vars: &[String]) -> Result<MultilinearPoly> {
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::UnknownElement(v.clone()))
            })
            .collect::<Result<_>>()?;
        let mut terms = BTreeMap::new();
        for (&m, c) in &self.terms {
            let mut out = 0u64;
            for (i, &j) in pos.iter().enumerate() {
                if m >> i & 1 == 1 {
                    out |= 1 << j;
                }
            }
            terms.insert(out, c.clone());
        }
        MultilinearPoly::new(vars.to_vec(), terms)
    }

    /// Restriction to the variables that actually occur, preserving their
    /// relative order.
    pub fn compress(&self) -> MultilinearPoly {
        let mut used = 0u64;
        for m in self.terms.keys() {
            used |= m;
        }
        let keep: Vec<usize> = (0..self.vars.len()).filter(|&i| used >> i & 1 == 1).collect();
        let vars: Vec<String> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let mut terms = BTreeMap::new();
        for (&m, c) in &self.terms {
            let mut out = 0u64;
            for (new, &old) in keep.iter().enumerate() {
                if m >> old & 1 == 1 {
                    out |= 1 << new;
                }
            }
            terms.insert(out, c.clone());
        }
        MultilinearPoly { vars, terms }
    }

    /// Terms with coefficients reduced mod p, zero coefficients dropped,
    /// sorted ascending by mask. The flat form used by the counting kernel.
    pub fn terms_mod(&self, p: u64) -> Vec<(u64, u64)> {
        self.terms
            .iter()
            .map(|(&m, c)| (m, reduce_big(c, p)))
            .filter(|&(_, c)| c != 0)
            .collect()
    }

    /// Removes the variable at bit `i` from the list; no monomial may use
    /// it. Bits above `i` shift down by one.
    pub fn drop_var(&self, i: usize) -> Result<MultilinearPoly> {
        let bit = 1u64 << i;
        let low = bit - 1;
        let mut vars = self.vars.clone();
        vars.remove(i);
        let mut terms = BTreeMap::new();
        for (&m, c) in &self.terms {
            if m & bit != 0 {
                return Err(Error::Parse(format!(
                    "variable {} still occurs in a monomial",
                    self.vars[i]
                )));
            }
            terms.insert((m & low) | ((m >> 1) & !low), c.clone());
        }
        Ok(MultilinearPoly { vars, terms })
    }

    /// Splits off the variable at bit `i`: returns (g1, g0) with
    /// self = λ_i·g1 + g0, where neither part mentions λ_i.
    pub fn split_var(&self, i: usize) -> (MultilinearPoly, MultilinearPoly) {
        let bit = 1u64 << i;
        let mut g1 = MultilinearPoly::zero(self.vars.clone());
        let mut g0 = MultilinearPoly::zero(self.vars.clone());
        for (&m, c) in &self.terms {
            if m & bit != 0 {
                g1.terms.insert(m & !bit, c.clone());
            } else {
                g0.terms.insert(m, c.clone());
            }
        }
        (g1, g0)
    }

    /// Exact evaluation; with a modulus the result is the least nonnegative
    /// residue.
    pub fn evaluate(&self, point: &[BigInt], modulus: Option<u64>) -> Result<BigInt> {
        self.check_point_len(point.len())?;
        let mut acc = BigInt::zero();
        for (&m, c) in &self.terms {
            let mut t = c.clone();
            for (i, v) in point.iter().enumerate() {
                if m >> i & 1 == 1 {
                    t *= v;
                }
            }
            acc += t;
        }
        if let Some(p) = modulus {
            let p = BigInt::from(p);
            acc %= &p;
            if acc.is_negative() {
                acc += &p;
            }
        }
        Ok(acc)
    }

    /// Fast residue evaluation: coordinates already reduced mod p.
    pub fn evaluate_mod(&self, point: &[u64], p: u64) -> Result<u64> {
        self.check_point_len(point.len())?;
        let mut acc: u64 = 0;
        for (&m, c) in &self.terms {
            let mut t = reduce_big(c, p);
            let mut bits = m;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                t = t * (point[i] % p) % p;
            }
            acc = (acc + t) % p;
        }
        Ok(acc)
    }

    pub fn evaluate_rational(&self, point: &[BigRational]) -> Result<BigRational> {
        self.check_point_len(point.len())?;
        let mut acc = BigRational::zero();
        for (&m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (i, v) in point.iter().enumerate() {
                if m >> i & 1 == 1 {
                    t *= v;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    fn check_same_vars(&self, other: &MultilinearPoly) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::LengthMismatch {
                want: self.vars.len(),
                got: other.vars.len(),
            });
        }
        Ok(())
    }

    fn check_point_len(&self, got: usize) -> Result<()> {
        if got != self.vars.len() {
            return Err(Error::LengthMismatch {
                want: self.vars.len(),
                got,
            });
        }
        Ok(())
    }
}

pub fn full_mask(n: usize) -> u64 {
    if n == 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// x^e mod p, u128 intermediates so any u64 modulus is safe.
pub fn pow_mod(x: u64, mut e: u64, p: u64) -> u64 {
    let mut base = (x % p) as u128;
    let mut acc: u128 = 1 % p as u128;
    let p = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc as u64
}

/// Inverse of a unit modulo a prime.
pub fn inv_mod(x: u64, p: u64) -> Result<u64> {
    if x.is_multiple_of(p) {
        return Err(Error::NotInvertible(format!("{x} mod {p}")));
    }
    Ok(pow_mod(x, p - 2, p))
}

/// Least nonnegative residue of a big integer.
pub fn reduce_big(c: &BigInt, p: u64) -> u64 {
    let p_big = BigInt::from(p);
    let mut r = c % &p_big;
    if r.is_negative() {
        r += &p_big;
    }
    u64::try_from(r).expect("residue fits u64")
}
