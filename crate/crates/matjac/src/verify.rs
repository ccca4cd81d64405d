//! Self-contained invariant suites over the built-in corpus. Every
//! check is deterministic (fixed point patterns instead of RNG) and
//! sized to finish the whole run in well under five minutes.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use std::collections::BTreeMap;

use crate::basis::{check_basis_exchange, enumerate_bases};
use crate::bounds::{big_o_constant, bound_check, couvreur_bound, proj_points};
use crate::corpus;
use crate::count;
use crate::density;
use crate::error::Result;
use crate::expansion::{bases_of_expansion_def, expand, LengthMap};
use crate::graph;
use crate::jacobian::{flow_lattice_order, jacobian_group, jacobian_order};
use crate::matroid::RegularMatroid;
use crate::psi::{
    cremona_identity_check, cremona_identity_check_mod, factor_by_components,
    psi_deletion_contraction, psi_from_bases,
};
use crate::{ELIMINATIVE_BUDGET, NAIVE_BUDGET};

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub fn suite_names() -> &'static [&'static str] {
    &[
        "matroid-core",
        "arith-jacobian",
        "config-poly",
        "fp-count",
        "density-stats",
    ]
}

/// Runs one named suite.
pub fn run_suite(name: &str) -> Result<Vec<CheckOutcome>> {
    let mut h = Harness {
        suite: "",
        out: Vec::new(),
    };
    match name {
        "matroid-core" => matroid_core(&mut h),
        "arith-jacobian" => arith_jacobian(&mut h),
        "config-poly" => config_poly(&mut h),
        "fp-count" => fp_count(&mut h),
        "density-stats" => density_stats(&mut h),
        _ => {
            return Err(crate::Error::Parse(format!(
                "unknown suite '{name}' (expected one of {})",
                suite_names().join(", ")
            )))
        }
    }
    Ok(h.out)
}

/// Runs every suite in order.
pub fn run_all() -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for name in suite_names() {
        out.extend(run_suite(name).expect("built-in suite name"));
    }
    out
}

pub fn failures(outcomes: &[CheckOutcome]) -> Vec<&CheckOutcome> {
    outcomes.iter().filter(|o| !o.passed).collect()
}

/// Machine-readable summary: every outcome plus the failure list.
pub fn outcomes_to_json(outcomes: &[CheckOutcome]) -> Value {
    let rows: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            json!({
                "suite": o.suite,
                "name": o.name,
                "passed": o.passed,
                "detail": o.detail,
            })
        })
        .collect();
    let fails: Vec<Value> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| json!({ "suite": o.suite, "name": o.name, "detail": o.detail }))
        .collect();
    json!({
        "checks": rows,
        "failures": fails,
        "passed": fails.is_empty(),
    })
}

type Check = std::result::Result<String, String>;

struct Harness {
    suite: &'static str,
    out: Vec<CheckOutcome>,
}

impl Harness {
    fn run(&mut self, name: &'static str, f: impl FnOnce() -> Check) {
        let (passed, detail) = match f() {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.out.push(CheckOutcome {
            suite: self.suite,
            name,
            passed,
            detail,
        });
    }
}

fn ck<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn fail(msg: String) -> Check {
    Err(msg)
}

/// Deterministic length pattern: values in 1..=height keyed off a seed.
fn pattern_lengths(m: &RegularMatroid, seed: u64, height: u64) -> LengthMap {
    let values: BTreeMap<String, u64> = m
        .ground()
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let v = (seed.wrapping_mul(31).wrapping_add(7 * i as u64 + 3)) % height + 1;
            (l.clone(), v)
        })
        .collect();
    LengthMap::new(values).expect("lengths are positive")
}

fn matroid_core(h: &mut Harness) {
    h.suite = "matroid-core";

    h.run("dual-involution-and-complements", || {
        for (id, m) in corpus::corpus() {
            let d = m.dual();
            let b = ck(enumerate_bases(&m))?;
            let bd = ck(enumerate_bases(&d))?;
            let full = crate::poly::full_mask(m.n());
            for &x in &b.members {
                if !bd.members.contains(&(full & !x)) {
                    return fail(format!("{id}: complement of basis {x:#b} missing in dual"));
                }
            }
            if bd.members.len() != b.members.len() {
                return fail(format!("{id}: dual basis count differs"));
            }
            let dd = ck(enumerate_bases(&d.dual()))?;
            if dd.members != b.members {
                return fail(format!("{id}: double dual changed the basis set"));
            }
        }
        Ok("corpus-wide".into())
    });

    h.run("basis-exchange", || {
        for (id, m) in corpus::corpus() {
            if !check_basis_exchange(&ck(enumerate_bases(&m))?) {
                return fail(format!("{id}: exchange axiom failed"));
            }
        }
        Ok("corpus-wide".into())
    });

    h.run("expansion-rank-and-definition-agreement", || {
        let mut cases = 0;
        for (id, m) in corpus::corpus() {
            if m.n() == 0 || m.n() > 6 {
                continue;
            }
            for seed in [1u64, 2] {
                let lam = pattern_lengths(&m, seed, 3);
                let (mx, _) = ck(expand(&m, &lam))?;
                let total: u64 = ck(lam.aligned(m.ground()))?.iter().sum();
                let want_rank = m.rank() + (total as usize - m.n());
                if mx.rank() != want_rank {
                    return fail(format!("{id}: expansion rank {} != {want_rank}", mx.rank()));
                }
                let def = ck(bases_of_expansion_def(&m, &lam))?;
                if def.members != ck(enumerate_bases(&mx))?.members {
                    return fail(format!("{id}: definitional bases differ at seed {seed}"));
                }
                cases += 1;
            }
        }
        Ok(format!("{cases} expansions"))
    });

    h.run("graph-subdivision-commutes", || {
        let g = corpus::diamond_graph();
        let m = ck(graph::incidence_matroid(&g))?;
        let lam = pattern_lengths(&m, 3, 3);
        let (mx, eg) = ck(expand(&m, &lam))?;
        let s = ck(graph::subdivide_graph(&g, &lam))?;
        let ms = ck(graph::incidence_matroid(&s))?;
        if ms.ground() != &eg.labels()[..] {
            return fail("diamond: subdivided labels differ from expansion".into());
        }
        if ck(enumerate_bases(&ms))?.members != ck(enumerate_bases(&mx))?.members {
            return fail("diamond: subdivided bases differ from expansion".into());
        }
        Ok("diamond with mixed lengths".into())
    });

    h.run("stepwise-expansion-consistency", || {
        let m = corpus::get("c3").unwrap();
        let target = pattern_lengths(&m, 5, 3);
        let mut first = BTreeMap::new();
        let mut second_pairs: Vec<(String, u64)> = Vec::new();
        for label in m.ground() {
            let v = target.get(label).unwrap();
            first.insert(label.clone(), 1 + (v - 1) / 2);
            second_pairs.push((label.clone(), v));
        }
        let (m1, eg) = ck(expand(&m, &LengthMap::new(first.clone()).unwrap()))?;
        let mut rest = BTreeMap::new();
        for (orig, members) in &eg.groups {
            let want = target.get(orig).unwrap();
            let have = members.len() as u64;
            for (i, lbl) in members.iter().enumerate() {
                // Put the leftover subdivision on the first member.
                let extra = if i == 0 { want - have } else { 0 };
                rest.insert(lbl.clone(), 1 + extra);
            }
        }
        let (m2, _) = ck(expand(&m1, &LengthMap::new(rest).unwrap()))?;
        let (direct, _) = ck(expand(&m, &target))?;
        if ck(enumerate_bases(&m2))?.members != ck(enumerate_bases(&direct))?.members {
            return fail("c3: stepwise and one-shot expansions disagree".into());
        }
        Ok("c3".into())
    });

    h.run("element-classes", || {
        use crate::matroid::ElementClass::*;
        let diamond = corpus::get("diamond").unwrap();
        for e in diamond.ground().to_vec() {
            if ck(diamond.element_class(&e))? != Ordinary {
                return fail(format!("diamond {e} not ordinary"));
            }
        }
        let id3 = corpus::get("coloops3").unwrap();
        for e in id3.ground().to_vec() {
            if ck(id3.element_class(&e))? != Coloop {
                return fail(format!("coloops3 {e} not a coloop"));
            }
        }
        let lp = ck(RegularMatroid::new(
            vec![vec![1, 0]],
            vec!["e".into(), "l".into()],
        ))?;
        if ck(lp.element_class("l"))? != Loop {
            return fail("zero column not classified as loop".into());
        }
        Ok("diamond, coloops3, loop".into())
    });
}

fn arith_jacobian(h: &mut Harness) {
    h.suite = "arith-jacobian";

    h.run("order-is-basis-count-and-flow-lattice", || {
        for (id, m) in corpus::corpus() {
            let ord = jacobian_order(&m);
            let nb = BigInt::from(ck(enumerate_bases(&m))?.members.len());
            if ord != nb {
                return fail(format!("{id}: order {ord} != basis count {nb}"));
            }
            if ord != flow_lattice_order(&m) {
                return fail(format!("{id}: flow lattice order differs"));
            }
        }
        Ok("corpus-wide".into())
    });

    h.run("dual-has-same-invariant-factors", || {
        for (id, m) in corpus::corpus() {
            let a = jacobian_group(&m);
            let b = jacobian_group(&m.dual());
            if a.invariant_factors != b.invariant_factors {
                return fail(format!("{id}: dual invariant factors differ"));
            }
        }
        Ok("corpus-wide".into())
    });

    h.run("snf-permutation-invariance", || {
        let m = corpus::get("k4").unwrap();
        let gram = crate::jacobian::gram(&m);
        let base = crate::snf::smith_invariant_factors(&gram.entries);
        let k = gram.entries.len();
        for shift in 1..k {
            let perm: Vec<usize> = (0..k).map(|i| (i + shift) % k).collect();
            let rows: Vec<Vec<BigInt>> = perm
                .iter()
                .map(|&i| perm.iter().map(|&j| gram.entries[i][j].clone()).collect())
                .collect();
            if crate::snf::smith_invariant_factors(&rows) != base {
                return fail(format!("k4 gram: SNF changed under rotation {shift}"));
            }
        }
        Ok("k4 gram under rotations".into())
    });

    h.run("cycle-expansion-is-cyclic", || {
        let m = corpus::get("c2").unwrap();
        for (a, b) in [(2u64, 3u64), (4, 3), (5, 5)] {
            let lm = LengthMap::new(
                [("e".to_string(), a), ("f".to_string(), b)]
                    .into_iter()
                    .collect(),
            )
            .unwrap();
            let (mx, _) = ck(expand(&m, &lm))?;
            let grp = jacobian_group(&mx);
            if grp.invariant_factors != vec![BigInt::from(a + b)] {
                return fail(format!("expansion ({a},{b}) is not Z/{}", a + b));
            }
        }
        Ok("c2 expansions (2,3),(4,3),(5,5)".into())
    });
}

fn config_poly(h: &mut Harness) {
    h.suite = "config-poly";

    h.run("deletion-contraction-equals-basis-sum", || {
        for (id, m) in corpus::corpus() {
            if psi_deletion_contraction(&m) != psi_from_bases(&m) {
                return fail(format!("{id}: the two psi routes differ"));
            }
        }
        Ok("corpus-wide".into())
    });

    h.run("unit-coefficients-and-homogeneity", || {
        for (id, m) in corpus::corpus() {
            let psi = psi_from_bases(&m);
            if !psi.terms().values().all(|c| c == &BigInt::from(1)) {
                return fail(format!("{id}: non-unit coefficient"));
            }
            if !psi.is_homogeneous() {
                return fail(format!("{id}: not homogeneous"));
            }
            if psi.degree() != m.n() - m.rank() {
                return fail(format!("{id}: degree != corank"));
            }
        }
        Ok("corpus-wide".into())
    });

    h.run("psi-evaluates-to-jacobian-order", || {
        let mut cases = 0;
        for (id, m) in corpus::corpus() {
            if m.n() == 0 || m.n() > 6 {
                continue;
            }
            let psi = psi_from_bases(&m);
            for seed in [1u64, 2, 3] {
                let lam = pattern_lengths(&m, seed, 4);
                let total: u64 = ck(lam.aligned(m.ground()))?.iter().sum();
                if total > 16 {
                    continue;
                }
                let (mx, _) = ck(expand(&m, &lam))?;
                let point: Vec<BigInt> = ck(lam.aligned(m.ground()))?
                    .iter()
                    .map(|&v| BigInt::from(v))
                    .collect();
                if ck(psi.evaluate(&point, None))? != jacobian_order(&mx) {
                    return fail(format!("{id}: psi(lambda) != #Jac at seed {seed}"));
                }
                cases += 1;
            }
        }
        Ok(format!("{cases} length maps"))
    });

    h.run("components-factor-psi", || {
        for (id, m) in corpus::corpus() {
            let mut product = crate::poly::MultilinearPoly::one(m.ground().to_vec());
            for f in factor_by_components(&m) {
                product = ck(product.mul_disjoint(&ck(f.embed(m.ground()))?))?;
            }
            if product != psi_from_bases(&m) {
                return fail(format!("{id}: component product != psi"));
            }
        }
        Ok("corpus-wide".into())
    });

    h.run("cremona-identity", || {
        for (id, m) in corpus::corpus() {
            if m.n() == 0 {
                continue;
            }
            for seed in 0..5u64 {
                let point: Vec<BigRational> = (0..m.n())
                    .map(|i| {
                        let n = 1 + (seed + i as u64) % 9;
                        let d = 1 + (3 * seed + 2 * i as u64) % 7;
                        BigRational::new(BigInt::from(n), BigInt::from(d))
                    })
                    .collect();
                if !ck(cremona_identity_check(&m, &point))? {
                    return fail(format!("{id}: rational identity failed at seed {seed}"));
                }
                let units: Vec<u64> = (0..m.n()).map(|i| 1 + (seed + i as u64) % 6).collect();
                if !ck(cremona_identity_check_mod(&m, &units, 7))? {
                    return fail(format!("{id}: mod-7 identity failed at seed {seed}"));
                }
            }
        }
        Ok("5 rational + 5 unit points per matroid".into())
    });
}

fn fp_count(h: &mut Harness) {
    h.suite = "fp-count";

    h.run("naive-equals-eliminative", || {
        let mut cases = 0;
        for (id, m) in corpus::corpus() {
            let psi = psi_from_bases(&m);
            if psi.degree() == 0 {
                continue;
            }
            for p in [2u64, 3, 5, 7] {
                let naive_cost = (p as u128).pow(psi.var_count() as u32);
                if naive_cost > NAIVE_BUDGET {
                    continue;
                }
                let naive = ck(count::count_affine_naive(&psi, p))?;
                let pivot = ck(count::default_pivot(&psi))?.to_string();
                for workers in [1usize, 3] {
                    let elim = ck(count::count_affine_eliminative_with_workers(
                        &psi, p, &pivot, workers,
                    ))?;
                    if elim != naive {
                        return fail(format!(
                            "{id} p={p} workers={workers}: {elim} != naive {naive}"
                        ));
                    }
                }
                cases += 1;
            }
        }
        Ok(format!("{cases} (matroid, p) pairs"))
    });

    h.run("affine-projective-relation", || {
        for (id, m) in corpus::corpus() {
            let psi = psi_from_bases(&m);
            if psi.degree() == 0 {
                continue;
            }
            for p in [2u64, 3] {
                let aff = ck(count::affine_zeros(&psi, p))?;
                let proj = ck(count::projective_count(&psi, p))?;
                if aff != (p as u128 - 1) * proj + 1 {
                    return fail(format!("{id} p={p}: affine/projective mismatch"));
                }
            }
        }
        Ok("corpus-wide, p in {2,3}".into())
    });

    h.run("stembridge-identity", || {
        let mut cases = 0;
        for (id, m) in corpus::corpus() {
            let psi = psi_from_bases(&m);
            if psi.degree() == 0 {
                continue;
            }
            for p in [2u64, 3, 5] {
                for (bit, v) in psi.vars().iter().enumerate() {
                    if psi.terms().keys().all(|mask| mask & (1 << bit) == 0) {
                        continue; // coloop variable: no valid split
                    }
                    if !ck(count::stembridge_identity_check(&psi, v, p))? {
                        return fail(format!("{id} pivot={v} p={p}: identity failed"));
                    }
                    cases += 1;
                }
            }
        }
        Ok(format!("{cases} (pivot, p) pairs"))
    });

    h.run("bound-sandwich-on-irreducibles", || {
        for id in ["c2", "c3", "diamond", "k4", "banana3", "banana10"] {
            let m = corpus::get(id).unwrap();
            for p in [2u64, 3, 5, 7] {
                let cost = (p as u128).pow(m.n() as u32 - 1);
                if cost > ELIMINATIVE_BUDGET {
                    continue;
                }
                let r = ck(bound_check(&m, p))?;
                if !r.sandwich_holds {
                    return fail(format!("{id} p={p}: bounds do not sandwich the count"));
                }
            }
        }
        Ok("irreducible corpus, p in {2,3,5,7}".into())
    });

    h.run("envelope-constants-and-couvreur", || {
        let expect = [
            ((5i64, 2u64), 10i64),
            ((4, 2), 7),
            ((9, 9), 228),
            ((2, 1), 1),
        ];
        for ((n, m), want) in expect {
            let got = ck(big_o_constant(n, m))?;
            if got != BigInt::from(want) {
                return fail(format!("big_o_constant({n},{m}) = {got}, want {want}"));
            }
        }
        if ck(couvreur_bound(2, 4, 2, 2))? != BigInt::from(13) {
            return fail("couvreur_bound(2,4,2,2) != 13".into());
        }
        if ck(couvreur_bound(3, 3, 1, 3))? != BigInt::from(12) {
            return fail("couvreur_bound(3,3,1,3) != 12".into());
        }
        for q in [2u64, 3] {
            if ck(couvreur_bound(q, 4, 3, 1))? != proj_points(q, 3) {
                return fail(format!("degree-1 couvreur bound not exact at q={q}"));
            }
        }
        Ok("frozen values".into())
    });
}

fn density_stats(h: &mut Harness) {
    h.suite = "density-stats";

    h.run("c2-density-is-one-over-p", || {
        let m = corpus::get("c2").unwrap();
        for p in [2u64, 3, 5, 7] {
            let rep = ck(density::density_formula(&m, p))?;
            let want = BigRational::new(BigInt::from(1), BigInt::from(p));
            if rep.value() != want {
                return fail(format!("p={p}: density != 1/{p}"));
            }
        }
        Ok("p in {2,3,5,7}".into())
    });

    h.run("formula-numerator-is-affine-count", || {
        for (id, m) in corpus::corpus() {
            let psi = psi_from_bases(&m);
            for p in [2u64, 3] {
                let rep = ck(density::density_formula(&m, p))?;
                let aff = BigInt::from(ck(count::affine_zeros(&psi, p))?);
                let den = BigInt::from(p).pow(m.n() as u32);
                if rep.value() != BigRational::new(aff, den) {
                    return fail(format!("{id} p={p}: reduced density mismatch"));
                }
            }
        }
        Ok("corpus-wide, p in {2,3}".into())
    });

    h.run("empirical-exact-on-full-boxes", || {
        for id in ["c2", "diamond"] {
            let m = corpus::get(id).unwrap();
            for p in [2u64, 3] {
                for k in [1u64, 2] {
                    let emp = ck(density::density_empirical(&m, p, k * p))?;
                    let form = ck(density::density_formula(&m, p))?;
                    if emp.value() != form.value() {
                        return fail(format!("{id} p={p} m={}: box density differs", k * p));
                    }
                }
            }
        }
        Ok("c2 and diamond, p in {2,3}, k in {1,2}".into())
    });

    h.run("sandwich-with-remainder", || {
        for (id, p, m_max) in [("c2", 2u64, 3u64), ("c2", 3, 7), ("diamond", 3, 7)] {
            let m = corpus::get(id).unwrap();
            let rep = ck(density::sandwich_check(&m, p, m_max))?;
            if !rep.holds {
                return fail(format!("{id} p={p} m_max={m_max}: sandwich failed"));
            }
            if rep.exact {
                return fail(format!("{id} p={p} m_max={m_max}: expected l != 0"));
            }
        }
        Ok("three remainder cases".into())
    });

    h.run("dual-torus-density", || {
        for (id, m) in corpus::corpus() {
            for p in [2u64, 3, 5] {
                let cost = (p as u128).pow(m.n() as u32 - 1);
                if cost > ELIMINATIVE_BUDGET {
                    continue;
                }
                if !ck(density::dual_density_check(&m, p))? {
                    return fail(format!("{id} p={p}: dual torus density differs"));
                }
            }
        }
        Ok("corpus-wide, p in {2,3,5}".into())
    });

    h.run("asymptotic-bound", || {
        for id in ["c2", "c3", "diamond", "k4", "banana3", "banana10"] {
            let m = corpus::get(id).unwrap();
            for p in [2u64, 3, 5, 7, 11, 13] {
                let cost = (p as u128).pow(m.n() as u32 - 1);
                if cost > ELIMINATIVE_BUDGET {
                    continue;
                }
                let rep = ck(density::asymptotic_check(&m, p))?;
                if !rep.holds {
                    return fail(format!("{id} p={p}: |density - 1/p| above the bound"));
                }
            }
        }
        Ok("irreducible corpus, p up to 13 within budget".into())
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        let outcomes = run_all();
        let fails = failures(&outcomes);
        assert!(
            fails.is_empty(),
            "failures: {:?}",
            fails
                .iter()
                .map(|o| format!("{}/{}: {}", o.suite, o.name, o.detail))
                .collect::<Vec<_>>()
        );
        assert!(outcomes.len() >= 20);
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nope").is_err());
    }

    #[test]
    fn json_summary_reports_failures() {
        let outcomes = vec![
            CheckOutcome {
                suite: "a",
                name: "ok",
                passed: true,
                detail: "fine".into(),
            },
            CheckOutcome {
                suite: "a",
                name: "bad",
                passed: false,
                detail: "broke".into(),
            },
        ];
        let v = outcomes_to_json(&outcomes);
        assert_eq!(v["passed"], serde_json::json!(false));
        assert_eq!(v["failures"].as_array().unwrap().len(), 1);
    }
}
