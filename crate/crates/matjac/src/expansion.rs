//! Metric expansion: each element e becomes a series class of lam(e)
//! elements. Realized through the dual (series extension is parallel
//! extension of the dual, and parallel extension is column duplication).

use crate::basis::BasisSet;
use crate::error::{Error, Result};
use crate::matroid::RegularMatroid;
use crate::MAX_GROUND;
use std::collections::BTreeMap;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthMap {
    values: BTreeMap<String, u64>,
}

impl LengthMap {
    pub fn new(values: BTreeMap<String, u64>) -> Result<Self> {
        for (label, &v) in &values {
            if v < 1 {
                return Err(Error::LengthTooSmall {
                    label: label.clone(),
                    got: v,
                });
            }
        }
        Ok(LengthMap { values })
    }

    pub fn uniform(labels: &[String], v: u64) -> LengthMap {
        LengthMap {
            values: labels.iter().map(|l| (l.clone(), v)).collect(),
        }
    }

    pub fn get(&self, label: &str) -> Result<u64> {
        self.values
            .get(label)
            .copied()
            .ok_or_else(|| Error::MissingLength(label.to_string()))
    }

    pub fn values(&self) -> &BTreeMap<String, u64> {
        &self.values
    }

    /// Values in ground order, erroring on missing elements.
    pub fn aligned(&self, ground: &[String]) -> Result<Vec<u64>> {
        ground.iter().map(|l| self.get(l)).collect()
    }
}

/// Largest length. Errors on an empty map.
pub fn height(lam: &LengthMap) -> Result<u64> {
    lam.values
        .values()
        .copied()
        .max()
        .ok_or(Error::EmptyGround)
}

/// Per-element derived labels: e itself first, then e#1, e#2, ...
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedGround {
    pub groups: Vec<(String, Vec<String>)>,
}

impl ExpandedGround {
    /// Derived labels are e#1, e#2, ... with the suffix bumped past any that
    /// already name a ground element, so iterated expansion stays collision
    /// free.
    fn build(ground: &[String], lengths: &[u64]) -> Self {
        let mut seen: BTreeSet<String> = ground.iter().cloned().collect();
        let groups = ground
            .iter()
            .zip(lengths)
            .map(|(e, &l)| {
                let mut labels = vec![e.clone()];
                let mut k = 1u64;
                while (labels.len() as u64) < l {
                    let cand = format!("{e}#{k}");
                    k += 1;
                    if seen.insert(cand.clone()) {
                        labels.push(cand);
                    }
                }
                (e.clone(), labels)
            })
            .collect();
        ExpandedGround { groups }
    }

    pub fn labels(&self) -> Vec<String> {
        self.groups
            .iter()
            .flat_map(|(_, ls)| ls.iter().cloned())
            .collect()
    }
}

/// The expanded matroid together with its ground labeling. Rank grows by
/// sum(lam(e) - 1); the column order follows the groups, elements of one
/// class adjacent.
pub fn expand(m: &RegularMatroid, lam: &LengthMap) -> Result<(RegularMatroid, ExpandedGround)> {
    let lengths = lam.aligned(m.ground())?;
    let total: u64 = lengths.iter().sum();
    if total > MAX_GROUND as u64 {
        return Err(Error::GroundTooLarge(total as usize));
    }
    let eg = ExpandedGround::build(m.ground(), &lengths);
    let labels = eg.labels();
    let dual = m.dual();
    let dmat = dual.matrix();
    let mut rows = vec![Vec::with_capacity(total as usize); dual.rank()];
    for (c, &l) in lengths.iter().enumerate() {
        for row in 0..dual.rank() {
            for _ in 0..l {
                rows[row].push(dmat[row][c]);
            }
        }
    }
    let duplicated = RegularMatroid::new(rows, labels)?;
    Ok((duplicated.dual(), eg))
}

/// The basis family straight from the definition: for each basis B of m and
/// each choice of one derived element x_e per cobasis element e, the basis
/// is the full expanded ground minus the chosen x_e.
pub fn bases_of_expansion_def(m: &RegularMatroid, lam: &LengthMap) -> Result<BasisSet> {
    let lengths = lam.aligned(m.ground())?;
    let total: u64 = lengths.iter().sum();
    if total > MAX_GROUND as u64 {
        return Err(Error::GroundTooLarge(total as usize));
    }
    let offsets: Vec<u64> = lengths
        .iter()
        .scan(0u64, |acc, &l| {
            let o = *acc;
            *acc += l;
            Some(o)
        })
        .collect();
    let full: u64 = if total == 64 { !0 } else { (1u64 << total) - 1 };
    let bases = crate::basis::enumerate_bases(m)?;
    let mut members = BTreeSet::new();
    for &b in &bases.members {
        let cobasis: Vec<usize> = (0..m.n()).filter(|&e| b >> e & 1 == 0).collect();
        // Odometer over one derived element per cobasis class.
        let mut choice = vec![0u64; cobasis.len()];
        loop {
            let mut mask = full;
            for (i, &e) in cobasis.iter().enumerate() {
                mask &= !(1u64 << (offsets[e] + choice[i]));
            }
            members.insert(mask);
            let mut i = 0;
            loop {
                if i == cobasis.len() {
                    break;
                }
                choice[i] += 1;
                if choice[i] < lengths[cobasis[i]] {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == cobasis.len() {
                break;
            }
        }
    }
    let r = total as usize - (m.n() - m.rank());
    Ok(BasisSet::new(total as usize, r, members))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::enumerate_bases;
    use crate::corpus;
    use crate::graph;
    use crate::matroid::ElementClass;

    fn lam(pairs: &[(&str, u64)]) -> LengthMap {
        LengthMap::new(
            pairs
                .iter()
                .map(|(l, v)| (l.to_string(), *v))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn heights() {
        assert_eq!(height(&lam(&[("e", 2), ("f", 3)])).unwrap(), 3);
        assert_eq!(height(&lam(&[("e", 1)])).unwrap(), 1);
        assert_eq!(height(&lam(&[("a", 7), ("b", 1), ("c", 7)])).unwrap(), 7);
        assert!(height(&LengthMap::new(Default::default()).unwrap()).is_err());
    }

    #[test]
    fn expanding_c2_by_2_3_gives_the_five_cycle() {
        let m = corpus::corpus_matroid("c2").unwrap();
        let (mx, eg) = expand(&m, &lam(&[("e", 2), ("f", 3)])).unwrap();
        assert_eq!(mx.rank(), 4);
        assert_eq!(mx.n(), 5);
        assert_eq!(enumerate_bases(&mx).unwrap().len(), 5);
        assert_eq!(
            eg.labels(),
            vec!["e", "e#1", "f", "f#1", "f#2"]
        );
        let def = bases_of_expansion_def(&m, &lam(&[("e", 2), ("f", 3)])).unwrap();
        assert_eq!(def.members, enumerate_bases(&mx).unwrap().members);
    }

    #[test]
    fn all_ones_expansion_is_the_identity() {
        for (_, m) in corpus::corpus() {
            if m.n() == 0 {
                continue;
            }
            let l = LengthMap::uniform(m.ground(), 1);
            let (mx, _) = expand(&m, &l).unwrap();
            assert_eq!(
                enumerate_bases(&mx).unwrap().members,
                enumerate_bases(&m).unwrap().members
            );
        }
    }

    #[test]
    fn expanding_a_coloop_appends_a_coloop() {
        let m = corpus::corpus_matroid("path1").unwrap();
        let (mx, _) = expand(&m, &lam(&[("e1", 2)])).unwrap();
        assert_eq!(mx.rank(), 2);
        for e in mx.ground().to_vec() {
            assert_eq!(mx.element_class(&e).unwrap(), ElementClass::Coloop);
        }
    }

    #[test]
    fn expanding_a_loop_gives_a_circuit_class() {
        let m = crate::matroid::RegularMatroid::new(vec![], vec!["l".into()]).unwrap();
        let (mx, _) = expand(&m, &lam(&[("l", 3)])).unwrap();
        assert_eq!(mx.rank(), 2);
        assert_eq!(mx.n(), 3);
        assert_eq!(enumerate_bases(&mx).unwrap().len(), 3);
    }

    #[test]
    fn expansion_rank_formula_and_def_agreement_on_corpus() {
        for (_, m) in corpus::corpus() {
            if m.n() == 0 || m.n() > 6 {
                continue;
            }
            for h in [2u64, 3] {
                let l = LengthMap::uniform(m.ground(), h);
                let (mx, _) = expand(&m, &l).unwrap();
                let extra: u64 = (h - 1) * m.n() as u64;
                assert_eq!(mx.rank(), m.rank() + extra as usize);
                let def = bases_of_expansion_def(&m, &l).unwrap();
                assert_eq!(def.members, enumerate_bases(&mx).unwrap().members);
            }
        }
    }

    #[test]
    fn expansion_commutes_with_graph_subdivision() {
        let g = corpus::diamond_graph();
        let m = graph::incidence_matroid(&g).unwrap();
        let l = lam(&[("e1", 2), ("e2", 1), ("e3", 3), ("e4", 1), ("e5", 2)]);
        let (mx, eg) = expand(&m, &l).unwrap();
        let s = graph::subdivide_graph(&g, &l).unwrap();
        let ms = graph::incidence_matroid(&s).unwrap();
        assert_eq!(ms.ground(), &eg.labels()[..]);
        assert_eq!(
            enumerate_bases(&ms).unwrap().members,
            enumerate_bases(&mx).unwrap().members
        );
    }

    #[test]
    fn stepwise_expansion_matches_one_shot() {
        let m = corpus::corpus_matroid("c3").unwrap();
        let target = lam(&[("e1", 3), ("e2", 2), ("e3", 1)]);
        let step1 = lam(&[("e1", 2), ("e2", 2), ("e3", 1)]);
        let (m1, _) = expand(&m, &step1).unwrap();
        let mut again = BTreeMap::new();
        for label in m1.ground() {
            again.insert(label.clone(), if label == "e1" { 2 } else { 1 });
        }
        let (m2, _) = expand(&m1, &LengthMap::new(again).unwrap()).unwrap();
        let (direct, _) = expand(&m, &target).unwrap();
        // Both grounds hold the e1 class in columns 0..3 (in different
        // internal order), then e2, e2#1, e3. Class members play symmetric
        // roles inside a basis, so the mask sets must coincide exactly.
        let b2 = enumerate_bases(&m2).unwrap();
        let bd = enumerate_bases(&direct).unwrap();
        assert_eq!(b2.members, bd.members);
    }
}
