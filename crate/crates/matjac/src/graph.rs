//! Multigraphs, signed incidence matroids, and edge subdivision.

use crate::error::{Error, Result};
use crate::expansion::LengthMap;
use crate::matroid::RegularMatroid;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(String, usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(String, usize, usize)>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for (label, u, v) in &edges {
            if !seen.insert(label.clone()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
            for &w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        vertices: vertex_count,
                    });
                }
            }
        }
        Ok(Graph {
            vertex_count,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(String, usize, usize)] {
        &self.edges
    }

    pub fn edge_labels(&self) -> Vec<String> {
        self.edges.iter().map(|(l, _, _)| l.clone()).collect()
    }
}

/// Signed incidence matroid: tail +1, head -1, self-loops give zero columns.
/// One row is removed per connected component (the highest-index vertex),
/// which leaves a full-row-rank matrix whose bases are the spanning forests.
pub fn incidence_matroid(g: &Graph) -> Result<RegularMatroid> {
    let v = g.vertex_count;
    let mut parent: Vec<usize> = (0..v).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for (_, u, w) in &g.edges {
        let a = find(&mut parent, *u);
        let b = find(&mut parent, *w);
        parent[a] = b;
    }
    let mut removed = vec![false; v];
    let mut top: std::collections::BTreeMap<usize, usize> = Default::default();
    for x in 0..v {
        let r = find(&mut parent, x);
        let e = top.entry(r).or_insert(x);
        *e = (*e).max(x);
    }
    for &x in top.values() {
        removed[x] = true;
    }
    let kept: Vec<usize> = (0..v).filter(|&x| !removed[x]).collect();
    let mut rows = vec![vec![0i64; g.edges.len()]; kept.len()];
    for (c, (_, u, w)) in g.edges.iter().enumerate() {
        if u == w {
            continue;
        }
        if let Some(i) = kept.iter().position(|&x| x == *u) {
            rows[i][c] += 1;
        }
        if let Some(i) = kept.iter().position(|&x| x == *w) {
            rows[i][c] -= 1;
        }
    }
    RegularMatroid::new(rows, g.edge_labels())
}

/// Replaces every edge e by a path of length lam(e) through fresh vertices.
/// The path edges keep the expansion labeling (e, then e#1, e#2, ...), so
/// basis masks of the subdivided cycle matroid line up with those of the
/// metric expansion.
pub fn subdivide_graph(g: &Graph, lam: &LengthMap) -> Result<Graph> {
    let mut next_vertex = g.vertex_count;
    let mut edges = Vec::new();
    for (label, u, w) in &g.edges {
        let l = lam.get(label)?;
        if l == 1 {
            edges.push((label.clone(), *u, *w));
            continue;
        }
        let mut prev = *u;
        for k in 1..l {
            let mid = next_vertex;
            next_vertex += 1;
            let name = if k == 1 {
                label.clone()
            } else {
                format!("{label}#{}", k - 1)
            };
            edges.push((name, prev, mid));
            prev = mid;
        }
        edges.push((format!("{label}#{}", l - 1), prev, *w));
    }
    Graph::new(next_vertex, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::enumerate_bases;
    use crate::corpus;
    use crate::expansion::LengthMap;

    #[test]
    fn c2_incidence_is_a_parallel_pair() {
        let g = corpus::banana_graph(2);
        let m = incidence_matroid(&g).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(enumerate_bases(&m).unwrap().len(), 2);
    }

    #[test]
    fn diamond_has_eight_spanning_trees() {
        let g = corpus::diamond_graph();
        let m = incidence_matroid(&g).unwrap();
        assert_eq!(enumerate_bases(&m).unwrap().len(), 8);
    }

    #[test]
    fn empty_graph_gives_empty_matroid() {
        let g = Graph::new(1, vec![]).unwrap();
        let m = incidence_matroid(&g).unwrap();
        assert_eq!(m.rank(), 0);
        assert_eq!(m.n(), 0);
        assert_eq!(enumerate_bases(&m).unwrap().len(), 1);
    }

    #[test]
    fn self_loop_is_a_zero_column() {
        let g = Graph::new(1, vec![("l".into(), 0, 0)]).unwrap();
        let m = incidence_matroid(&g).unwrap();
        assert_eq!(m.rank(), 0);
        assert_eq!(m.n(), 1);
    }

    #[test]
    fn subdividing_one_edge_gives_a_path() {
        let g = corpus::path_graph(1);
        let lam = LengthMap::uniform(&g.edge_labels(), 4);
        let s = subdivide_graph(&g, &lam).unwrap();
        assert_eq!(s.edges().len(), 4);
        assert_eq!(s.vertex_count(), 5);
        let m = incidence_matroid(&s).unwrap();
        assert_eq!(m.rank(), 4);
        assert_eq!(enumerate_bases(&m).unwrap().len(), 1);
    }

    #[test]
    fn subdividing_a_loop_gives_a_cycle() {
        let g = Graph::new(1, vec![("l".into(), 0, 0)]).unwrap();
        let lam = LengthMap::uniform(&g.edge_labels(), 5);
        let s = subdivide_graph(&g, &lam).unwrap();
        let m = incidence_matroid(&s).unwrap();
        assert_eq!(m.rank(), 4);
        assert_eq!(enumerate_bases(&m).unwrap().len(), 5);
    }
}
