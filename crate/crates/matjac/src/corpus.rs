//! Built-in example matroids, all graphic, small enough for every exact
//! routine in the crate.

use crate::error::{Error, Result};
use crate::graph::{incidence_matroid, Graph};
use crate::matroid::RegularMatroid;

/// Two vertices joined by n parallel edges e1..en.
pub fn banana_graph(n: usize) -> Graph {
    let edges = (1..=n).map(|i| (format!("e{i}"), 0, 1)).collect();
    Graph::new(2, edges).unwrap()
}

/// A path on n edges e1..en through n+1 vertices.
pub fn path_graph(n: usize) -> Graph {
    let edges = (1..=n).map(|i| (format!("e{i}"), i - 1, i)).collect();
    Graph::new(n + 1, edges).unwrap()
}

/// The n-cycle, edges e1..en, with en closing back to vertex 0.
pub fn cycle_graph(n: usize) -> Graph {
    let edges = (1..=n)
        .map(|i| (format!("e{i}"), i - 1, if i == n { 0 } else { i }))
        .collect();
    Graph::new(n, edges).unwrap()
}

/// Complete graph on n vertices, edges e1, e2, ... in lexicographic
/// endpoint order.
pub fn complete_graph(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((format!("e{}", edges.len() + 1), u, v));
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Two triangles sharing the edge e5: vertices 0 (top), 1 (right),
/// 2 (left), 3 (bottom); e1 = (1,0), e2 = (2,0), e3 = (1,3),
/// e4 = (2,3), e5 = (1,2).
pub fn diamond_graph() -> Graph {
    Graph::new(
        4,
        vec![
            ("e1".into(), 1, 0),
            ("e2".into(), 2, 0),
            ("e3".into(), 1, 3),
            ("e4".into(), 2, 3),
            ("e5".into(), 1, 2),
        ],
    )
    .unwrap()
}

/// Ids accepted by [`corpus_matroid`], in presentation order.
pub fn ids() -> &'static [&'static str] {
    &[
        "c2", "c3", "path1", "path3", "diamond", "k4", "banana3", "banana10", "diamond_c2",
        "coloops3",
    ]
}

/// One-line description per id, for listings.
pub fn describe(id: &str) -> Result<&'static str> {
    Ok(match id {
        "c2" => "parallel pair {e, f}: the 2-cycle",
        "c3" => "triangle c3: rank 2 on e1..e3",
        "path1" => "a single coloop",
        "path3" => "path on three edges: three coloops",
        "diamond" => "two triangles glued along e5: rank 3 on e1..e5",
        "k4" => "complete graph on 4 vertices: rank 3 on e1..e6",
        "banana3" => "three parallel edges: rank 1 on e1..e3",
        "banana10" => "ten parallel edges: rank 1 on e1..e10",
        "diamond_c2" => "direct sum of diamond and the parallel pair",
        "coloops3" => "three coloops x1..x3 (identity matrix)",
        _ => return Err(Error::Parse(format!("unknown corpus id: {id}"))),
    })
}

/// Builds a corpus matroid by id.
pub fn corpus_matroid(id: &str) -> Result<RegularMatroid> {
    match id {
        "c2" => incidence_matroid(
            &Graph::new(2, vec![("e".into(), 0, 1), ("f".into(), 0, 1)]).unwrap(),
        ),
        "c3" => incidence_matroid(&cycle_graph(3)),
        "path1" => incidence_matroid(&path_graph(1)),
        "path3" => incidence_matroid(&path_graph(3)),
        "diamond" => incidence_matroid(&diamond_graph()),
        "k4" => incidence_matroid(&complete_graph(4)),
        "banana3" => incidence_matroid(&banana_graph(3)),
        "banana10" => incidence_matroid(&banana_graph(10)),
        "diamond_c2" => corpus_matroid("diamond")?.direct_sum(&corpus_matroid("c2")?),
        "coloops3" => RegularMatroid::new(
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec!["x1".into(), "x2".into(), "x3".into()],
        ),
        _ => Err(Error::Parse(format!("unknown corpus id: {id}"))),
    }
}

/// Shorthand for [`corpus_matroid`].
pub fn get(id: &str) -> Result<RegularMatroid> {
    corpus_matroid(id)
}

/// Every corpus member, paired with its id.
pub fn corpus() -> Vec<(&'static str, RegularMatroid)> {
    ids()
        .iter()
        .map(|&id| (id, corpus_matroid(id).unwrap()))
        .collect()
}
