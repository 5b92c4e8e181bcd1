//! Degrees in the subgraph `S` of the ray graph spanned by rank-one and
//! corank-one rays.
//!
//! A rank-one ray `e` is adjacent to the rank-one rays `f` with
//! `cl{e, f} = {e, f}` and to the connected hyperplanes containing `e`; a
//! connected hyperplane `H` is adjacent to its `|H|` elements.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{FanError, Result};
use crate::bitset::ElementSet;
use crate::matroid::Matroid;

/// `f != e` with `cl{e, f} = {e, f}`.
pub fn rank_one_neighbors(m: &Matroid, e: usize) -> Result<Vec<usize>> {
    m.set_of(&[e])?;
    Ok((0..m.size()).filter(|&f| f != e && m.cl(ElementSet::pair(e, f)).len() == 2).collect())
}

pub fn rank_one_neighbor_count(m: &Matroid, e: usize) -> Result<usize> {
    Ok(rank_one_neighbors(m, e)?.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSplit {
    pub rank_one: usize,
    pub corank_one: usize,
    pub total: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SGraphReport {
    /// Total degree of each element, keyed by label.
    pub rank_one_degrees: BTreeMap<String, usize>,
    /// Degree of each connected hyperplane (its size), keyed `H<index>`.
    pub corank_one_degrees: BTreeMap<String, usize>,
    /// Rank-one and corank-one neighbours of each element.
    pub rank_one_split: BTreeMap<String, DegreeSplit>,
    /// Connected hyperplanes as label lists, in lexicographic order.
    pub hyperplanes: Vec<Vec<String>>,
    pub min_rank_one_degree: usize,
    pub max_corank_one_degree: usize,
    pub verdict: bool,
}

/// Per-element rank-one neighbour counts only, for matroids whose
/// hyperplanes are too expensive to enumerate.
pub fn rank_one_degree_table(m: &Matroid) -> BTreeMap<String, usize> {
    (0..m.size())
        .into_par_iter()
        .map(|e| (m.label(e), rank_one_neighbor_count(m, e).expect("element in range")))
        .collect()
}

pub fn graph_s(m: &Matroid) -> Result<SGraphReport> {
    if m.rank() < 3 {
        return Err(FanError::RankTooSmall(m.rank()));
    }
    let hyperplanes: Vec<ElementSet> = m.hyperplanes()?.iter().filter(|f| f.connected).map(|f| f.elements).collect();
    let splits: Vec<DegreeSplit> = (0..m.size())
        .into_par_iter()
        .map(|e| {
            let rank_one = rank_one_neighbor_count(m, e).expect("element in range");
            let corank_one = hyperplanes.iter().filter(|h| h.contains(e)).count();
            DegreeSplit { rank_one, corank_one, total: rank_one + corank_one }
        })
        .collect();
    let min_rank_one_degree = splits.iter().map(|s| s.total).min().unwrap_or(0);
    let max_corank_one_degree = hyperplanes.iter().map(|h| h.len()).max().unwrap_or(0);
    Ok(SGraphReport {
        rank_one_degrees: splits.iter().enumerate().map(|(e, s)| (m.label(e), s.total)).collect(),
        corank_one_degrees: hyperplanes.iter().enumerate().map(|(i, h)| (format!("H{i}"), h.len())).collect(),
        rank_one_split: splits.iter().enumerate().map(|(e, s)| (m.label(e), *s)).collect(),
        hyperplanes: hyperplanes.iter().map(|h| h.iter().map(|e| m.label(e)).collect()).collect(),
        min_rank_one_degree,
        max_corank_one_degree,
        verdict: min_rank_one_degree > max_corank_one_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::ray_adjacency_graph;
    use crate::generators;

    /// Degrees read off the full ray graph restricted to S.
    fn generic_degrees(m: &Matroid) -> (Vec<usize>, Vec<usize>) {
        let g = ray_adjacency_graph(m).unwrap();
        let in_s: Vec<bool> = g.vertices.iter().map(|f| f.rank == 1 || f.rank + 1 == m.rank()).collect();
        let mut deg = vec![0; g.vertices.len()];
        for &(a, b) in &g.edges {
            if in_s[a] && in_s[b] {
                deg[a] += 1;
                deg[b] += 1;
            }
        }
        let ones = (0..g.vertices.len()).filter(|&i| g.vertices[i].rank == 1).map(|i| deg[i]).collect();
        let hyper = (0..g.vertices.len()).filter(|&i| g.vertices[i].rank + 1 == m.rank()).map(|i| deg[i]).collect();
        (ones, hyper)
    }

    #[test]
    fn closed_form_matches_generic_rule() {
        for m in [
            generators::coxeter_matroid("A4".parse().unwrap()).unwrap().matroid,
            generators::coxeter_matroid("B3".parse().unwrap()).unwrap().matroid,
            generators::coxeter_matroid("D4".parse().unwrap()).unwrap().matroid,
        ] {
            let report = graph_s(&m).unwrap();
            let (ones, hyper) = generic_degrees(&m);
            let closed: Vec<usize> = (0..m.size()).map(|e| report.rank_one_degrees[&m.label(e)]).collect();
            assert_eq!(closed, ones);
            let mut closed_h: Vec<usize> = report.corank_one_degrees.values().copied().collect();
            let mut hyper = hyper;
            closed_h.sort();
            hyper.sort();
            assert_eq!(closed_h, hyper);
        }
    }

    #[test]
    fn uniform_has_no_rank_one_neighbors() {
        let u = generators::uniform(2, 5).unwrap();
        assert!((0..5).all(|e| rank_one_neighbor_count(&u, e).unwrap() == 0));
        assert_eq!(graph_s(&u).unwrap_err(), FanError::RankTooSmall(2));
    }
}
