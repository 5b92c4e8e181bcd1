use std::collections::VecDeque;
use std::fmt::Write as _;

use petgraph::graph::UnGraph;
use rayon::prelude::*;
use serde::Serialize;

use super::{nested_rays, Result};
use crate::matroid::{Flat, Matroid};

/// Rays of the minimal nested-set structure and their two-dimensional cones.
#[derive(Clone, Debug, Serialize)]
pub struct RayGraph {
    pub vertices: Vec<Flat>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    /// Common degree when the graph is regular.
    pub regular: Option<usize>,
    /// Length of a shortest cycle; `None` for forests.
    pub girth: Option<usize>,
}

/// Graph on the nested rays with an edge for every nested pair: comparable
/// flats, or incomparable flats whose join is disconnected.
pub fn ray_adjacency_graph(m: &Matroid) -> Result<RayGraph> {
    let vertices = nested_rays(m)?;
    let n = vertices.len();
    let edges: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let vertices = &vertices;
            (i + 1..n).filter_map(move |j| {
                let (a, b) = (vertices[i].elements, vertices[j].elements);
                let nested = a.is_subset(b) || b.is_subset(a) || !m.is_connected_set(m.cl(a | b));
                nested.then_some((i, j))
            })
        })
        .collect();
    Ok(RayGraph { vertices, edges })
}

impl RayGraph {
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency().iter().map(Vec::len).collect()
    }

    pub fn girth(&self) -> Option<usize> {
        let adj = self.adjacency();
        let n = adj.len();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn stats(&self) -> GraphStats {
        let deg = self.degrees();
        let min_degree = deg.iter().copied().min().unwrap_or(0);
        let max_degree = deg.iter().copied().max().unwrap_or(0);
        GraphStats {
            vertices: self.vertices.len(),
            edges: self.edges.len(),
            min_degree,
            max_degree,
            regular: (min_degree == max_degree).then_some(min_degree),
            girth: self.girth(),
        }
    }

    pub fn to_petgraph(&self) -> UnGraph<(), ()> {
        let mut g = UnGraph::new_undirected();
        let nodes: Vec<_> = (0..self.vertices.len()).map(|_| g.add_node(())).collect();
        for &(a, b) in &self.edges {
            g.add_edge(nodes[a], nodes[b], ());
        }
        g
    }

    pub fn is_isomorphic_to(&self, other: &UnGraph<(), ()>) -> bool {
        petgraph::algo::is_isomorphic(&self.to_petgraph(), other)
    }

    /// Graphviz rendering; vertices carry their flat (as labels) and rank.
    pub fn to_dot(&self, m: &Matroid) -> String {
        let mut s = String::from("graph rays {\n");
        for (i, f) in self.vertices.iter().enumerate() {
            let labels: Vec<String> = f.elements.iter().map(|e| m.label(e)).collect();
            let _ = writeln!(s, "  r{i} [label=\"{{{}}}\", rank={}];", labels.join(","), f.rank);
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "  r{a} -- r{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// Outer 5-cycle, spokes and inner pentagram.
pub fn petersen_graph() -> UnGraph<(), ()> {
    let mut edges = Vec::new();
    for i in 0..5u32 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    UnGraph::from_edges(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn a3_is_petersen() {
        let g = ray_adjacency_graph(&generators::a3_example()).unwrap();
        let s = g.stats();
        assert_eq!((s.vertices, s.edges, s.regular, s.girth), (10, 15, Some(3), Some(5)));
        assert!(g.is_isomorphic_to(&petersen_graph()));
    }

    #[test]
    fn small_cases() {
        let u = ray_adjacency_graph(&generators::uniform(2, 3).unwrap()).unwrap();
        assert_eq!((u.vertices.len(), u.edges.len()), (3, 0));
        assert_eq!(u.stats().girth, None);
        let f = ray_adjacency_graph(&generators::fano()).unwrap();
        assert_eq!((f.vertices.len(), f.edges.len()), (14, 21));
        // every edge is a point on a line
        assert!(f.edges.iter().all(|&(a, b)| f.vertices[a].elements.is_subset(f.vertices[b].elements)));
        assert_eq!(f.stats().girth, Some(6));
    }

    #[test]
    fn dot_output() {
        let m = generators::a3_example();
        let dot = ray_adjacency_graph(&m).unwrap().to_dot(&m);
        assert!(dot.starts_with("graph rays {"));
        assert!(dot.contains("label=\"{1,2,5}\", rank=2"));
        assert_eq!(dot.matches(" -- ").count(), 15);
    }
}
