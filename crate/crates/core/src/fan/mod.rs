//! The projective Bergman fan of a matroid.
//!
//! Points live in `Z^E` modulo the all-ones vector. Rays of the minimal
//! nested-set structure are the proper connected flats; two-dimensional
//! cones give the ray adjacency graph, and the subgraph on rank-one and
//! corank-one rays is summarized by [`graph_s`].

mod graph;
mod point;
mod sgraph;

use thiserror::Error;

use crate::bitset::ElementSet;
use crate::matroid::{Flat, Matroid, MatroidError};

pub use graph::{petersen_graph, ray_adjacency_graph, GraphStats, RayGraph};
pub use point::TropicalPoint;
pub use sgraph::{graph_s, rank_one_degree_table, rank_one_neighbor_count, rank_one_neighbors, DegreeSplit, SGraphReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("weight vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{0:?} is not a proper nonempty connected flat")]
    NotARay(ElementSet),
    #[error("rank {0} is too small for this operation")]
    RankTooSmall(usize),
    #[error("budget exceeded: {what} ({size} > {budget})")]
    BudgetExceeded { what: &'static str, size: usize, budget: usize },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

pub type Result<T, E = FanError> = std::result::Result<T, E>;

/// Membership via upper level sets: every `{i : w_i >= c}` above the
/// minimum must be a flat.
pub fn in_bergman_fan(m: &Matroid, w: &TropicalPoint) -> Result<bool> {
    check_len(m, w)?;
    let mut values: Vec<i64> = w.weights().to_vec();
    values.sort_unstable();
    values.dedup();
    Ok(values.iter().skip(1).all(|&c| m.is_flat(w.upper_level_set(c))))
}

/// Membership via circuits: the minimum of `w` over every circuit is
/// attained at least twice.
pub fn in_bergman_fan_by_circuits(m: &Matroid, w: &TropicalPoint) -> Result<bool> {
    check_len(m, w)?;
    let circuits = m.circuits()?;
    Ok(circuits.iter().all(|c| {
        let min = c.iter().map(|i| w.weights()[i]).min().unwrap();
        c.iter().filter(|&i| w.weights()[i] == min).count() >= 2
    }))
}

fn check_len(m: &Matroid, w: &TropicalPoint) -> Result<()> {
    if w.len() != m.size() {
        return Err(FanError::LengthMismatch { expected: m.size(), found: w.len() });
    }
    Ok(())
}

/// Proper nonempty connected flats, by rank and then lexicographically.
pub fn nested_rays(m: &Matroid) -> Result<Vec<Flat>> {
    let mut out = Vec::new();
    for k in 1..m.rank() {
        out.extend(m.flats_of_rank(k)?.iter().filter(|f| f.connected).copied());
    }
    Ok(out)
}

fn check_ray(m: &Matroid, f: &Flat) -> Result<()> {
    let ok = !f.elements.is_empty() && f.elements != m.all() && m.is_flat(f.elements) && m.is_connected_set(f.elements);
    if ok {
        Ok(())
    } else {
        Err(FanError::NotARay(f.elements))
    }
}

/// Whether every antichain of size >= 2 in `flats` has a disconnected join.
pub fn is_nested(m: &Matroid, flats: &[Flat]) -> Result<bool> {
    for f in flats {
        check_ray(m, f)?;
    }
    let sets: Vec<ElementSet> = flats.iter().map(|f| f.elements).collect();
    Ok(nested_sets(m, &sets))
}

fn comparable(a: ElementSet, b: ElementSet) -> bool {
    a.is_subset(b) || b.is_subset(a)
}

fn nested_sets(m: &Matroid, sets: &[ElementSet]) -> bool {
    // depth-first over antichains, extending by later indices only
    fn rec(m: &Matroid, sets: &[ElementSet], chosen: &mut Vec<ElementSet>, start: usize) -> bool {
        if chosen.len() >= 2 && m.is_connected_set(m.cl(chosen.iter().fold(ElementSet::EMPTY, |a, &b| a | b))) {
            return false;
        }
        for i in start..sets.len() {
            if chosen.iter().all(|&c| !comparable(c, sets[i])) {
                chosen.push(sets[i]);
                let ok = rec(m, sets, chosen, i + 1);
                chosen.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    rec(m, sets, &mut Vec::new(), 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FanKind {
    Fine,
    Nested,
}

/// Rays and cones of the projective Bergman fan.
#[derive(Clone, Debug, serde::Serialize)]
pub struct FanStructure {
    pub kind: FanKind,
    pub rays: Vec<Flat>,
    /// Ray-index sets, including the empty cone, sorted by size then
    /// lexicographically.
    pub cones: Vec<Vec<usize>>,
}

/// Default cap on the number of cones generated by [`fan_structure`].
pub const DEFAULT_CONE_BUDGET: usize = 200_000;

/// Fine structure (chains of proper nonempty flats) or minimal nested-set
/// structure (nested collections of connected flats).
pub fn fan_structure(m: &Matroid, kind: FanKind, budget: usize) -> Result<FanStructure> {
    let rays: Vec<Flat> = match kind {
        FanKind::Nested => nested_rays(m)?,
        FanKind::Fine => (1..m.rank()).map(|k| m.flats_of_rank(k)).collect::<Result<Vec<_>, _>>()?.iter().flat_map(|l| l.iter().copied()).collect(),
    };
    let sets: Vec<ElementSet> = rays.iter().map(|f| f.elements).collect();
    let mut cones = Vec::new();
    let mut chosen = Vec::new();
    grow_cones(m, kind, &sets, &mut chosen, 0, &mut cones, budget)?;
    cones.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    Ok(FanStructure { kind, rays, cones })
}

fn grow_cones(
    m: &Matroid,
    kind: FanKind,
    sets: &[ElementSet],
    chosen: &mut Vec<usize>,
    start: usize,
    out: &mut Vec<Vec<usize>>,
    budget: usize,
) -> Result<()> {
    if out.len() >= budget {
        return Err(FanError::BudgetExceeded { what: "cone count", size: out.len() + 1, budget });
    }
    out.push(chosen.clone());
    for i in start..sets.len() {
        let ok = match kind {
            FanKind::Fine => chosen.iter().all(|&c| comparable(sets[c], sets[i])),
            FanKind::Nested => {
                let mut family: Vec<ElementSet> = chosen.iter().map(|&c| sets[c]).collect();
                family.push(sets[i]);
                nested_sets(m, &family)
            }
        };
        if ok {
            chosen.push(i);
            grow_cones(m, kind, sets, chosen, i + 1, out, budget)?;
            chosen.pop();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn set(v: &[usize]) -> ElementSet {
        v.iter().collect()
    }

    #[test]
    fn membership_examples() {
        let m = generators::a3_example();
        assert!(in_bergman_fan(&m, &TropicalPoint::new(vec![3; 6])).unwrap());
        // labels 1, 2, 5 are indices 0, 1, 4
        let tri = TropicalPoint::indicator(6, set(&[0, 1, 4]));
        assert!(in_bergman_fan(&m, &tri).unwrap());
        assert!(in_bergman_fan_by_circuits(&m, &tri).unwrap());
        let pair = TropicalPoint::indicator(6, set(&[0, 1]));
        assert!(!in_bergman_fan(&m, &pair).unwrap());
        assert!(!in_bergman_fan_by_circuits(&m, &pair).unwrap());
        assert!(in_bergman_fan(&m, &TropicalPoint::new(vec![0; 5])).is_err());
    }

    #[test]
    fn a3_rays_and_nestedness() {
        let m = generators::a3_example();
        let rays = nested_rays(&m).unwrap();
        assert_eq!(rays.len(), 10);
        let one = m.closure(set(&[0])).unwrap();
        let two = m.closure(set(&[1])).unwrap();
        assert!(!is_nested(&m, &[one, two]).unwrap());
        let three = m.closure(set(&[2])).unwrap();
        // cl{1,3} = {1,3}
        assert!(is_nested(&m, &[one, three]).unwrap());
        let tri = m.closure(set(&[0, 1])).unwrap();
        assert!(is_nested(&m, &[one, tri]).unwrap());
        let pair = Flat { elements: set(&[0, 2]), rank: 2, connected: false };
        assert!(matches!(is_nested(&m, &[tri, pair]), Err(FanError::NotARay(_))));
        let whole = Flat { elements: m.all(), rank: 3, connected: true };
        assert!(is_nested(&m, &[whole]).is_err());
    }

    #[test]
    fn a3_cone_counts() {
        let m = generators::a3_example();
        let nested = fan_structure(&m, FanKind::Nested, DEFAULT_CONE_BUDGET).unwrap();
        // empty cone + 10 rays + 15 edges of the Petersen graph
        assert_eq!(nested.cones.len(), 26);
        let fine = fan_structure(&m, FanKind::Fine, DEFAULT_CONE_BUDGET).unwrap();
        // 6 points + 7 lines, 4*3 + 3*2 incidences
        assert_eq!(fine.rays.len(), 13);
        assert_eq!(fine.cones.len(), 1 + 13 + 18);
        assert!(fan_structure(&m, FanKind::Fine, 5).is_err());
    }
}
