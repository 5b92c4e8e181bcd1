use serde::Serialize;

use super::{CremonaData, CremonaError, Result};
use crate::bitset::ElementSet;
use crate::matroid::{ElementBijection, Matroid};

/// An edge `b_i -- b_j` labelled by an element of `S ∩ F_ij`. Endpoints and
/// label are element indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SupportEdge {
    pub ends: (usize, usize),
    pub label: usize,
}

/// The support multigraph `G_b(S)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportGraph {
    pub vertices: ElementSet,
    pub edges: Vec<SupportEdge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlatClass {
    /// `F ∩ b = supp_b(F)`.
    Basis,
    /// `F ∩ b = ∅`.
    NonBasis,
}

pub fn support_graph(d: &CremonaData, s: ElementSet) -> SupportGraph {
    let b = d.basis_set();
    let mut vertices = s & b;
    let mut edges = Vec::new();
    for e in s - b {
        if let Some((i, j)) = d.owner(e) {
            let ends = (d.basis[i], d.basis[j]);
            vertices = vertices.with(ends.0).with(ends.1);
            edges.push(SupportEdge { ends, label: e });
        }
    }
    SupportGraph { vertices, edges }
}

impl SupportGraph {
    /// Connected components as (vertices, edge indices), ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<(ElementSet, Vec<usize>)> {
        let mut comps: Vec<(ElementSet, Vec<usize>)> = self.vertices.iter().map(|v| (ElementSet::singleton(v), Vec::new())).collect();
        for (k, edge) in self.edges.iter().enumerate() {
            let a = comps.iter().position(|c| c.0.contains(edge.ends.0)).unwrap();
            let b = comps.iter().position(|c| c.0.contains(edge.ends.1)).unwrap();
            if a == b {
                comps[a].1.push(k);
            } else {
                let (lo, hi) = (a.min(b), a.max(b));
                let moved = comps.remove(hi);
                comps[lo].0 = comps[lo].0 | moved.0;
                comps[lo].1.extend(moved.1);
                comps[lo].1.push(k);
            }
        }
        for c in comps.iter_mut() {
            c.1.sort_unstable();
        }
        comps.sort_by_key(|c| c.0.min());
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// No two edges join the same pair of vertices.
    pub fn is_simple_on(&self, edges: &[usize]) -> bool {
        let mut pairs: Vec<(usize, usize)> = edges.iter().map(|&k| self.edges[k].ends).collect();
        pairs.sort_unstable();
        pairs.windows(2).all(|w| w[0] != w[1])
    }

    /// Every edge touches `center` and every other vertex is reached once.
    pub fn is_star_on(&self, vertices: ElementSet, edges: &[usize], center: usize) -> bool {
        edges.len() + 1 == vertices.len() && edges.iter().all(|&k| self.edges[k].ends.0 == center || self.edges[k].ends.1 == center)
    }

    pub fn is_triangle(&self) -> bool {
        self.vertices.len() == 3 && self.edges.len() == 3 && self.is_simple_on(&[0, 1, 2])
    }
}

impl CremonaData {
    /// Basis / non-basis classification of a flat with connected support.
    /// `None` if the support graph is disconnected or neither case holds.
    pub fn classify_flat(&self, f: ElementSet) -> Option<FlatClass> {
        let g = support_graph(self, f);
        if f.is_empty() || !g.is_connected() {
            return None;
        }
        let meet = f & self.basis_set();
        if meet == g.vertices {
            Some(FlatClass::Basis)
        } else if meet.is_empty() {
            Some(FlatClass::NonBasis)
        } else {
            None
        }
    }

    pub fn support(&self, s: ElementSet) -> ElementSet {
        support_graph(self, s).vertices
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub vertices: Vec<String>,
    /// `[end, end, label]`.
    pub edges: Vec<[String; 3]>,
    pub center: Option<String>,
    pub simple: bool,
    pub star: bool,
}

/// Structure of `G_b(b*)` for two Cremona bases.
#[derive(Clone, Debug, Serialize)]
pub struct TwoBasisReport {
    pub basis: Vec<String>,
    pub other: Vec<String>,
    pub intersection: Vec<String>,
    pub components: Vec<ComponentReport>,
    /// Human-readable descriptions of every failed clause.
    pub violations: Vec<String>,
    pub holds: bool,
}

pub fn two_basis_report(m: &Matroid, d1: &CremonaData, d2: &CremonaData) -> TwoBasisReport {
    let names = |s: ElementSet| -> Vec<String> { s.iter().map(|e| m.label(e)).collect() };
    let b = d1.basis_set();
    let bs = d2.basis_set();
    let meet = b & bs;
    let g = support_graph(d1, bs);
    let comps = g.components();
    let mut violations = Vec::new();
    let mut components = Vec::new();
    for (vs, es) in &comps {
        let centers = *vs & bs;
        let center = (centers.len() == 1).then(|| centers.min().unwrap());
        let simple = g.is_simple_on(es);
        let star = center.is_some_and(|c| g.is_star_on(*vs, es, c));
        let tag = names(*vs).join(",");
        if center.is_none() {
            violations.push(format!("component {{{tag}}} meets b* in {} elements", centers.len()));
        }
        if !simple {
            violations.push(format!("component {{{tag}}} has a multiple edge"));
        }
        if center.is_some() && !star {
            violations.push(format!("component {{{tag}}} is not a star around its center"));
        }
        components.push(ComponentReport {
            vertices: names(*vs),
            edges: es
                .iter()
                .map(|&k| {
                    let e = g.edges[k];
                    [m.label(e.ends.0), m.label(e.ends.1), m.label(e.label)]
                })
                .collect(),
            center: center.map(|c| m.label(c)),
            simple,
            star,
        });
    }
    if comps.len() != meet.len() {
        violations.push(format!("{} components but |b ∩ b*| = {}", comps.len(), meet.len()));
    }
    let comp_of = |v: usize| comps.iter().position(|c| c.0.contains(v));
    for &((i, j), f) in &d1.parts {
        let (bi, bj) = (d1.basis[i], d1.basis[j]);
        if f.is_empty() {
            continue;
        }
        if let (Some(ci), Some(cj)) = (comp_of(bi), comp_of(bj)) {
            if ci != cj && !(meet.contains(bi) && meet.contains(bj)) {
                violations.push(format!("F({},{}) is nonempty across components", m.label(bi), m.label(bj)));
            }
        }
    }
    TwoBasisReport {
        basis: d1.labels(m),
        other: d2.labels(m),
        intersection: names(meet),
        components,
        holds: violations.is_empty(),
        violations,
    }
}

/// The involutive automorphism exchanging `b` and `b*`.
pub fn build_involution(m: &Matroid, d1: &CremonaData, d2: &CremonaData) -> Result<ElementBijection> {
    let report = two_basis_report(m, d1, d2);
    if !report.holds {
        return Err(CremonaError::InvariantViolation(report.violations.join("; ")));
    }
    let mut forward: Vec<usize> = (0..m.size()).collect();
    // e_b(c): the unique edge of G_b(b*) at a leaf c
    let leaf_edges = |d: &CremonaData, other: ElementSet| -> Vec<(usize, usize)> {
        let g = support_graph(d, other);
        let own = d.basis_set();
        (own - other)
            .iter()
            .filter_map(|c| g.edges.iter().find(|e| e.ends.0 == c || e.ends.1 == c).map(|e| (c, e.label)))
            .collect()
    };
    let (b, bs) = (d1.basis_set(), d2.basis_set());
    let there = leaf_edges(d1, bs);
    let back = leaf_edges(d2, b);
    if there.len() != (b - bs).len() || back.len() != (bs - b).len() {
        return Err(CremonaError::InvariantViolation("a basis element outside the intersection has no star edge".into()));
    }
    for &(c, e) in there.iter().chain(&back) {
        forward[c] = e;
    }
    let phi = ElementBijection::new(forward)
        .ok_or_else(|| CremonaError::InvariantViolation("star-edge assignment is not a bijection".into()))?;
    if !phi.is_involution() {
        return Err(CremonaError::InvariantViolation("φ is not an involution".into()));
    }
    if phi.apply_set(b) != bs {
        return Err(CremonaError::InvariantViolation("φ(b) ≠ b*".into()));
    }
    if !m.is_automorphism(&phi)? {
        return Err(CremonaError::InvariantViolation("φ is not a matroid automorphism".into()));
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cremona::{cremona_check, enumerate_cremona_bases, DEFAULT_BASIS_BUDGET};
    use crate::generators;

    fn set(v: &[usize]) -> ElementSet {
        v.iter().collect()
    }

    #[test]
    fn a3_support_graph() {
        let m = generators::a3_example();
        // labels are index + 1
        let d = cremona_check(&m, &[0, 1, 5]).unwrap().unwrap();
        let g = support_graph(&d, set(&[1, 2, 4]));
        assert_eq!(g.vertices, set(&[0, 1, 5]));
        let mut edges: Vec<_> = g.edges.iter().map(|e| (e.label, e.ends)).collect();
        edges.sort();
        assert_eq!(edges, vec![(2, (1, 5)), (4, (0, 1))]);
        let comps = g.components();
        assert_eq!(comps.len(), 1);
        assert!(g.is_star_on(comps[0].0, &comps[0].1, 1));
        let bare = support_graph(&d, d.basis_set());
        assert_eq!((bare.vertices.len(), bare.edges.len(), bare.components().len()), (3, 0, 3));
    }

    #[test]
    fn a3_report_and_involution() {
        let m = generators::a3_example();
        let d1 = cremona_check(&m, &[0, 1, 5]).unwrap().unwrap();
        let d2 = cremona_check(&m, &[1, 2, 4]).unwrap().unwrap();
        let r = two_basis_report(&m, &d1, &d2);
        assert!(r.holds, "{:?}", r.violations);
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.components[0].center.as_deref(), Some("2"));
        let phi = build_involution(&m, &d1, &d2).unwrap();
        // (1 5)(3 6) in labels
        assert_eq!(phi.forward, vec![4, 1, 5, 3, 0, 2]);
        let same = build_involution(&m, &d1, &d1).unwrap();
        assert!(same.is_identity());
        let r = two_basis_report(&m, &d1, &d1);
        assert!(r.holds);
        assert_eq!(r.components.len(), 3);
    }

    #[test]
    fn b3_triangle_and_classes() {
        let m = generators::coxeter_matroid("B3".parse().unwrap()).unwrap().matroid;
        let bases = enumerate_cremona_bases(&m, DEFAULT_BASIS_BUDGET).unwrap();
        assert_eq!(bases.len(), 1);
        let d = &bases[0];
        let e = |l: &str| m.ground().index_of(l).unwrap();
        let f = m.cl(ElementSet::pair(e("x1-x2"), e("x2-x3")));
        assert_eq!(f.len(), 3);
        assert!(support_graph(d, f).is_triangle());
        assert_eq!(d.classify_flat(f), Some(FlatClass::NonBasis));
        let g = m.cl(ElementSet::pair(e("x1"), e("x2")));
        assert_eq!(d.classify_flat(g), Some(FlatClass::Basis));
    }
}
