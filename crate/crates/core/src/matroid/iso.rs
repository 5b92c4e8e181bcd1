//! Isomorphism and automorphism search.
//!
//! Backtracking over element bijections. A partial map is extended only if
//! it preserves the rank-2 flat ("line") incidence among mapped elements;
//! complete maps are then checked on flats of every rank.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{Flat, Matroid, MatroidError, Result};
use crate::bitset::ElementSet;

/// A permutation of ground-set indices, `forward[e]` being the image of `e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ElementBijection {
    pub forward: Vec<usize>,
}

impl ElementBijection {
    pub fn identity(n: usize) -> Self {
        ElementBijection { forward: (0..n).collect() }
    }

    /// Validates that `forward` is a permutation of `0..forward.len()`.
    pub fn new(forward: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; forward.len()];
        for &x in &forward {
            if x >= forward.len() || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        Some(ElementBijection { forward })
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn apply(&self, e: usize) -> usize {
        self.forward[e]
    }

    pub fn apply_set(&self, s: ElementSet) -> ElementSet {
        s.map(&self.forward)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &ElementBijection) -> ElementBijection {
        ElementBijection { forward: other.forward.iter().map(|&e| self.forward[e]).collect() }
    }

    pub fn inverse(&self) -> ElementBijection {
        let mut inv = vec![0; self.forward.len()];
        for (e, &f) in self.forward.iter().enumerate() {
            inv[f] = e;
        }
        ElementBijection { forward: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.forward.iter().enumerate().all(|(e, &f)| e == f)
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// Disjoint cycles of length >= 2, each starting at its least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.forward[start] == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut e = self.forward[start];
            while e != start {
                seen[e] = true;
                cyc.push(e);
                e = self.forward[e];
            }
            out.push(cyc);
        }
        out
    }
}

/// Bounds on the number of maps a search may return.
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    pub max_results: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_results: 100_000 }
    }
}

/// Line structure of a matroid: `line[a][b]` is the index of `cl{a, b}`.
struct LineTable {
    n: usize,
    line_of: Vec<u32>,
    line_size: Vec<usize>,
    signature: Vec<Vec<usize>>,
}

impl LineTable {
    fn new(m: &Matroid) -> Result<Self> {
        let n = m.size();
        let mut ids: HashMap<ElementSet, u32> = HashMap::new();
        let mut line_size = Vec::new();
        let mut line_of = vec![u32::MAX; n * n];
        for a in 0..n {
            for b in a + 1..n {
                if line_of[a * n + b] != u32::MAX {
                    continue;
                }
                let l = m.cl(ElementSet::pair(a, b));
                let id = *ids.entry(l).or_insert_with(|| {
                    line_size.push(l.len());
                    (line_size.len() - 1) as u32
                });
                for x in l {
                    for y in l {
                        if x != y {
                            line_of[x * n + y] = id;
                        }
                    }
                }
            }
        }
        // per element: sorted multiset of sizes of lines through it
        let signature = (0..n)
            .map(|a| {
                let mut through: Vec<u32> = (0..n).filter(|&b| b != a).map(|b| line_of[a * n + b]).collect();
                through.sort_unstable();
                through.dedup();
                let mut sizes: Vec<usize> = through.iter().map(|&l| line_size[l as usize]).collect();
                sizes.sort_unstable();
                sizes
            })
            .collect();
        Ok(LineTable { n, line_of, line_size, signature })
    }

    fn line(&self, a: usize, b: usize) -> u32 {
        self.line_of[a * self.n + b]
    }

    fn nontrivial_degree(&self, a: usize) -> usize {
        self.signature[a].iter().filter(|&&s| s > 2).count()
    }
}

struct Search<'a> {
    dst: &'a Matroid,
    src_lines: LineTable,
    dst_lines: LineTable,
    order: Vec<usize>,
    dst_flats: Vec<HashSet<ElementSet>>,
    src_flats: Vec<std::sync::Arc<Vec<Flat>>>,
    limit: usize,
    first_only: bool,
    found: Vec<ElementBijection>,
}

impl<'a> Search<'a> {
    fn new(src: &'a Matroid, dst: &'a Matroid, limit: usize, first_only: bool) -> Result<Self> {
        let src_lines = LineTable::new(src)?;
        let dst_lines = LineTable::new(dst)?;
        let order = search_order(&src_lines);
        // flats of rank 3..r-1 are checked on complete maps; lines are
        // enforced during the search
        let mut src_flats = Vec::new();
        let mut dst_flats = Vec::new();
        for k in 3..src.rank() {
            src_flats.push(src.flats_of_rank(k)?);
            dst_flats.push(dst.flats_of_rank(k)?.iter().map(|f| f.elements).collect());
        }
        Ok(Search {
            dst,
            src_lines,
            dst_lines,
            order,
            dst_flats,
            src_flats,
            limit,
            first_only,
            found: Vec::new(),
        })
    }

    fn compatible(&self, map: &[usize], depth: usize, y: usize) -> bool {
        let x = self.order[depth];
        if self.src_lines.signature[x] != self.dst_lines.signature[y] {
            return false;
        }
        // lines through x meeting the mapped elements must correspond
        // bijectively to lines through y
        let mut fwd: HashMap<u32, u32> = HashMap::new();
        let mut back: HashMap<u32, u32> = HashMap::new();
        for &a in &self.order[..depth] {
            let l = self.src_lines.line(x, a);
            let l2 = self.dst_lines.line(y, map[a]);
            if self.src_lines.line_size[l as usize] != self.dst_lines.line_size[l2 as usize] {
                return false;
            }
            if *fwd.entry(l).or_insert(l2) != l2 || *back.entry(l2).or_insert(l) != l {
                return false;
            }
        }
        true
    }

    fn verify(&self, map: &[usize]) -> bool {
        self.src_flats.iter().zip(&self.dst_flats).all(|(level, targets)| {
            level.iter().all(|f| targets.contains(&f.elements.map(map)))
        })
    }

    fn run(&mut self, map: &mut Vec<usize>, used: &mut Vec<bool>, depth: usize) -> Result<bool> {
        if depth == self.order.len() {
            if self.verify(map) {
                if self.found.len() >= self.limit {
                    return Err(MatroidError::BudgetExceeded {
                        what: "automorphism count",
                        size: self.found.len() + 1,
                        budget: self.limit,
                    });
                }
                self.found.push(ElementBijection { forward: map.clone() });
                return Ok(self.first_only);
            }
            return Ok(false);
        }
        let x = self.order[depth];
        for y in 0..self.dst.size() {
            if used[y] || !self.compatible(map, depth, y) {
                continue;
            }
            map[x] = y;
            used[y] = true;
            let stop = self.run(map, used, depth + 1)?;
            used[y] = false;
            map[x] = usize::MAX;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Element order for the search: start from the element with the rarest
/// line signature, then repeatedly take the element sharing the most
/// nontrivial lines with those already placed (ties: higher nontrivial
/// degree, then larger line-size multiset, then lower index).
fn search_order(t: &LineTable) -> Vec<usize> {
    let n = t.n;
    let mut counts: HashMap<&Vec<usize>, usize> = HashMap::new();
    for s in &t.signature {
        *counts.entry(s).or_default() += 1;
    }
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let first = (0..n)
        .min_by_key(|&a| (counts[&t.signature[a]], std::cmp::Reverse(t.nontrivial_degree(a)), a))
        .unwrap();
    order.push(first);
    placed[first] = true;
    while order.len() < n {
        let next = (0..n)
            .filter(|&a| !placed[a])
            .max_by(|&a, &b| {
                let shared = |x: usize| {
                    let mut ls: Vec<u32> = order
                        .iter()
                        .map(|&o| t.line(x, o))
                        .filter(|&l| t.line_size[l as usize] > 2)
                        .collect();
                    ls.sort_unstable();
                    ls.dedup();
                    ls.len()
                };
                shared(a)
                    .cmp(&shared(b))
                    .then(t.nontrivial_degree(a).cmp(&t.nontrivial_degree(b)))
                    .then(t.signature[a].cmp(&t.signature[b]))
                    .then(b.cmp(&a))
            })
            .unwrap();
        order.push(next);
        placed[next] = true;
    }
    order
}

fn search(src: &Matroid, dst: &Matroid, limits: SearchLimits, first_only: bool) -> Result<Vec<ElementBijection>> {
    if src.size() != dst.size() {
        return Err(MatroidError::SizeMismatch(src.size(), dst.size()));
    }
    if !src.is_simple() || !dst.is_simple() {
        return Err(MatroidError::NotSimple);
    }
    if src.rank() != dst.rank() {
        return Ok(Vec::new());
    }
    let mut s = Search::new(src, dst, limits.max_results, first_only)?;
    let n = src.size();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    s.run(&mut map, &mut used, 0)?;
    let mut found = s.found;
    found.sort();
    Ok(found)
}

impl Matroid {
    /// All automorphisms, sorted lexicographically by image list.
    pub fn automorphisms(&self) -> Result<Vec<ElementBijection>> {
        self.automorphisms_with(SearchLimits::default())
    }

    pub fn automorphisms_with(&self, limits: SearchLimits) -> Result<Vec<ElementBijection>> {
        search(self, self, limits, false)
    }

    /// Some isomorphism `self -> other`, if one exists.
    pub fn find_isomorphism(&self, other: &Matroid) -> Result<Option<ElementBijection>> {
        Ok(search(self, other, SearchLimits::default(), true)?.into_iter().next())
    }

    /// Whether `map` sends every flat to a flat of the same rank.
    pub fn is_isomorphism_to(&self, other: &Matroid, map: &ElementBijection) -> Result<bool> {
        if map.len() != self.size() || other.size() != self.size() || other.rank() != self.rank() {
            return Ok(false);
        }
        for k in 0..=self.rank() {
            let ours = self.flats_of_rank(k)?;
            let theirs: HashSet<ElementSet> = other.flats_of_rank(k)?.iter().map(|f| f.elements).collect();
            if ours.len() != theirs.len() || ours.iter().any(|f| !theirs.contains(&map.apply_set(f.elements))) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_automorphism(&self, map: &ElementBijection) -> Result<bool> {
        self.is_isomorphism_to(self, map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn bijection_algebra() {
        let p = ElementBijection::new(vec![1, 2, 0]).unwrap();
        assert_eq!(p.compose(&p.inverse()), ElementBijection::identity(3));
        assert_eq!(p.cycles(), vec![vec![0, 1, 2]]);
        assert!(!p.is_involution());
        assert!(ElementBijection::new(vec![0, 0]).is_none());
    }

    #[test]
    fn a3_group_has_order_24() {
        let m = generators::a3_example();
        let auts = m.automorphisms().unwrap();
        assert_eq!(auts.len(), 24);
        assert!(auts.contains(&ElementBijection::identity(6)));
    }

    #[test]
    fn automorphisms_form_a_group() {
        let m = generators::a3_example();
        let auts: HashSet<_> = m.automorphisms().unwrap().into_iter().collect();
        for a in &auts {
            assert!(auts.contains(&a.inverse()));
            for b in &auts {
                assert!(auts.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn fano_group_has_order_168() {
        assert_eq!(generators::fano().automorphisms().unwrap().len(), 168);
    }

    #[test]
    fn isomorphism_search() {
        let a3 = generators::a3_example();
        let k4 = generators::complete_graph(4).unwrap();
        let iso = a3.find_isomorphism(&k4).unwrap().expect("A3 ≅ M(K4)");
        assert!(a3.is_isomorphism_to(&k4, &iso).unwrap());
        let u = generators::uniform(3, 6).unwrap();
        assert!(a3.find_isomorphism(&u).unwrap().is_none());
        assert!(a3.find_isomorphism(&generators::fano()).is_err());
    }
}
