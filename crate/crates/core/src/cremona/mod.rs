//! Cremona bases and the maps, support graphs, involutions and
//! realizations built from them.
//!
//! A basis `b = {b_0, .., b_d}` is Cremona when the sets
//! `F_ij = cl{b_i, b_j} \ {b_i, b_j}` partition `E \ b`.

mod map;
mod realize;
mod support;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::ElementSet;
use crate::linalg::LinalgError;
use crate::matroid::{Matroid, MatroidError};

pub use map::{crem_map, IntegerLinearMap};
pub use realize::{realize, Realization};
pub use support::{
    build_involution, support_graph, two_basis_report, ComponentReport, FlatClass, SupportEdge, SupportGraph,
    TwoBasisReport,
};

/// Default cap on `|E|` for [`enumerate_cremona_bases`].
pub const DEFAULT_BASIS_BUDGET: usize = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CremonaError {
    #[error("{0:?} is not a basis")]
    NotABasis(Vec<usize>),
    #[error("{0:?} is not a Cremona basis")]
    NotCremona(Vec<usize>),
    #[error("budget exceeded: {what} ({size} > {budget})")]
    BudgetExceeded { what: &'static str, size: usize, budget: usize },
    #[error("the map does not send the all-ones line to itself")]
    OneLineNotPreserved,
    #[error("quotient determinant is {0}, not ±1")]
    NotUnimodular(i64),
    #[error("the bases meet in {0} elements; exactly one is required")]
    IntersectionNotSingleton(usize),
    #[error("field {field} has {order} elements; at least {needed} are required")]
    FieldTooSmall { field: String, order: u64, needed: u64 },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T, E = CremonaError> = std::result::Result<T, E>;

/// A Cremona basis with its partition and opposite hyperplanes.
///
/// Positions `0..=d` index the basis in increasing element order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CremonaData {
    pub basis: Vec<usize>,
    /// `parts[(i, j)]` for `i < j`, flattened in lexicographic order.
    pub parts: Vec<((usize, usize), ElementSet)>,
    /// `B_j = cl(b \ {b_j})`.
    pub corank_flats: Vec<ElementSet>,
    /// For each element outside `b`, the positions `(i, j)` of its part.
    #[serde(skip)]
    owner: Vec<Option<(usize, usize)>>,
}

impl CremonaData {
    pub fn basis_set(&self) -> ElementSet {
        self.basis.iter().collect()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, e: usize) -> Option<usize> {
        self.basis.iter().position(|&x| x == e)
    }

    /// `F_ij` by basis positions, in either order.
    pub fn part(&self, i: usize, j: usize) -> ElementSet {
        let key = (i.min(j), i.max(j));
        self.parts.iter().find(|(k, _)| *k == key).map_or(ElementSet::EMPTY, |(_, s)| *s)
    }

    /// Positions `(i, j)` with `e ∈ F_ij`, or `None` for basis elements.
    pub fn owner(&self, e: usize) -> Option<(usize, usize)> {
        self.owner.get(e).copied().flatten()
    }

    pub fn labels(&self, m: &Matroid) -> Vec<String> {
        self.basis.iter().map(|&e| m.label(e)).collect()
    }
}

fn pair_closures(m: &Matroid) -> Vec<ElementSet> {
    let n = m.size();
    let mut out = vec![ElementSet::EMPTY; n * n];
    let rows: Vec<Vec<(usize, ElementSet)>> = (0..n)
        .into_par_iter()
        .map(|a| (a + 1..n).map(|b| (b, m.cl(ElementSet::pair(a, b)))).collect())
        .collect();
    for (a, row) in rows.into_iter().enumerate() {
        for (b, c) in row {
            out[a * n + b] = c;
            out[b * n + a] = c;
        }
    }
    out
}

fn assemble(m: &Matroid, basis: Vec<usize>, parts: Vec<((usize, usize), ElementSet)>) -> CremonaData {
    let mut owner = vec![None; m.size()];
    for &(k, s) in &parts {
        for e in s {
            owner[e] = Some(k);
        }
    }
    let bset: ElementSet = basis.iter().collect();
    let corank_flats = basis.iter().map(|&x| m.cl(bset.without(x))).collect();
    CremonaData { basis, parts, corank_flats, owner }
}

/// `Some` when `b` is a Cremona basis of `m`.
pub fn cremona_check(m: &Matroid, b: &[usize]) -> Result<Option<CremonaData>> {
    let mut basis = b.to_vec();
    basis.sort_unstable();
    basis.dedup();
    let bset = m.set_of(&basis)?;
    if basis.len() != b.len() || !m.is_basis(bset) {
        return Err(CremonaError::NotABasis(b.to_vec()));
    }
    let mut covered = bset;
    let mut parts = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let f = m.cl(ElementSet::pair(basis[i], basis[j])) - ElementSet::pair(basis[i], basis[j]);
            if !f.is_disjoint(covered) {
                return Ok(None);
            }
            covered = covered | f;
            parts.push(((i, j), f));
        }
    }
    if covered != m.all() {
        return Ok(None);
    }
    Ok(Some(assemble(m, basis, parts)))
}

/// Same as [`cremona_check`] but with element labels.
pub fn cremona_check_labels(m: &Matroid, labels: &[&str]) -> Result<Option<CremonaData>> {
    let b = labels
        .iter()
        .map(|l| m.ground().index_of(l).ok_or_else(|| MatroidError::Format(format!("unknown element label {l:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    cremona_check(m, &b)
}

struct Enumerator<'a> {
    m: &'a Matroid,
    n: usize,
    pairs: Vec<ElementSet>,
}

impl Enumerator<'_> {
    fn pair(&self, a: usize, b: usize) -> ElementSet {
        self.pairs[a * self.n + b] - ElementSet::pair(a, b)
    }

    fn extend(&self, chosen: &mut Vec<usize>, covered: ElementSet, out: &mut Vec<Vec<usize>>) {
        let rank = self.m.rank();
        if chosen.len() == rank {
            if covered == self.m.all() {
                out.push(chosen.clone());
            }
            return;
        }
        let last = *chosen.last().unwrap();
        let cur: ElementSet = chosen.iter().collect();
        for x in last + 1..self.n {
            // elements of an F-set already lie in the closure of two chosen
            // elements, so they cannot extend the basis
            if covered.contains(x) || self.m.rk(cur.with(x)) != chosen.len() + 1 {
                continue;
            }
            let mut next = covered.with(x);
            let mut ok = true;
            for &c in chosen.iter() {
                let f = self.pair(c, x);
                if !f.is_disjoint(next) {
                    ok = false;
                    break;
                }
                next = next | f;
            }
            if ok {
                chosen.push(x);
                self.extend(chosen, next, out);
                chosen.pop();
            }
        }
    }
}

/// Every Cremona basis, sorted lexicographically.
///
/// Branches die as soon as a new pair closure overlaps what earlier pairs
/// already cover. Ground sets larger than `budget` are refused.
pub fn enumerate_cremona_bases(m: &Matroid, budget: usize) -> Result<Vec<CremonaData>> {
    if m.size() > budget {
        return Err(CremonaError::BudgetExceeded { what: "ground-set size for basis enumeration", size: m.size(), budget });
    }
    let en = Enumerator { m, n: m.size(), pairs: pair_closures(m) };
    let found: Vec<Vec<Vec<usize>>> = (0..m.size())
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            if m.rank() == 0 {
                return out;
            }
            if m.is_loop(first) {
                return out;
            }
            en.extend(&mut vec![first], ElementSet::singleton(first), &mut out);
            out
        })
        .collect();
    let mut bases: Vec<Vec<usize>> = found.into_iter().flatten().collect();
    bases.sort();
    bases
        .into_iter()
        .map(|b| cremona_check(m, &b)?.ok_or(CremonaError::InvariantViolation(format!("enumerated {b:?} fails the check"))))
        .collect()
}

/// Orbits of the given automorphisms on a list of Cremona bases, as index lists.
/// `auts` should be a whole group.
pub fn basis_orbits(bases: &[CremonaData], auts: &[crate::matroid::ElementBijection]) -> Vec<Vec<usize>> {
    let sets: Vec<ElementSet> = bases.iter().map(CremonaData::basis_set).collect();
    let mut seen = vec![false; sets.len()];
    let mut orbits = Vec::new();
    for start in 0..sets.len() {
        if seen[start] {
            continue;
        }
        let mut orbit: Vec<usize> = Vec::new();
        for a in auts {
            if let Some(k) = sets.iter().position(|&s| s == a.apply_set(sets[start])) {
                if !seen[k] {
                    seen[k] = true;
                    orbit.push(k);
                }
            }
        }
        seen[start] = true;
        if !orbit.contains(&start) {
            orbit.push(start);
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

/// Every ordered pair of distinct Cremona bases.
pub fn ordered_pairs(bases: &[CremonaData]) -> impl Iterator<Item = (&CremonaData, &CremonaData)> {
    bases.iter().flat_map(move |a| bases.iter().filter(move |b| *b != a).map(move |b| (a, b)))
}
