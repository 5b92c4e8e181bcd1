//! Matroids given by an exact rank oracle.
//!
//! Elements are dense indices `0..m`; labels are presentation only. Three
//! concrete backends are supported (coordinate vectors, rank-3 lines,
//! explicit circuits) plus minors of an existing matroid.

mod iso;
mod io;

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::{subsets_of_size, ElementSet, MAX_ELEMENTS};
use crate::field::{Field, FieldElement, FieldError, FieldKind, Fp, QuadSqrt5};
use crate::linalg::Echelon;

pub use io::{MatroidFile, BackendName};
pub use iso::{ElementBijection, SearchLimits};

/// Default cap on the ground-set size for enumerating flats of rank >= 3.
pub const DEFAULT_FLAT_BUDGET: usize = 36;

/// Subsets of size up to this bound are tested for connectivity by trying
/// every 2-partition; larger ones use fundamental circuits.
const PARTITION_CONNECTIVITY_LIMIT: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("element {element} out of range for a ground set of size {size}")]
    ElementOutOfRange { element: usize, size: usize },
    #[error("ground set of size {0} exceeds the supported maximum of {MAX_ELEMENTS}")]
    GroundTooLarge(usize),
    #[error("ground set must be nonempty")]
    EmptyGround,
    #[error("labels must be pairwise distinct (duplicate {0:?})")]
    DuplicateLabel(String),
    #[error("expected {expected} labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("invalid line data: {0}")]
    InvalidLines(String),
    #[error("invalid circuit data: {0}")]
    InvalidCircuits(String),
    #[error("invalid vector data: {0}")]
    InvalidVectors(String),
    #[error("{0:?} is not a flat")]
    NotAFlat(ElementSet),
    #[error("rank {k} out of range 0..={rank}")]
    RankOutOfRange { k: usize, rank: usize },
    #[error("budget exceeded: {what} ({size} > {budget})")]
    BudgetExceeded { what: &'static str, size: usize, budget: usize },
    #[error("basepoint {0} is a loop or a coloop")]
    DegenerateBasepoint(usize),
    #[error("matroid is not simple")]
    NotSimple,
    #[error("ground sets differ in size ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("malformed matroid file: {0}")]
    Format(String),
}

pub type Result<T, E = MatroidError> = std::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(MatroidError::EmptyGround);
        }
        if size > MAX_ELEMENTS {
            return Err(MatroidError::GroundTooLarge(size));
        }
        Ok(GroundSet { size, labels: None })
    }

    pub fn labeled(labels: Vec<String>) -> Result<Self> {
        let mut g = GroundSet::new(labels.len())?;
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(MatroidError::DuplicateLabel(l.clone()));
            }
        }
        g.labels = Some(labels);
        Ok(g)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn label(&self, e: usize) -> String {
        match &self.labels {
            Some(l) => l[e].clone(),
            None => e.to_string(),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.size).map(|e| self.label(e)).collect()
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|x| x == label),
            None => label.parse().ok().filter(|&e| e < self.size),
        }
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.size)
    }
}

/// Coordinate vectors over one exact field.
#[derive(Clone, Debug)]
pub struct VectorConfig<T: Field> {
    dim: usize,
    vectors: Vec<Vec<T>>,
}

impl<T: Field> VectorConfig<T> {
    fn new(vectors: Vec<Vec<T>>) -> Result<Self> {
        let dim = vectors.first().map_or(0, Vec::len);
        if vectors.iter().any(|v| v.len() != dim) {
            return Err(MatroidError::InvalidVectors("vectors have different lengths".into()));
        }
        Ok(VectorConfig { dim, vectors })
    }

    fn echelon(&self, s: ElementSet) -> Echelon<T> {
        let mut ech = Echelon::new(self.dim);
        for i in s {
            ech.insert(&self.vectors[i]);
            if ech.is_full() {
                break;
            }
        }
        ech
    }

    fn rank(&self, s: ElementSet) -> usize {
        self.echelon(s).rank()
    }

    fn closure(&self, s: ElementSet) -> ElementSet {
        let ech = self.echelon(s);
        if ech.is_full() {
            return ElementSet::full(self.vectors.len());
        }
        let mut out = s;
        for (i, v) in self.vectors.iter().enumerate() {
            if !s.contains(i) && ech.contains(v) {
                out.insert(i);
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub enum VectorData {
    Rational(VectorConfig<BigRational>),
    Prime(u64, VectorConfig<Fp>),
    Quad(VectorConfig<QuadSqrt5>),
}

macro_rules! dispatch_vectors {
    ($data:expr, $cfg:ident => $body:expr) => {
        match $data {
            VectorData::Rational($cfg) => $body,
            VectorData::Prime(_, $cfg) => $body,
            VectorData::Quad($cfg) => $body,
        }
    };
}

impl VectorData {
    /// Builds typed vectors from tagged field elements (all of one field).
    pub fn from_elements(kind: FieldKind, vectors: &[Vec<FieldElement>]) -> Result<Self> {
        if let Some(bad) = vectors.iter().flatten().find(|x| x.kind() != kind) {
            return Err(FieldError::Mixed(kind, bad.kind()).into());
        }
        Ok(match kind {
            FieldKind::Rational => VectorData::Rational(VectorConfig::new(
                vectors
                    .iter()
                    .map(|v| v.iter().map(|x| x.as_rational().unwrap().clone()).collect())
                    .collect(),
            )?),
            FieldKind::Prime(p) => VectorData::Prime(
                p,
                VectorConfig::new(
                    vectors
                        .iter()
                        .map(|v| {
                            v.iter()
                                .map(|x| match x {
                                    FieldElement::Prime(y) => *y,
                                    _ => unreachable!(),
                                })
                                .collect()
                        })
                        .collect(),
                )?,
            ),
            FieldKind::QuadSqrt5 => VectorData::Quad(VectorConfig::new(
                vectors
                    .iter()
                    .map(|v| {
                        v.iter()
                            .map(|x| match x {
                                FieldElement::Quad(y) => y.clone(),
                                _ => unreachable!(),
                            })
                            .collect()
                    })
                    .collect(),
            )?),
        })
    }

    pub fn kind(&self) -> FieldKind {
        match self {
            VectorData::Rational(_) => FieldKind::Rational,
            VectorData::Prime(p, _) => FieldKind::Prime(*p),
            VectorData::Quad(_) => FieldKind::QuadSqrt5,
        }
    }

    pub fn len(&self) -> usize {
        dispatch_vectors!(self, c => c.vectors.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        dispatch_vectors!(self, c => c.dim)
    }

    pub fn vector(&self, i: usize) -> Vec<FieldElement> {
        match self {
            VectorData::Rational(c) => c.vectors[i].iter().cloned().map(FieldElement::Rational).collect(),
            VectorData::Prime(_, c) => c.vectors[i].iter().copied().map(FieldElement::Prime).collect(),
            VectorData::Quad(c) => c.vectors[i].iter().cloned().map(FieldElement::Quad).collect(),
        }
    }

    pub fn rational_vectors(&self) -> Option<&[Vec<BigRational>]> {
        match self {
            VectorData::Rational(c) => Some(&c.vectors),
            _ => None,
        }
    }

    pub fn quad_vectors(&self) -> Option<&[Vec<QuadSqrt5>]> {
        match self {
            VectorData::Quad(c) => Some(&c.vectors),
            _ => None,
        }
    }

    fn rank(&self, s: ElementSet) -> usize {
        dispatch_vectors!(self, c => c.rank(s))
    }

    fn closure(&self, s: ElementSet) -> ElementSet {
        dispatch_vectors!(self, c => c.closure(s))
    }
}

/// Rank-3 geometry given by its lines of size >= 3.
#[derive(Clone, Debug)]
pub struct LineData {
    lines: Vec<ElementSet>,
    // line index through each pair, indexed a * m + b
    pair_line: Vec<Option<u32>>,
    size: usize,
}

impl LineData {
    fn new(size: usize, lines: Vec<ElementSet>) -> Result<Self> {
        let mut pair_line = vec![None; size * size];
        for (li, l) in lines.iter().enumerate() {
            if l.len() < 3 {
                return Err(MatroidError::InvalidLines(format!("line {l:?} has fewer than 3 elements")));
            }
            if let Some(e) = l.max().filter(|&e| e >= size) {
                return Err(MatroidError::ElementOutOfRange { element: e, size });
            }
            let elems = l.to_vec();
            for (i, &a) in elems.iter().enumerate() {
                for &b in &elems[i + 1..] {
                    if let Some(other) = pair_line[a * size + b] {
                        return Err(MatroidError::InvalidLines(format!(
                            "lines {:?} and {l:?} share the pair {{{a}, {b}}}",
                            lines[other as usize]
                        )));
                    }
                    pair_line[a * size + b] = Some(li as u32);
                    pair_line[b * size + a] = Some(li as u32);
                }
            }
        }
        Ok(LineData { lines, pair_line, size })
    }

    pub fn lines(&self) -> &[ElementSet] {
        &self.lines
    }

    fn line_through(&self, a: usize, b: usize) -> Option<ElementSet> {
        self.pair_line[a * self.size + b].map(|i| self.lines[i as usize])
    }

    fn rank(&self, s: ElementSet) -> usize {
        match s.len() {
            n @ 0..=2 => n,
            _ => {
                let mut it = s.iter();
                let (a, b) = (it.next().unwrap(), it.next().unwrap());
                match self.line_through(a, b) {
                    Some(l) if s.is_subset(l) => 2,
                    _ => 3,
                }
            }
        }
    }

    fn closure(&self, s: ElementSet) -> ElementSet {
        match s.len() {
            0 | 1 => s,
            _ => {
                let mut it = s.iter();
                let (a, b) = (it.next().unwrap(), it.next().unwrap());
                match self.line_through(a, b) {
                    Some(l) if s.is_subset(l) => l,
                    None if s.len() == 2 => s,
                    _ => ElementSet::full(self.size),
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct CircuitData {
    circuits: Vec<ElementSet>,
}

impl CircuitData {
    fn new(size: usize, mut circuits: Vec<ElementSet>) -> Result<Self> {
        for c in &circuits {
            if c.is_empty() {
                return Err(MatroidError::InvalidCircuits("empty circuit".into()));
            }
            if let Some(e) = c.max().filter(|&e| e >= size) {
                return Err(MatroidError::ElementOutOfRange { element: e, size });
            }
        }
        circuits.sort_by(|a, b| a.len().cmp(&b.len()).then(a.lex_cmp(*b)));
        circuits.dedup();
        for (i, c) in circuits.iter().enumerate() {
            if circuits[..i].iter().any(|d| d.is_subset(*c)) {
                return Err(MatroidError::InvalidCircuits(format!("{c:?} contains another circuit")));
            }
        }
        Ok(CircuitData { circuits })
    }

    pub fn circuits(&self) -> &[ElementSet] {
        &self.circuits
    }

    // greedy: e is dependent on I iff some circuit through e lies in I + e
    fn rank(&self, s: ElementSet) -> usize {
        let mut indep = ElementSet::EMPTY;
        for e in s {
            let cand = indep.with(e);
            if !self.circuits.iter().any(|c| c.contains(e) && c.is_subset(cand)) {
                indep = cand;
            }
        }
        indep.len()
    }
}

/// A restriction of `parent` to `map` after contracting `contracted`.
#[derive(Clone, Debug)]
pub struct MinorData {
    parent: Arc<Matroid>,
    map: Vec<usize>,
    contracted: ElementSet,
    contracted_rank: usize,
}

impl MinorData {
    fn lift(&self, s: ElementSet) -> ElementSet {
        s.iter().map(|e| self.map[e]).collect::<ElementSet>() | self.contracted
    }

    fn rank(&self, s: ElementSet) -> usize {
        self.parent.rk(self.lift(s)) - self.contracted_rank
    }

    fn closure(&self, s: ElementSet) -> ElementSet {
        let cl = self.parent.cl(self.lift(s));
        (0..self.map.len()).filter(|&i| cl.contains(self.map[i])).collect()
    }
}

#[derive(Clone, Debug)]
pub enum Backend {
    Vectors(VectorData),
    Lines(LineData),
    Circuits(CircuitData),
    Minor(MinorData),
}

/// A flat with its rank and connectivity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Flat {
    pub elements: ElementSet,
    pub rank: usize,
    pub connected: bool,
}

#[derive(Debug)]
pub struct Matroid {
    ground: GroundSet,
    backend: Backend,
    rank: usize,
    flat_budget: usize,
    levels: Vec<OnceLock<Arc<Vec<Flat>>>>,
    connected: OnceLock<bool>,
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        Matroid {
            ground: self.ground.clone(),
            backend: self.backend.clone(),
            rank: self.rank,
            flat_budget: self.flat_budget,
            levels: self.levels.clone(),
            connected: self.connected.clone(),
        }
    }
}

impl Matroid {
    fn from_backend(ground: GroundSet, backend: Backend) -> Self {
        let mut m = Matroid {
            ground,
            backend,
            rank: 0,
            flat_budget: DEFAULT_FLAT_BUDGET,
            levels: Vec::new(),
            connected: OnceLock::new(),
        };
        m.rank = m.rk(m.ground.all());
        m.levels = (0..=m.rank).map(|_| OnceLock::new()).collect();
        m
    }

    pub fn from_vectors(ground: GroundSet, data: VectorData) -> Result<Self> {
        if data.len() != ground.size() {
            return Err(MatroidError::LabelCount { expected: data.len(), found: ground.size() });
        }
        Ok(Matroid::from_backend(ground, Backend::Vectors(data)))
    }

    /// Convenience constructor for integer coordinate vectors over `Q`.
    pub fn from_integer_vectors(labels: Option<Vec<String>>, vectors: &[Vec<i64>]) -> Result<Self> {
        let ground = match labels {
            Some(l) => GroundSet::labeled(l)?,
            None => GroundSet::new(vectors.len())?,
        };
        let rows: Vec<Vec<FieldElement>> = vectors
            .iter()
            .map(|v| v.iter().map(|&x| FieldKind::Rational.from_int(x)).collect())
            .collect();
        Matroid::from_vectors(ground, VectorData::from_elements(FieldKind::Rational, &rows)?)
    }

    pub fn from_lines(ground: GroundSet, lines: Vec<ElementSet>) -> Result<Self> {
        let data = LineData::new(ground.size(), lines)?;
        Ok(Matroid::from_backend(ground, Backend::Lines(data)))
    }

    pub fn from_circuits(ground: GroundSet, circuits: Vec<ElementSet>) -> Result<Self> {
        let data = CircuitData::new(ground.size(), circuits)?;
        Ok(Matroid::from_backend(ground, Backend::Circuits(data)))
    }

    /// Overrides the ground-set size allowed for enumerating flats of rank >= 3.
    pub fn with_flat_budget(mut self, budget: usize) -> Self {
        self.flat_budget = budget;
        self
    }

    pub fn flat_budget(&self) -> usize {
        self.flat_budget
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn size(&self) -> usize {
        self.ground.size()
    }

    pub fn all(&self) -> ElementSet {
        self.ground.all()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self, e: usize) -> String {
        self.ground.label(e)
    }

    pub fn check(&self, s: ElementSet) -> Result<()> {
        match (s - self.all()).min() {
            Some(e) => Err(MatroidError::ElementOutOfRange { element: e, size: self.size() }),
            None => Ok(()),
        }
    }

    pub fn set_of(&self, elements: &[usize]) -> Result<ElementSet> {
        if let Some(&e) = elements.iter().find(|&&e| e >= self.size()) {
            return Err(MatroidError::ElementOutOfRange { element: e, size: self.size() });
        }
        Ok(elements.iter().collect())
    }

    /// Rank of a subset assumed to lie in the ground set.
    pub fn rk(&self, s: ElementSet) -> usize {
        debug_assert!(s.is_subset(self.all()));
        match &self.backend {
            Backend::Vectors(v) => v.rank(s),
            Backend::Lines(l) => l.rank(s),
            Backend::Circuits(c) => c.rank(s),
            Backend::Minor(m) => m.rank(s),
        }
    }

    /// Closure of a subset assumed to lie in the ground set.
    pub fn cl(&self, s: ElementSet) -> ElementSet {
        debug_assert!(s.is_subset(self.all()));
        match &self.backend {
            Backend::Vectors(v) => v.closure(s),
            Backend::Lines(l) => l.closure(s),
            Backend::Minor(m) => m.closure(s),
            Backend::Circuits(_) => {
                let r = self.rk(s);
                let mut out = s;
                for e in self.all() - s {
                    if self.rk(s.with(e)) == r {
                        out.insert(e);
                    }
                }
                out
            }
        }
    }

    pub fn rank_of(&self, s: ElementSet) -> Result<usize> {
        self.check(s)?;
        Ok(self.rk(s))
    }

    pub fn closure(&self, s: ElementSet) -> Result<Flat> {
        self.check(s)?;
        let elements = self.cl(s);
        Ok(Flat { elements, rank: self.rk(s), connected: self.is_connected_set(elements) })
    }

    pub fn is_flat(&self, s: ElementSet) -> bool {
        s.is_subset(self.all()) && self.cl(s) == s
    }

    pub fn is_independent(&self, s: ElementSet) -> bool {
        self.rk(s) == s.len()
    }

    pub fn is_basis(&self, s: ElementSet) -> bool {
        s.len() == self.rank && self.is_independent(s)
    }

    pub fn is_simple(&self) -> bool {
        (0..self.size()).all(|e| self.rk(ElementSet::singleton(e)) == 1)
            && (0..self.size()).all(|a| (a + 1..self.size()).all(|b| self.rk(ElementSet::pair(a, b)) == 2))
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rk(ElementSet::singleton(e)) == 0
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.rk(self.all().without(e)) < self.rank
    }

    /// Connected components of the restriction to `s`, sorted by least element.
    pub fn components(&self, s: ElementSet) -> Vec<ElementSet> {
        let elems = s.to_vec();
        let mut parent: Vec<usize> = (0..elems.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        // components are generated by fundamental circuits w.r.t. any basis
        let mut basis = ElementSet::EMPTY;
        for &e in &elems {
            if self.rk(basis.with(e)) > basis.len() {
                basis.insert(e);
            }
        }
        let r = basis.len();
        for e in s - basis {
            if self.rk(ElementSet::singleton(e)) == 0 {
                continue;
            }
            for b in basis {
                if self.rk(basis.without(b).with(e)) == r {
                    let (x, y) = (find(&mut parent, pos[&e]), find(&mut parent, pos[&b]));
                    parent[x] = y;
                }
            }
        }
        let mut groups: HashMap<usize, ElementSet> = HashMap::new();
        for (i, &e) in elems.iter().enumerate() {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().insert(e);
        }
        let mut out: Vec<ElementSet> = groups.into_values().collect();
        out.sort_by_key(|c| c.min());
        out
    }

    /// Whether the restriction to `s` is connected; the empty set is not.
    pub fn is_connected_set(&self, s: ElementSet) -> bool {
        if s.is_empty() {
            return false;
        }
        if s.len() == 1 {
            return true;
        }
        if s == self.all() {
            if let Some(&c) = self.connected.get() {
                return c;
            }
            let c = self.components(s).len() == 1;
            let _ = self.connected.set(c);
            return c;
        }
        if s.len() <= PARTITION_CONNECTIVITY_LIMIT {
            let elems = s.to_vec();
            let first = ElementSet::singleton(elems[0]);
            let rest = &elems[1..];
            let r = self.rk(s);
            // a ranges over subsets containing the least element, b = s \ a nonempty
            for mask in 0..(1u32 << rest.len()) - 1 {
                let a = first
                    | rest
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &e)| e)
                        .collect::<ElementSet>();
                if self.rk(a) + self.rk(s - a) == r {
                    return false;
                }
            }
            true
        } else {
            self.components(s).len() == 1
        }
    }

    /// Connectivity of a flat; errors when `f` is not a flat.
    pub fn is_connected(&self, f: ElementSet) -> Result<bool> {
        self.check(f)?;
        if !self.is_flat(f) {
            return Err(MatroidError::NotAFlat(f));
        }
        Ok(self.is_connected_set(f))
    }

    pub fn is_connected_matroid(&self) -> bool {
        self.is_connected_set(self.all())
    }

    fn make_flat(&self, elements: ElementSet, rank: usize) -> Flat {
        Flat { elements, rank, connected: self.is_connected_set(elements) }
    }

    fn next_level(&self, prev: &[Flat], rank: usize) -> Vec<Flat> {
        let all = self.all();
        let found: HashSet<ElementSet> = prev
            .par_iter()
            .flat_map_iter(|f| {
                let mut covered = f.elements;
                let mut out = Vec::new();
                for e in all - f.elements {
                    if covered.contains(e) {
                        continue;
                    }
                    let g = self.cl(f.elements.with(e));
                    covered = covered | g;
                    out.push(g);
                }
                out
            })
            .collect();
        let mut sets: Vec<ElementSet> = found.into_iter().collect();
        sets.sort_by(|a, b| a.lex_cmp(*b));
        sets.into_par_iter().map(|s| self.make_flat(s, rank)).collect()
    }

    /// All flats of rank `k` in lexicographic order of their element lists.
    ///
    /// Levels are generated upward by closing `F ∪ {e}` over the previous
    /// level and memoized. Ranks `>= 3` below the top are refused on ground
    /// sets larger than the flat budget.
    pub fn flats_of_rank(&self, k: usize) -> Result<Arc<Vec<Flat>>> {
        if k > self.rank {
            return Err(MatroidError::RankOutOfRange { k, rank: self.rank });
        }
        if let Some(level) = self.levels[k].get() {
            return Ok(level.clone());
        }
        if k >= 3 && k < self.rank && self.size() > self.flat_budget {
            return Err(MatroidError::BudgetExceeded {
                what: "flat enumeration ground-set size",
                size: self.size(),
                budget: self.flat_budget,
            });
        }
        let level = if k == 0 {
            let loops = self.cl(ElementSet::EMPTY);
            vec![self.make_flat(loops, 0)]
        } else if k == self.rank {
            vec![self.make_flat(self.all(), k)]
        } else {
            let prev = self.flats_of_rank(k - 1)?;
            self.next_level(&prev, k)
        };
        // computed outside the cell so parallel callers never block on it
        let _ = self.levels[k].set(Arc::new(level));
        Ok(self.levels[k].get().unwrap().clone())
    }

    pub fn hyperplanes(&self) -> Result<Arc<Vec<Flat>>> {
        self.flats_of_rank(self.rank.saturating_sub(1))
    }

    /// Every flat, grouped by rank.
    pub fn all_flats(&self) -> Result<Vec<Arc<Vec<Flat>>>> {
        (0..=self.rank).map(|k| self.flats_of_rank(k)).collect()
    }

    /// Restriction `M|F` with elements renumbered in increasing order.
    pub fn restrict(self: &Arc<Self>, f: ElementSet) -> Result<Matroid> {
        self.check(f)?;
        let map = f.to_vec();
        let labels = map.iter().map(|&e| self.label(e)).collect();
        let ground = GroundSet::labeled(labels)?;
        Ok(Matroid::from_backend(
            ground,
            Backend::Minor(MinorData { parent: self.clone(), map, contracted: ElementSet::EMPTY, contracted_rank: 0 }),
        ))
    }

    /// Contraction `M/e`; parallel classes are kept (see [`Matroid::simplify`]).
    pub fn contract(self: &Arc<Self>, e: usize) -> Result<Matroid> {
        let c = self.set_of(&[e])?;
        let map = (self.all() - c).to_vec();
        if map.is_empty() {
            return Err(MatroidError::EmptyGround);
        }
        let labels = map.iter().map(|&x| self.label(x)).collect();
        let ground = GroundSet::labeled(labels)?;
        Ok(Matroid::from_backend(
            ground,
            Backend::Minor(MinorData { parent: self.clone(), map, contracted: c, contracted_rank: self.rk(c) }),
        ))
    }

    /// Removes loops and merges parallel classes. Returns the simple matroid
    /// together with the quotient map `old index -> Some(new index)` (`None`
    /// for loops). Each class is represented by its least element.
    pub fn simplify(self: &Arc<Self>) -> Result<(Matroid, Vec<Option<usize>>)> {
        let n = self.size();
        let mut rep: Vec<Option<usize>> = vec![None; n];
        let mut reps = Vec::new();
        for (e, slot) in rep.iter_mut().enumerate() {
            if self.is_loop(e) {
                continue;
            }
            match reps.iter().position(|&r| self.rk(ElementSet::pair(r, e)) == 1) {
                Some(i) => *slot = Some(i),
                None => {
                    *slot = Some(reps.len());
                    reps.push(e);
                }
            }
        }
        let simple = self.restrict(reps.iter().collect())?;
        Ok((simple, rep))
    }

    /// All circuits, by size then lexicographically.
    pub fn circuits(&self) -> Result<Vec<ElementSet>> {
        if let Backend::Circuits(c) = &self.backend {
            return Ok(c.circuits.clone());
        }
        const BUDGET: u128 = 5_000_000;
        let n = self.size() as u128;
        let mut total: u128 = 0;
        let mut binom: u128 = 1;
        for k in 1..=(self.rank as u128 + 1).min(n) {
            binom = binom * (n - k + 1) / k;
            total += binom;
        }
        if total > BUDGET {
            return Err(MatroidError::BudgetExceeded {
                what: "circuit enumeration subsets",
                size: total.min(usize::MAX as u128) as usize,
                budget: BUDGET as usize,
            });
        }
        let mut out = Vec::new();
        for k in 1..=(self.rank + 1).min(self.size()) {
            let level: Vec<ElementSet> = subsets_of_size(self.all(), k)
                .par_bridge()
                .filter(|s| self.rk(*s) == k - 1 && s.iter().all(|e| self.rk(s.without(e)) == k - 1))
                .collect();
            let mut level = level;
            level.sort_by(|a, b| a.lex_cmp(*b));
            out.extend(level);
        }
        Ok(out)
    }

    /// Parallel connection of `m1` and `m2` glued at `e1 ~ e2`.
    ///
    /// The result is a circuit-backed matroid on `(E1 \ e1) ⊔ {p} ⊔ (E2 \ e2)`
    /// in that order; the basepoint `p` keeps the label of `e1`.
    pub fn parallel_connection(m1: &Matroid, e1: usize, m2: &Matroid, e2: usize) -> Result<Matroid> {
        m1.set_of(&[e1])?;
        m2.set_of(&[e2])?;
        if !m1.is_simple() || !m2.is_simple() {
            return Err(MatroidError::NotSimple);
        }
        for (m, e) in [(m1, e1), (m2, e2)] {
            if m.is_loop(e) || m.is_coloop(e) {
                return Err(MatroidError::DegenerateBasepoint(e));
            }
        }
        let n1 = m1.size() - 1;
        let p = n1;
        let map1: Vec<usize> = (0..m1.size()).map(|e| if e == e1 { p } else if e < e1 { e } else { e - 1 }).collect();
        let map2: Vec<usize> =
            (0..m2.size()).map(|e| if e == e2 { p } else if e < e2 { p + 1 + e } else { p + e }).collect();
        let c1: Vec<ElementSet> = m1.circuits()?.into_iter().map(|c| c.map(&map1)).collect();
        let c2: Vec<ElementSet> = m2.circuits()?.into_iter().map(|c| c.map(&map2)).collect();
        let mut circuits: Vec<ElementSet> = c1.iter().chain(&c2).copied().collect();
        for a in c1.iter().filter(|c| c.contains(p)) {
            for b in c2.iter().filter(|c| c.contains(p)) {
                circuits.push(a.without(p) | b.without(p));
            }
        }
        let mut labels: Vec<String> = (0..m1.size()).filter(|&e| e != e1).map(|e| m1.label(e)).collect();
        labels.push(m1.label(e1));
        labels.extend((0..m2.size()).filter(|&e| e != e2).map(|e| m2.label(e)));
        // keep labels distinct when both sides use the same names
        let ground = match GroundSet::labeled(labels.clone()) {
            Ok(g) => g,
            Err(MatroidError::DuplicateLabel(_)) => {
                let tagged = labels
                    .iter()
                    .enumerate()
                    .map(|(i, l)| if i < n1 { format!("L:{l}") } else if i == p { format!("P:{l}") } else { format!("R:{l}") })
                    .collect();
                GroundSet::labeled(tagged)?
            }
            Err(e) => return Err(e),
        };
        Matroid::from_circuits(ground, circuits)
    }
}
