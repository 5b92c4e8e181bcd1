//! Named matroids: root systems, graphs, uniform matroids, the Fano plane
//! and rank-3 Dowling geometries.

pub mod action;
mod dowling;
mod roots;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bitset::{subsets_of_size, ElementSet};
use crate::matroid::{GroundSet, Matroid, MatroidError};

pub use action::{normalize_sign, orbit, reflect, vector_orbit, ElementIndex, LinearAction, OrderedField};
pub use dowling::{dowling_rank3, GroupTable};
pub use roots::{coxeter_matroid, Family, PositiveRootSet, RootSystemSpec, RootVectors};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("cannot reflect in the zero vector")]
    ZeroRoot,
    #[error("the action does not preserve the element set (image of element {0})")]
    NotInvariant(usize),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("edge {0} is a self-loop")]
    SelfLoop(usize),
    #[error("edges {0} and {1} are parallel")]
    DuplicateEdge(usize, usize),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// Element labels `1..=6` in the K_4 picture of the A_3 arrangement:
/// `x, y, y-z, x-z, x-y, z`.
pub const A3_EXAMPLE_VECTORS: [[i64; 3]; 6] = [[1, 0, 0], [0, 1, 0], [0, 1, -1], [1, 0, -1], [1, -1, 0], [0, 0, 1]];

/// The A_3 arrangement with elements labeled `"1"` to `"6"`.
pub fn a3_example() -> Matroid {
    let labels = (1..=6).map(|i| i.to_string()).collect();
    let vectors: Vec<Vec<i64>> = A3_EXAMPLE_VECTORS.iter().map(|v| v.to_vec()).collect();
    Matroid::from_integer_vectors(Some(labels), &vectors).expect("fixed data")
}

/// Graphic matroid via the vectors `x_u - x_v`; element `i` is edge `i`.
pub fn graphic_matroid(vertices: usize, edges: &[(usize, usize)]) -> Result<Matroid, GenError> {
    let mut seen = std::collections::HashMap::new();
    let mut vectors = Vec::with_capacity(edges.len());
    for (i, &(u, v)) in edges.iter().enumerate() {
        if u == v {
            return Err(GenError::SelfLoop(i));
        }
        let (a, b) = (u.min(v), u.max(v));
        if b >= vertices {
            return Err(GenError::InvalidSpec(format!("edge {i} uses vertex {b} of {vertices}")));
        }
        if let Some(j) = seen.insert((a, b), i) {
            return Err(GenError::DuplicateEdge(j, i));
        }
        let mut x = vec![0i64; vertices];
        x[a] = 1;
        x[b] = -1;
        vectors.push(x);
    }
    let labels = edges.iter().map(|&(u, v)| format!("v{}v{}", u.min(v) + 1, u.max(v) + 1)).collect();
    Ok(Matroid::from_integer_vectors(Some(labels), &vectors)?)
}

/// `M(K_n)` with edges in lexicographic order.
pub fn complete_graph(n: usize) -> Result<Matroid, GenError> {
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    graphic_matroid(n, &edges)
}

/// `U_{r,m}` on labels `"1"` to `"m"`, given by its `(r+1)`-element circuits.
pub fn uniform(r: usize, m: usize) -> Result<Matroid, GenError> {
    if r > m {
        return Err(GenError::InvalidSpec(format!("U:{r},{m} needs r <= m")));
    }
    let ground = GroundSet::labeled((1..=m).map(|i| i.to_string()).collect())?;
    let circuits = subsets_of_size(ground.all(), r + 1).collect();
    Ok(Matroid::from_circuits(ground, circuits)?)
}

/// Lines of the Fano plane on labels `1..=7`.
pub const FANO_LINES: [[usize; 3]; 7] = [[1, 2, 4], [1, 3, 6], [1, 5, 7], [2, 3, 5], [2, 6, 7], [3, 4, 7], [4, 5, 6]];

pub fn fano() -> Matroid {
    let ground = GroundSet::labeled((1..=7).map(|i| i.to_string()).collect()).expect("fixed data");
    let lines = FANO_LINES.iter().map(|l| l.iter().map(|e| e - 1).collect::<ElementSet>()).collect();
    Matroid::from_lines(ground, lines).expect("fixed data")
}

/// Parallel connection of `Q_3(G)` and `U_{2,3}`, gluing joint `b1` to
/// element `1`. The glued point keeps the label `b1`.
pub fn dowling_parallel_connection(group: &GroupTable) -> Result<Matroid, GenError> {
    let q = dowling_rank3(group)?;
    let u = uniform(2, 3)?;
    Ok(Matroid::parallel_connection(&q, 0, &u, 0)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupName {
    Cyclic(usize),
    Klein,
}

impl GroupName {
    pub fn table(&self) -> GroupTable {
        match self {
            GroupName::Cyclic(n) => GroupTable::cyclic(*n),
            GroupName::Klein => GroupTable::klein(),
        }
    }
}

impl FromStr for GroupName {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, GenError> {
        match s {
            "trivial" => Ok(GroupName::Cyclic(1)),
            "Z2xZ2" => Ok(GroupName::Klein),
            _ => s
                .strip_prefix('Z')
                .and_then(|n| n.parse().ok())
                .filter(|&n| n >= 1)
                .map(GroupName::Cyclic)
                .ok_or_else(|| GenError::InvalidSpec(format!("unknown group {s:?}"))),
        }
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupName::Cyclic(1) => write!(f, "trivial"),
            GroupName::Cyclic(n) => write!(f, "Z{n}"),
            GroupName::Klein => write!(f, "Z2xZ2"),
        }
    }
}

/// Generator strings accepted on the command line.
///
/// `A3` .. `H4` (root systems), `example:A3`, `K<n>`, `U:<r>,<m>`, `fano`,
/// `dowling:<G>` and `dowling-pc:<G>` with `G` one of `trivial`, `Z<n>`,
/// `Z2xZ2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    Coxeter(RootSystemSpec),
    ExampleA3,
    Complete(usize),
    Uniform(usize, usize),
    Fano,
    Dowling(GroupName),
    DowlingParallel(GroupName),
}

impl FromStr for GeneratorSpec {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, GenError> {
        let s = s.trim();
        let bad = || GenError::InvalidSpec(format!("unknown generator {s:?}"));
        if s == "fano" {
            return Ok(GeneratorSpec::Fano);
        }
        if s == "example:A3" {
            return Ok(GeneratorSpec::ExampleA3);
        }
        if let Some(g) = s.strip_prefix("dowling:") {
            return Ok(GeneratorSpec::Dowling(g.parse()?));
        }
        if let Some(g) = s.strip_prefix("dowling-pc:") {
            return Ok(GeneratorSpec::DowlingParallel(g.parse()?));
        }
        if let Some(rm) = s.strip_prefix("U:") {
            let (r, m) = rm.split_once(',').ok_or_else(bad)?;
            let r = r.trim().parse().map_err(|_| bad())?;
            let m = m.trim().parse().map_err(|_| bad())?;
            if r > m || m == 0 {
                return Err(bad());
            }
            return Ok(GeneratorSpec::Uniform(r, m));
        }
        if let Some(n) = s.strip_prefix('K') {
            let n: usize = n.parse().map_err(|_| bad())?;
            if n < 2 {
                return Err(bad());
            }
            return Ok(GeneratorSpec::Complete(n));
        }
        s.parse().map(GeneratorSpec::Coxeter).map_err(|_| bad())
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Coxeter(r) => write!(f, "{r}"),
            GeneratorSpec::ExampleA3 => write!(f, "example:A3"),
            GeneratorSpec::Complete(n) => write!(f, "K{n}"),
            GeneratorSpec::Uniform(r, m) => write!(f, "U:{r},{m}"),
            GeneratorSpec::Fano => write!(f, "fano"),
            GeneratorSpec::Dowling(g) => write!(f, "dowling:{g}"),
            GeneratorSpec::DowlingParallel(g) => write!(f, "dowling-pc:{g}"),
        }
    }
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Matroid, GenError> {
        match self {
            GeneratorSpec::Coxeter(r) => Ok(coxeter_matroid(*r)?.matroid),
            GeneratorSpec::ExampleA3 => Ok(a3_example()),
            GeneratorSpec::Complete(n) => complete_graph(*n),
            GeneratorSpec::Uniform(r, m) => uniform(*r, *m),
            GeneratorSpec::Fano => Ok(fano()),
            GeneratorSpec::Dowling(g) => dowling_rank3(&g.table()),
            GeneratorSpec::DowlingParallel(g) => dowling_parallel_connection(&g.table()),
        }
    }
}
