//! Positive roots of the finite irreducible root systems.
//!
//! Types A, B, D, E, F use integer coordinates (half-integral roots of
//! E_8 and F_4 are doubled). Types H_3 and H_4 use the icosidodecahedron
//! and the 600-cell over `Q(√5)`, scaled so that every coordinate is an
//! integral combination of 1 and √5. The first nonzero coordinate of every
//! stored root is positive.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use super::action::{normalize_sign, OrderedField};
use super::GenError;
use crate::field::{Field, FieldElement, FieldKind, QuadSqrt5};
use crate::matroid::{GroundSet, Matroid, VectorData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    D,
    E,
    F,
    H,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootSystemSpec {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self, GenError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::H => (3..=4).contains(&rank),
        };
        if ok {
            Ok(RootSystemSpec { family, rank })
        } else {
            Err(GenError::InvalidSpec(format!("no root system of type {family:?}{rank}")))
        }
    }

    /// Number of positive roots.
    pub fn positive_root_count(self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => n * (n + 1) / 2,
            (Family::B, _) => n * n,
            (Family::D, _) => n * (n - 1),
            (Family::E, 6) => 36,
            (Family::E, 7) => 63,
            (Family::E, _) => 120,
            (Family::F, _) => 24,
            (Family::H, 3) => 15,
            (Family::H, _) => 60,
        }
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for RootSystemSpec {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, GenError> {
        let bad = || GenError::InvalidSpec(format!("unknown root system {s:?}"));
        let mut chars = s.trim().chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('H') => Family::H,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        RootSystemSpec::new(family, rank)
    }
}

#[derive(Clone, Debug)]
pub enum RootVectors {
    Rational(Vec<Vec<BigRational>>),
    Quad(Vec<Vec<QuadSqrt5>>),
}

impl RootVectors {
    pub fn len(&self) -> usize {
        match self {
            RootVectors::Rational(v) => v.len(),
            RootVectors::Quad(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        match self {
            RootVectors::Rational(v) => v[0].len(),
            RootVectors::Quad(v) => v[0].len(),
        }
    }

    pub fn rational(&self) -> Option<&[Vec<BigRational>]> {
        match self {
            RootVectors::Rational(v) => Some(v),
            _ => None,
        }
    }

    pub fn quad(&self) -> Option<&[Vec<QuadSqrt5>]> {
        match self {
            RootVectors::Quad(v) => Some(v),
            _ => None,
        }
    }
}

/// Positive roots together with the matroid they realize.
#[derive(Clone, Debug)]
pub struct PositiveRootSet {
    pub spec: RootSystemSpec,
    pub vectors: RootVectors,
    pub matroid: Matroid,
}

fn int_label(c: &[i64], halved: bool) -> String {
    let mut s = String::new();
    for (i, &x) in c.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let sign = if x < 0 { "-" } else if s.is_empty() { "" } else { "+" };
        let mag = if x.abs() == 1 { String::new() } else { x.abs().to_string() };
        s.push_str(&format!("{sign}{mag}x{}", i + 1));
    }
    if halved {
        format!("({s})/2")
    } else {
        s
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn pm(n: usize, i: usize, j: usize) -> [Vec<i64>; 2] {
    let mut plus = unit(n, i);
    plus[j] = 1;
    let mut minus = unit(n, i);
    minus[j] = -1;
    [plus, minus]
}

/// `x_i ± x_j` for `i < j`, plus first, in lexicographic order of `(i, j)`.
fn d_roots(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.extend(pm(n, i, j));
        }
    }
    out
}

/// `x_1 + ε_2 x_2 + … + ε_n x_n`, sign patterns in binary order with `+`
/// first, filtered by `keep` on the sign vector.
fn half_roots(n: usize, keep: impl Fn(&[i64]) -> bool) -> Vec<Vec<i64>> {
    (0..1u32 << (n - 1))
        .map(|mask| {
            let mut v = vec![1i64; n];
            for (k, x) in v.iter_mut().enumerate().skip(1) {
                if mask >> (n - 1 - k) & 1 == 1 {
                    *x = -1;
                }
            }
            v
        })
        .filter(|v| keep(v))
        .collect()
}

fn e8_roots() -> Vec<(Vec<i64>, bool)> {
    let mut out: Vec<(Vec<i64>, bool)> = d_roots(8).into_iter().map(|v| (v.iter().map(|x| 2 * x).collect(), false)).collect();
    out.extend(half_roots(8, |v| v[1..].iter().product::<i64>() == 1).into_iter().map(|v| (v, true)));
    out
}

fn integer_roots(spec: RootSystemSpec) -> Vec<(Vec<i64>, bool)> {
    let n = spec.rank;
    let plain = |vs: Vec<Vec<i64>>| vs.into_iter().map(|v| (v, false)).collect::<Vec<_>>();
    match spec.family {
        Family::A => {
            let mut out = Vec::new();
            for i in 0..=n {
                for j in i + 1..=n {
                    let mut v = unit(n + 1, i);
                    v[j] = -1;
                    out.push(v);
                }
            }
            plain(out)
        }
        Family::B => {
            let mut out: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
            out.extend(d_roots(n));
            plain(out)
        }
        Family::D => plain(d_roots(n)),
        Family::F => {
            let mut out: Vec<(Vec<i64>, bool)> = (0..4).map(|i| (unit(4, i).iter().map(|x| 2 * x).collect(), false)).collect();
            out.extend(d_roots(4).into_iter().map(|v| (v.iter().map(|x| 2 * x).collect(), false)));
            out.extend(half_roots(4, |_| true).into_iter().map(|v| (v, true)));
            out
        }
        Family::E => {
            // E_7 and E_6 sit inside E_8 as the roots orthogonal to
            // x7 + x8, respectively to x7 + x8 and x6 - x7
            let keep = |v: &Vec<i64>| match n {
                7 => v[6] + v[7] == 0,
                6 => v[6] + v[7] == 0 && v[5] - v[6] == 0,
                _ => true,
            };
            e8_roots().into_iter().filter(|(v, _)| keep(v)).collect()
        }
        Family::H => unreachable!(),
    }
}

fn quad_roots(n: usize) -> Vec<Vec<QuadSqrt5>> {
    let c = |a: i64, b: i64| QuadSqrt5::from_ints(a, b);
    // 2·(φ, 1, 1/φ)
    let triple = [c(1, 1), c(2, 0), c(-1, 1)];
    let mut raw: Vec<Vec<QuadSqrt5>> = Vec::new();
    let signs = |k: usize| (0..1u32 << k).map(move |m| (0..k).map(move |i| if m >> (k - 1 - i) & 1 == 1 { -1 } else { 1 }).collect::<Vec<i64>>());
    let scale = |x: &QuadSqrt5, s: i64| x.mul(&c(s, 0));
    if n == 3 {
        for i in 0..3 {
            let mut v = vec![c(0, 0); 3];
            v[i] = c(4, 0);
            raw.push(v);
        }
        for shift in 0..3 {
            for s in signs(3) {
                let mut v = vec![c(0, 0); 3];
                for k in 0..3 {
                    v[(k + shift) % 3] = scale(&triple[k], s[k]);
                }
                raw.push(v);
            }
        }
    } else {
        for i in 0..4 {
            let mut v = vec![c(0, 0); 4];
            v[i] = c(4, 0);
            raw.push(v);
        }
        for s in signs(3) {
            let mut v = vec![c(2, 0)];
            v.extend(s.iter().map(|&x| c(2 * x, 0)));
            raw.push(v);
        }
        // even permutations of (a, b, c, 0)
        for perm in even_permutations(4) {
            for s in signs(3) {
                let mut v = vec![c(0, 0); 4];
                for k in 0..3 {
                    v[perm[k]] = scale(&triple[k], s[k]);
                }
                raw.push(v);
            }
        }
    }
    let mut out: Vec<Vec<QuadSqrt5>> = Vec::new();
    for v in raw {
        let v = normalize_sign(&v);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Permutations of `0..n` with an even number of inversions, in
/// lexicographic order. Entry `k` is the position receiving coordinate `k`.
fn even_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            let inv = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            if inv % 2 == 0 {
                out.push(p.clone());
            }
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(p, k + 1, out);
            p.swap(k, i);
        }
    }
    rec(&mut p, 0, &mut out);
    out.sort();
    out
}

fn quad_label(v: &[QuadSqrt5]) -> String {
    let parts: Vec<String> = v.iter().map(|x| FieldElement::Quad(x.clone()).to_string()).collect();
    format!("({})", parts.join(","))
}

fn build<T: OrderedField>(labels: Vec<String>, vectors: &[Vec<T>], kind: FieldKind) -> Result<Matroid, GenError> {
    let rows: Vec<Vec<FieldElement>> = vectors.iter().map(|v| v.iter().map(OrderedField::to_element).collect()).collect();
    Ok(Matroid::from_vectors(GroundSet::labeled(labels)?, VectorData::from_elements(kind, &rows)?)?)
}

/// The matroid of the positive roots of `spec`.
pub fn coxeter_matroid(spec: RootSystemSpec) -> Result<PositiveRootSet, GenError> {
    if spec.family == Family::H {
        let vectors = quad_roots(spec.rank);
        let labels = vectors.iter().map(|v| quad_label(v)).collect();
        let matroid = build(labels, &vectors, FieldKind::QuadSqrt5)?;
        return Ok(PositiveRootSet { spec, vectors: RootVectors::Quad(vectors), matroid });
    }
    let roots = integer_roots(spec);
    let labels = roots
        .iter()
        .map(|(v, halved)| {
            let shown: Vec<i64> = if *halved { v.clone() } else { v.iter().map(|x| x / v.iter().map(|y| y.abs()).filter(|&y| y > 0).min().unwrap()).collect() };
            int_label(&shown, *halved)
        })
        .collect();
    let vectors: Vec<Vec<BigRational>> = roots.iter().map(|(v, _)| v.iter().map(|&x| BigRational::from_i64(x)).collect()).collect();
    let matroid = build(labels, &vectors, FieldKind::Rational)?;
    Ok(PositiveRootSet { spec, vectors: RootVectors::Rational(vectors), matroid })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_parsing() {
        assert_eq!("E8".parse::<RootSystemSpec>().unwrap(), RootSystemSpec { family: Family::E, rank: 8 });
        assert_eq!("b3".parse::<RootSystemSpec>().unwrap().to_string(), "B3");
        for bad in ["E9", "F3", "C3", "D2", "A0", "H5", "", "Ax"] {
            assert!(bad.parse::<RootSystemSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn labels_are_readable() {
        let f4 = coxeter_matroid("F4".parse().unwrap()).unwrap();
        let labels = f4.matroid.ground().labels();
        assert_eq!(labels[0], "x1");
        assert_eq!(labels[4], "x1+x2");
        assert_eq!(labels[5], "x1-x2");
        assert_eq!(labels[16], "(x1+x2+x3+x4)/2");
        assert_eq!(labels[23], "(x1-x2-x3-x4)/2");
    }

    #[test]
    fn even_permutation_count() {
        assert_eq!(even_permutations(4).len(), 12);
        assert_eq!(even_permutations(3), vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]);
    }

    #[test]
    fn every_vector_is_positive_and_lines_are_distinct() {
        for s in ["A4", "B4", "D5", "F4", "E6", "H3", "H4"] {
            let r = coxeter_matroid(s.parse().unwrap()).unwrap();
            assert_eq!(r.vectors.len(), r.spec.positive_root_count(), "{s}");
            assert!(r.matroid.is_simple(), "{s}");
            match &r.vectors {
                RootVectors::Rational(v) => assert!(v.iter().all(|x| normalize_sign(x) == *x)),
                RootVectors::Quad(v) => assert!(v.iter().all(|x| normalize_sign(x) == *x)),
            }
        }
    }
}
