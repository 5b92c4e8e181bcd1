//! Reflections, signed permutations and orbits on roots, elements and flats.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::hash::Hash;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::GenError;
use crate::bitset::ElementSet;
use crate::field::{Field, FieldElement, QuadSqrt5};
use crate::matroid::ElementBijection;

/// An exact field with a total order compatible with arithmetic.
pub trait OrderedField: Field + Eq + Hash + Ord {
    fn from_i64(n: i64) -> Self;
    fn sign(&self) -> Ordering;
    fn to_element(&self) -> FieldElement;
}

impl OrderedField for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn sign(&self) -> Ordering {
        if Zero::is_zero(self) {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
    fn to_element(&self) -> FieldElement {
        FieldElement::Rational(self.clone())
    }
}

impl OrderedField for QuadSqrt5 {
    fn from_i64(n: i64) -> Self {
        QuadSqrt5::from_ints(n, 0)
    }
    fn sign(&self) -> Ordering {
        self.signum()
    }
    fn to_element(&self) -> FieldElement {
        FieldElement::Quad(self.clone())
    }
}

pub fn dot<T: Field>(u: &[T], v: &[T]) -> T {
    let mut acc = u[0].zero_like();
    for (a, b) in u.iter().zip(v) {
        acc = acc.add(&a.mul(b));
    }
    acc
}

/// `v - 2 <r, v> / <r, r> · r`.
pub fn reflect<T: Field>(root: &[T], v: &[T]) -> Result<Vec<T>, GenError> {
    if root.len() != v.len() {
        return Err(GenError::Dimension { expected: root.len(), found: v.len() });
    }
    let rr = dot(root, root);
    let c = dot(root, v).div(&rr).ok_or(GenError::ZeroRoot)?;
    let two_c = c.add(&c);
    Ok(v.iter().zip(root).map(|(x, r)| x.sub_mul(&two_c, r)).collect())
}

/// Flips `v` so that its first nonzero coordinate is positive.
pub fn normalize_sign<T: OrderedField>(v: &[T]) -> Vec<T> {
    match v.iter().map(OrderedField::sign).find(|s| *s != Ordering::Equal) {
        Some(Ordering::Less) => v.iter().map(Field::neg).collect(),
        _ => v.to_vec(),
    }
}

/// A linear map on coordinate space.
#[derive(Clone, Debug)]
pub enum LinearAction<T> {
    Reflection(Vec<T>),
    /// `x_i ↦ ±x_{target}`: entry `i` is `(target, negate)`.
    SignedPermutation(Vec<(usize, bool)>),
}

impl<T: OrderedField> LinearAction<T> {
    /// The coordinate transposition `x_i <-> x_j` (0-based).
    pub fn transposition(dim: usize, i: usize, j: usize) -> Self {
        let mut p: Vec<(usize, bool)> = (0..dim).map(|k| (k, false)).collect();
        p.swap(i, j);
        LinearAction::SignedPermutation(p)
    }

    pub fn apply(&self, v: &[T]) -> Result<Vec<T>, GenError> {
        match self {
            LinearAction::Reflection(r) => reflect(r, v),
            LinearAction::SignedPermutation(p) => {
                if p.len() != v.len() {
                    return Err(GenError::Dimension { expected: p.len(), found: v.len() });
                }
                let mut out = vec![v[0].zero_like(); v.len()];
                for (i, &(t, neg)) in p.iter().enumerate() {
                    out[t] = if neg { v[i].neg() } else { v[i].clone() };
                }
                Ok(out)
            }
        }
    }

    /// Conjugate `g ∘ self ∘ g⁻¹` for a signed permutation `g` that is an
    /// involution, as used for subgroups such as `τ S_6 τ⁻¹`.
    pub fn conjugate_by_involution(&self, g: &LinearAction<T>) -> Result<Self, GenError> {
        match (self, g) {
            (LinearAction::SignedPermutation(p), LinearAction::SignedPermutation(q)) => {
                let dim = p.len();
                // composite on basis vectors: e_i -> g(self(g(e_i)))
                let image = |i: usize| -> (usize, bool) {
                    let (a, s1) = q[i];
                    let (b, s2) = p[a];
                    let (c, s3) = q[b];
                    (c, s1 ^ s2 ^ s3)
                };
                Ok(LinearAction::SignedPermutation((0..dim).map(image).collect()))
            }
            (LinearAction::Reflection(r), _) => Ok(LinearAction::Reflection(g.apply(r)?)),
            _ => Err(GenError::InvalidSpec("conjugation by a reflection is not supported".into())),
        }
    }
}

/// Breadth-first closure of `{seed}` under `step(generator, x)`, sorted.
pub fn orbit<G, X, F>(generators: &[G], seed: X, mut step: F) -> Result<BTreeSet<X>, GenError>
where
    X: Clone + Ord,
    F: FnMut(&G, &X) -> Result<X, GenError>,
{
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(seed.clone());
    queue.push_back(seed);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = step(g, &x)?;
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// Sign-normalized lookup from root vectors to element indices.
pub struct ElementIndex<'a, T> {
    vectors: &'a [Vec<T>],
    index: HashMap<Vec<T>, usize>,
}

impl<'a, T: OrderedField> ElementIndex<'a, T> {
    pub fn new(vectors: &'a [Vec<T>]) -> Self {
        let index = vectors.iter().enumerate().map(|(i, v)| (normalize_sign(v), i)).collect();
        ElementIndex { vectors, index }
    }

    pub fn lookup(&self, v: &[T]) -> Option<usize> {
        self.index.get(&normalize_sign(v)).copied()
    }

    /// Image of an element: `w(v)` or `-w(v)`, whichever is positive.
    pub fn act_on_element(&self, g: &LinearAction<T>, e: usize) -> Result<usize, GenError> {
        let image = g.apply(&self.vectors[e])?;
        self.lookup(&image).ok_or(GenError::NotInvariant(e))
    }

    pub fn act_on_set(&self, g: &LinearAction<T>, s: ElementSet) -> Result<ElementSet, GenError> {
        s.iter().map(|e| self.act_on_element(g, e)).collect()
    }

    /// The permutation of elements induced by `g`.
    pub fn permutation(&self, g: &LinearAction<T>) -> Result<ElementBijection, GenError> {
        let forward = (0..self.vectors.len()).map(|e| self.act_on_element(g, e)).collect::<Result<Vec<_>, _>>()?;
        ElementBijection::new(forward).ok_or(GenError::NotInvariant(0))
    }

    pub fn element_orbit(&self, gens: &[LinearAction<T>], e: usize) -> Result<BTreeSet<usize>, GenError> {
        orbit(gens, e, |g, &x| self.act_on_element(g, x))
    }

    /// Orbit of a set of elements (typically a flat), acting elementwise.
    pub fn set_orbit(&self, gens: &[LinearAction<T>], s: ElementSet) -> Result<Vec<ElementSet>, GenError> {
        let out = orbit(gens, s.bits(), |g, &x| Ok(self.act_on_set(g, ElementSet::from_bits(x))?.bits()))?;
        let mut sets: Vec<ElementSet> = out.into_iter().map(ElementSet::from_bits).collect();
        sets.sort_by(|a, b| a.lex_cmp(*b));
        Ok(sets)
    }
}

/// Orbit of a vector, returned up to sign and sorted.
pub fn vector_orbit<T: OrderedField>(gens: &[LinearAction<T>], v: &[T]) -> Result<BTreeSet<Vec<T>>, GenError> {
    orbit(gens, normalize_sign(v), |g, x| Ok(normalize_sign(&g.apply(x)?)))
}
