use serde::Serialize;

use super::{CremonaData, CremonaError, Result};
use crate::bitset::ElementSet;
use crate::field::{FieldElement, FieldKind};
use crate::matroid::{ElementBijection, GroundSet, Matroid, VectorData};

/// Vectors `σ(e)` realizing `M` and the data they were built from.
#[derive(Clone, Debug, Serialize)]
pub struct Realization {
    pub field: String,
    /// The shared basis element `b_0`.
    pub b0: usize,
    /// Basis in the internal order `b_0, b_1, .., b_d`.
    pub basis_order: Vec<usize>,
    pub e_plus: ElementSet,
    pub e_zero: ElementSet,
    /// Classes of `E_0`, ordered by smallest element.
    pub classes: Vec<ElementSet>,
    /// `κ` value of each class.
    pub kappa: Vec<String>,
    /// `σ(e)` for each element, coordinates in `v_0, .., v_d`.
    pub vectors: Vec<Vec<String>>,
    #[serde(skip)]
    pub elements: Vec<Vec<FieldElement>>,
    pub sigma: ElementBijection,
    #[serde(skip)]
    pub matroid: Matroid,
}

impl Realization {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// Realizes `M` over `field` from two Cremona bases meeting in one element.
pub fn realize(m: &Matroid, d1: &CremonaData, d2: &CremonaData, field: FieldKind) -> Result<Realization> {
    let meet = d1.basis_set() & d2.basis_set();
    if meet.len() != 1 {
        return Err(CremonaError::IntersectionNotSingleton(meet.len()));
    }
    let b0 = meet.min().unwrap();
    let p0 = d1.position(b0).unwrap();
    // internal index t of basis position p: b_0 first, then the rest in order
    let order: Vec<usize> = std::iter::once(p0).chain((0..d1.rank()).filter(|&p| p != p0)).collect();
    let internal = |p: usize| order.iter().position(|&q| q == p).unwrap();

    let mut e_plus = ElementSet::EMPTY;
    let mut e_zero = ElementSet::EMPTY;
    for &((i, j), f) in &d1.parts {
        if i == p0 || j == p0 {
            e_zero = e_zero | f;
        } else {
            e_plus = e_plus | f;
        }
    }

    let mut classes: Vec<(ElementSet, ElementSet)> = Vec::new();
    for e in e_zero {
        let key = m.cl(e_plus.with(e));
        match classes.iter_mut().find(|(k, _)| *k == key) {
            Some((_, members)) => members.insert(e),
            None => classes.push((key, ElementSet::singleton(e))),
        }
    }
    // e_zero is iterated in increasing order, so classes are already sorted
    let classes: Vec<ElementSet> = classes.into_iter().map(|(_, s)| s).collect();
    let n = classes.len();
    let kappa: Vec<FieldElement> = (0..n)
        .map(|t| field.nth_nonzero(t))
        .collect::<Option<_>>()
        .ok_or_else(|| CremonaError::FieldTooSmall {
            field: field.to_string(),
            order: field.order().unwrap_or(0),
            needed: n as u64 + 1,
        })?;

    let dim = d1.rank();
    let unit = |t: usize| -> Vec<FieldElement> { (0..dim).map(|k| field.from_int((k == t) as i64)).collect() };
    let mut elements = Vec::with_capacity(m.size());
    for e in 0..m.size() {
        let v = match (d1.position(e), d1.owner(e)) {
            (Some(p), _) => unit(internal(p)),
            (None, Some((i, j))) if i == p0 || j == p0 => {
                let t = internal(if i == p0 { j } else { i });
                let c = classes.iter().position(|s| s.contains(e)).unwrap();
                let mut v = unit(0);
                v[t] = kappa[c].negated();
                v
            }
            (None, Some((i, j))) => {
                let (ti, tj) = (internal(i), internal(j));
                let (lo, hi) = (ti.min(tj), ti.max(tj));
                let mut v = unit(lo);
                v[hi] = field.from_int(-1);
                v
            }
            (None, None) => unreachable!("Cremona partition covers every element"),
        };
        elements.push(v);
    }

    let ground = GroundSet::labeled(m.ground().labels())?;
    let data = VectorData::from_elements(field, &elements)?;
    let realized = Matroid::from_vectors(ground, data)?;
    let sigma = ElementBijection::identity(m.size());
    if !m.is_isomorphism_to(&realized, &sigma)? {
        return Err(CremonaError::InvariantViolation(format!("σ is not an isomorphism over {field}")));
    }
    Ok(Realization {
        field: field.to_string(),
        b0,
        basis_order: order.iter().map(|&p| d1.basis[p]).collect(),
        e_plus,
        e_zero,
        kappa: kappa.iter().map(ToString::to_string).collect(),
        vectors: elements.iter().map(|v| v.iter().map(ToString::to_string).collect()).collect(),
        classes,
        elements,
        sigma,
        matroid: realized,
    })
}
