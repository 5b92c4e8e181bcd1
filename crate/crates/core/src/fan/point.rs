use num_integer::Integer;
use serde::Serialize;

use crate::bitset::ElementSet;

/// An integer weight vector considered modulo the all-ones vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct TropicalPoint {
    weights: Vec<i64>,
}

impl TropicalPoint {
    pub fn new(weights: Vec<i64>) -> Self {
        TropicalPoint { weights }
    }

    /// The indicator vector `v_S`.
    pub fn indicator(size: usize, s: ElementSet) -> Self {
        TropicalPoint { weights: (0..size).map(|i| s.contains(i) as i64).collect() }
    }

    pub fn zero(size: usize) -> Self {
        TropicalPoint { weights: vec![0; size] }
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn add(&self, other: &TropicalPoint) -> TropicalPoint {
        TropicalPoint { weights: self.weights.iter().zip(&other.weights).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, k: i64) -> TropicalPoint {
        TropicalPoint { weights: self.weights.iter().map(|a| a * k).collect() }
    }

    /// `{i : w_i >= c}`.
    pub fn upper_level_set(&self, c: i64) -> ElementSet {
        self.weights.iter().enumerate().filter(|(_, &w)| w >= c).map(|(i, _)| i).collect()
    }

    /// Representative with minimum weight 0.
    pub fn canonical(&self) -> TropicalPoint {
        let min = self.weights.iter().copied().min().unwrap_or(0);
        TropicalPoint { weights: self.weights.iter().map(|w| w - min).collect() }
    }

    /// Canonical representative divided by the gcd of its entries, so that
    /// points on the same ray through the origin coincide.
    pub fn primitive(&self) -> TropicalPoint {
        let c = self.canonical();
        let g = c.weights.iter().fold(0i64, |g, &w| g.gcd(&w));
        if g <= 1 {
            return c;
        }
        TropicalPoint { weights: c.weights.iter().map(|w| w / g).collect() }
    }

    /// Equality in `Z^E / Z·1`.
    pub fn same_class(&self, other: &TropicalPoint) -> bool {
        self.canonical() == other.canonical()
    }

    /// Whether both points span the same ray of the quotient.
    pub fn same_ray(&self, other: &TropicalPoint) -> bool {
        self.primitive() == other.primitive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        let p = TropicalPoint::new(vec![3, 5, 3, 9]);
        assert_eq!(p.canonical().weights(), &[0, 2, 0, 6]);
        assert_eq!(p.primitive().weights(), &[0, 1, 0, 3]);
        assert!(p.same_class(&TropicalPoint::new(vec![0, 2, 0, 6])));
        assert!(TropicalPoint::new(vec![1, 1, 3]).same_ray(&TropicalPoint::new(vec![0, 0, 1])));
        assert!(TropicalPoint::new(vec![4, 4]).primitive().weights().iter().all(|&w| w == 0));
    }

    #[test]
    fn level_sets() {
        let p = TropicalPoint::new(vec![0, 2, 1, 2]);
        assert_eq!(p.upper_level_set(2).to_vec(), vec![1, 3]);
        assert_eq!(p.upper_level_set(1).to_vec(), vec![1, 2, 3]);
    }
}
