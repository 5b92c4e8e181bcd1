use num_traits::One;
use serde::Serialize;

use super::{CremonaData, CremonaError, Result};
use crate::bitset::ElementSet;
use crate::fan::TropicalPoint;
use crate::linalg::ExactMatrix;
use crate::matroid::Matroid;

/// An integer matrix acting on `Z^E`; column `k` is the image of `v_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegerLinearMap {
    pub matrix: Vec<Vec<i64>>,
}

impl IntegerLinearMap {
    pub fn identity(n: usize) -> Self {
        IntegerLinearMap { matrix: (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect() }
    }

    /// Column `k` is the indicator vector of `images[k]`.
    pub fn from_images(n: usize, images: &[ElementSet]) -> Self {
        let mut matrix = vec![vec![0; n]; n];
        for (k, img) in images.iter().enumerate() {
            for i in img.iter() {
                matrix[i][k] = 1;
            }
        }
        IntegerLinearMap { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn column(&self, k: usize) -> Vec<i64> {
        self.matrix.iter().map(|row| row[k]).collect()
    }

    /// The scalar `c` with `A·1 = c·1`, if any.
    pub fn one_line_scale(&self) -> Option<i64> {
        let sums: Vec<i64> = self.matrix.iter().map(|row| row.iter().sum()).collect();
        let c = *sums.first()?;
        sums.iter().all(|&s| s == c).then_some(c)
    }

    /// Matrix of the induced map on `Z^E / Z·1` in the basis
    /// `v_0, .., v_{n-2}`: `Q_ik = A_ik - A_{n-1,k}`.
    pub fn quotient_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.dim();
        let last = &self.matrix[n - 1];
        (0..n - 1).map(|i| (0..n - 1).map(|k| self.matrix[i][k] - last[k]).collect()).collect()
    }

    pub fn quotient_det(&self) -> Result<i64> {
        let q = self.quotient_matrix();
        if q.is_empty() {
            return Ok(1);
        }
        let det = ExactMatrix::from_i64_rows(&q).determinant()?;
        let r = det.as_rational().expect("integer matrix");
        if !r.is_integer() {
            return Err(CremonaError::InvariantViolation("non-integral determinant".into()));
        }
        r.to_integer().try_into().map_err(|_| CremonaError::InvariantViolation("determinant overflow".into()))
    }

    pub fn is_quotient_unimodular(&self) -> Result<bool> {
        Ok(self.quotient_det()?.abs().is_one())
    }

    pub fn apply(&self, w: &TropicalPoint) -> TropicalPoint {
        let x = w.weights();
        TropicalPoint::new(self.matrix.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &IntegerLinearMap) -> IntegerLinearMap {
        let n = self.dim();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum()).collect())
            .collect();
        IntegerLinearMap { matrix }
    }

    /// Whether the map is the identity modulo `Z·1`: every column is
    /// `e_k + c_k·1`.
    pub fn is_identity_mod_one(&self) -> bool {
        let n = self.dim();
        n < 2
            || (0..n).all(|k| {
                let col = self.column(k);
                let c = col[if k == 0 { 1 } else { 0 }];
                col.iter().enumerate().all(|(i, &x)| x - c == (i == k) as i64)
            })
    }
}

/// `Crem_b`: `v_{b_j} ↦ v_{B_j}`, all other `v_e` fixed.
///
/// Fails unless the all-ones line is preserved and the induced map on the
/// quotient is unimodular.
pub fn crem_map(m: &Matroid, d: &CremonaData) -> Result<IntegerLinearMap> {
    let images: Vec<ElementSet> = (0..m.size())
        .map(|e| match d.position(e) {
            Some(j) => d.corank_flats[j],
            None => ElementSet::singleton(e),
        })
        .collect();
    let map = IntegerLinearMap::from_images(m.size(), &images);
    if map.one_line_scale().is_none_or(|c| c <= 0) {
        return Err(CremonaError::OneLineNotPreserved);
    }
    let det = map.quotient_det()?;
    if det.abs() != 1 {
        return Err(CremonaError::NotUnimodular(det));
    }
    Ok(map)
}
