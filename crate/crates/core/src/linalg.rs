//! Exact linear algebra over the fields of [`crate::field`].

use num_rational::BigRational;
use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError, FieldKind, Fp, QuadSqrt5};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("ragged rows")]
    Ragged,
}

/// Row space kept in reduced row echelon form, grown one vector at a time.
#[derive(Clone, Debug)]
pub struct Echelon<T: Field> {
    dim: usize,
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Field> Echelon<T> {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    fn reduce(&self, v: &[T]) -> Vec<T> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let c = w[p].clone();
                for (x, r) in w.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = x.sub_mul(&c, r);
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[T]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        if self.is_full() {
            return true;
        }
        // RREF: v lies in the span iff v equals the combination of rows
        // weighted by its pivot coordinates
        for c in 0..self.dim {
            if self.pivots.contains(&c) {
                continue;
            }
            let mut acc = v[c].zero_like();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !v[p].is_zero() && !row[c].is_zero() {
                    acc = acc.add(&v[p].mul(&row[c]));
                }
            }
            if acc != v[c] {
                return false;
            }
        }
        true
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[T]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        if self.is_full() {
            return false;
        }
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero pivot");
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, r) in row.iter_mut().zip(&w) {
                    if !r.is_zero() {
                        *x = x.sub_mul(&c, r);
                    }
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }
}

pub fn rank_of<T: Field>(dim: usize, vectors: &[&[T]]) -> usize {
    let mut ech = Echelon::new(dim);
    for v in vectors {
        ech.insert(v);
        if ech.is_full() {
            break;
        }
    }
    ech.rank()
}

/// Determinant of a square matrix by Gaussian elimination with exact division.
pub fn determinant_of<T: Field>(rows: &[Vec<T>], one: &T) -> T {
    let n = rows.len();
    let mut a: Vec<Vec<T>> = rows.to_vec();
    let mut det = one.clone();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return one.zero_like();
        };
        if piv != col {
            a.swap(piv, col);
            det = det.neg();
        }
        let p = a[col][col].clone();
        det = det.mul(&p);
        let inv = p.inv().expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].mul(&inv);
            let (top, bottom) = a.split_at_mut(r);
            let pivot_row = &top[col];
            for (x, y) in bottom[0][col..].iter_mut().zip(&pivot_row[col..]) {
                *x = x.sub_mul(&f, y);
            }
        }
    }
    det
}

/// Matrix with entries in a single exact field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    kind: FieldKind,
    entries: Vec<FieldElement>,
}

enum Typed {
    Rational(Vec<Vec<BigRational>>),
    Prime(Vec<Vec<Fp>>),
    Quad(Vec<Vec<QuadSqrt5>>),
}

impl ExactMatrix {
    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Ragged);
        }
        let kind = rows.iter().flatten().next().map_or(FieldKind::Rational, FieldElement::kind);
        if let Some(bad) = rows.iter().flatten().find(|x| x.kind() != kind) {
            return Err(FieldError::Mixed(kind, bad.kind()).into());
        }
        Ok(ExactMatrix { rows: r, cols: c, kind, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|&x| FieldKind::Rational.from_int(x)).collect())
            .collect();
        ExactMatrix::from_rows(rows).expect("well-formed integer matrix")
    }

    pub fn identity(n: usize, kind: FieldKind) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| kind.from_int((i == j) as i64)).collect())
            .collect();
        ExactMatrix { rows: n, cols: n, kind, entries: rows_flatten(rows) }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        ExactMatrix { rows: self.cols, cols: self.rows, kind: self.kind, entries }
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Dimension { expected: self.cols, found: rhs.rows });
        }
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(rhs.cols);
            for j in 0..rhs.cols {
                let mut acc = self.kind.zero();
                for k in 0..self.cols {
                    acc = acc.try_add(&self.get(i, k).try_mul(rhs.get(k, j))?)?;
                }
                row.push(acc);
            }
            rows.push(row);
        }
        ExactMatrix::from_rows(rows)
    }

    fn typed(&self) -> Typed {
        let rows = (0..self.rows).map(|r| self.row(r));
        match self.kind {
            FieldKind::Rational => Typed::Rational(
                rows.map(|row| row.iter().map(|x| unwrap_rational(x).clone()).collect()).collect(),
            ),
            FieldKind::Prime(_) => Typed::Prime(
                rows.map(|row| {
                    row.iter()
                        .map(|x| match x {
                            FieldElement::Prime(v) => *v,
                            _ => unreachable!(),
                        })
                        .collect()
                })
                .collect(),
            ),
            FieldKind::QuadSqrt5 => Typed::Quad(
                rows.map(|row| {
                    row.iter()
                        .map(|x| match x {
                            FieldElement::Quad(v) => v.clone(),
                            _ => unreachable!(),
                        })
                        .collect()
                })
                .collect(),
            ),
        }
    }

    pub fn rank(&self) -> usize {
        fn go<T: Field>(rows: &[Vec<T>], cols: usize) -> usize {
            let refs: Vec<&[T]> = rows.iter().map(Vec::as_slice).collect();
            rank_of(cols, &refs)
        }
        match self.typed() {
            Typed::Rational(m) => go(&m, self.cols),
            Typed::Prime(m) => go(&m, self.cols),
            Typed::Quad(m) => go(&m, self.cols),
        }
    }

    pub fn determinant(&self) -> Result<FieldElement, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(match (self.typed(), self.kind.one()) {
            (Typed::Rational(m), FieldElement::Rational(one)) => {
                FieldElement::Rational(determinant_of(&m, &one))
            }
            (Typed::Prime(m), FieldElement::Prime(one)) => FieldElement::Prime(determinant_of(&m, &one)),
            (Typed::Quad(m), FieldElement::Quad(one)) => FieldElement::Quad(determinant_of(&m, &one)),
            _ => unreachable!(),
        })
    }
}

fn rows_flatten(rows: Vec<Vec<FieldElement>>) -> Vec<FieldElement> {
    rows.into_iter().flatten().collect()
}

fn unwrap_rational(x: &FieldElement) -> &BigRational {
    x.as_rational().expect("rational entry")
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(v: &[FieldElement], basis: &[Vec<FieldElement>]) -> Result<bool, LinalgError> {
    if let Some(b) = basis.iter().find(|b| b.len() != v.len()) {
        return Err(LinalgError::Dimension { expected: v.len(), found: b.len() });
    }
    let mut with_v = basis.to_vec();
    with_v.push(v.to_vec());
    if v.is_empty() {
        return Ok(true);
    }
    let base_rank = if basis.is_empty() { 0 } else { ExactMatrix::from_rows(basis.to_vec())?.rank() };
    Ok(ExactMatrix::from_rows(with_v)?.rank() == base_rank)
}
