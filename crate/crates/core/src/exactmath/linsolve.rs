use num_traits::{One, Zero};

use super::matrix::PolyMatrix;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Dense matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Rational) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "QMatrix dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, x)| a * x).sum())
            .collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale_identity_sub(&self, lambda: &Rational) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = m.get(i, i) - lambda;
            m.set(i, i, v);
        }
        m
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    /// Vertical concatenation.
    pub fn stack(blocks: &[&QMatrix]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        assert!(blocks.iter().all(|b| b.cols == cols));
        Self {
            rows: blocks.iter().map(|b| b.rows).sum(),
            cols,
            data: blocks.iter().flat_map(|b| b.data.iter().cloned()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    /// Restriction to the given rows.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_rows(rows.iter().map(|&r| self.row(r).to_vec()).collect())
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let red = row_reduce(&aug);
        if red.pivots.iter().copied().take(n).ne(0..n) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.rref.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Restriction to the given columns.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(i, c).clone());
            }
        }
        m
    }
}

/// Result of exact Gaussian elimination.
#[derive(Clone, Debug)]
pub struct RowReduction {
    pub rank: usize,
    pub rref: QMatrix,
    /// Pivot column of each nonzero row of `rref`.
    pub pivots: Vec<usize>,
    /// Basis of the right nullspace, one vector per free column.
    pub nullspace: Vec<Vec<Rational>>,
}

/// Reduced row echelon form. Columns are scanned left to right and the pivot
/// row is the lowest-index remaining row with a nonzero entry.
pub fn row_reduce(m: &QMatrix) -> RowReduction {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = Rational::one() / a.get(r, c);
        for j in c..cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in c..cols {
                if a.get(r, j).is_zero() {
                    continue;
                }
                let v = a.get(i, j) - &f * a.get(r, j);
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    let mut nullspace = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a.get(row, free).clone();
        }
        nullspace.push(v);
    }
    RowReduction { rank, rref: a, pivots, nullspace }
}

/// Rank, RREF and nullspace of a parameter-free polynomial matrix.
pub fn rational_linear_solve(m: &PolyMatrix) -> Result<RowReduction> {
    Ok(row_reduce(&m.to_rational()?))
}

/// Coordinates of `target` in the span of the columns of `basis`, or `None`
/// when it is not in the span. The columns must be linearly independent.
pub fn solve_in_span(basis: &QMatrix, target: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if target.len() != basis.rows() {
        return Err(Error::Dimension(format!("target of length {} for {} rows", target.len(), basis.rows())));
    }
    let n = basis.cols();
    let mut aug = QMatrix::zeros(basis.rows(), n + 1);
    for (i, t) in target.iter().enumerate() {
        for j in 0..n {
            aug.set(i, j, basis.get(i, j).clone());
        }
        aug.set(i, n, t.clone());
    }
    let red = row_reduce(&aug);
    if red.pivots.contains(&n) {
        return Ok(None);
    }
    if red.rank != n {
        return Err(Error::Precondition("basis columns are linearly dependent".into()));
    }
    Ok(Some((0..n).map(|i| red.rref.get(i, n).clone()).collect()))
}

/// Repeated coordinate extraction against a fixed set of linearly
/// independent columns.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    basis: QMatrix,
    rows: Vec<usize>,
    inv: QMatrix,
}

impl SpanSolver {
    pub fn new(basis: QMatrix) -> Result<Self> {
        let red = row_reduce(&basis.transpose());
        if red.rank != basis.cols() {
            return Err(Error::Precondition("basis columns are linearly dependent".into()));
        }
        let rows = red.pivots;
        let inv = basis.select_rows(&rows).inverse().expect("pivot rows form an invertible block");
        Ok(Self { basis, rows, inv })
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of `target`, or `None` when it lies outside the span.
    pub fn solve(&self, target: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if target.len() != self.basis.rows() {
            return Err(Error::Dimension(format!("target of length {} for {} rows", target.len(), self.basis.rows())));
        }
        let picked: Vec<Rational> = self.rows.iter().map(|&r| target[r].clone()).collect();
        let x = self.inv.mul_vec(&picked);
        if self.basis.mul_vec(&x) != target {
            return Ok(None);
        }
        Ok(Some(x))
    }
}
