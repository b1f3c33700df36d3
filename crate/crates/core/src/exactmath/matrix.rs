use std::collections::BTreeMap;

use num_traits::Zero;

use super::linsolve::QMatrix;
use super::poly::{ParamPoly, ParamSpace};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Sparse matrix of [`ParamPoly`] entries, stored row by row.
///
/// Explicit zeros are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    space: ParamSpace,
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, ParamPoly>>,
}

impl PolyMatrix {
    pub fn zeros(space: &ParamSpace, rows: usize, cols: usize) -> Self {
        Self { space: space.clone(), rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn identity(space: &ParamSpace, n: usize) -> Self {
        Self::scalar(space, n, &ParamPoly::one(space))
    }

    /// `p * I_n`.
    pub fn scalar(space: &ParamSpace, n: usize, p: &ParamPoly) -> Self {
        let mut m = Self::zeros(space, n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn from_rationals(space: &ParamSpace, q: &QMatrix) -> Self {
        let mut m = Self::zeros(space, q.rows(), q.cols());
        for i in 0..q.rows() {
            for j in 0..q.cols() {
                let x = q.get(i, j);
                if !x.is_zero() {
                    m.set(i, j, ParamPoly::constant(space, x.clone()));
                }
            }
        }
        m
    }

    pub fn space(&self) -> &ParamSpace {
        &self.space
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> Option<&ParamPoly> {
        self.data[r].get(&c)
    }

    pub fn get(&self, r: usize, c: usize) -> ParamPoly {
        self.entry(r, c).cloned().unwrap_or_else(|| ParamPoly::zero(&self.space))
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, ParamPoly> {
        &self.data[r]
    }

    pub fn set(&mut self, r: usize, c: usize, p: ParamPoly) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        debug_assert_eq!(p.space(), &self.space);
        if p.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, p);
        }
    }

    /// `self[r][c] += p`.
    pub fn add_at(&mut self, r: usize, c: usize, p: &ParamPoly) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        if p.is_zero() {
            return;
        }
        let row = &mut self.data[r];
        match row.get_mut(&c) {
            Some(x) => {
                x.try_add_assign(p).expect("PolyMatrix entry space");
                if x.is_zero() {
                    row.remove(&c);
                }
            }
            None => {
                row.insert(c, p.clone());
            }
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &ParamPoly)> {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(&c, p)| (r, c, p)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    fn check_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::ParamMismatch {
                left: self.space.names().to_vec(),
                right: other.space.names().to_vec(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!("add {}x{} and {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = self.clone();
        for (r, c, p) in other.entries() {
            out.add_at(r, c, p);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.space, self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    out.add_at(r, *c, &(a * b));
                }
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map(|p| -p)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.map(|p| p.scale(k))
    }

    pub fn scale_poly(&self, k: &ParamPoly) -> Result<Self> {
        self.try_map(|p| p.try_mul(k))
    }

    /// Super-commutator `AB - sign*BA` with `sign = -1` for two odd operators.
    pub fn supercommutator(&self, other: &Self, both_odd: bool) -> Result<Self> {
        let ab = self.try_mul(other)?;
        let ba = other.try_mul(self)?;
        if both_odd {
            ab.try_add(&ba)
        } else {
            ab.try_sub(&ba)
        }
    }

    pub fn map(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> Self {
        self.try_map(|p| Ok(f(p))).expect("infallible map")
    }

    /// Applies `f` entrywise; the result keeps this matrix's parameter space
    /// unless `f` changes it consistently (see [`PolyMatrix::embed`]).
    pub fn try_map(&self, f: impl Fn(&ParamPoly) -> Result<ParamPoly>) -> Result<Self> {
        let mut out = Self::zeros(&self.space, self.rows, self.cols);
        for (r, c, p) in self.entries() {
            let q = f(p)?;
            if !q.is_zero() {
                out.space = q.space().clone();
                out.data[r].insert(c, q);
            }
        }
        Ok(out)
    }

    pub fn substitute(&self, bindings: &BTreeMap<String, Rational>) -> Result<Self> {
        self.try_map(|p| p.substitute(bindings))
    }

    pub fn derivative(&self, name: &str) -> Result<Self> {
        self.try_map(|p| p.derivative(name))
    }

    pub fn coefficient(&self, name: &str, k: u32) -> Result<Self> {
        self.try_map(|p| p.coefficient(name, k))
    }

    pub fn embed(&self, target: &ParamSpace) -> Result<Self> {
        let mut out = self.try_map(|p| p.embed(target))?;
        out.space = target.clone();
        Ok(out)
    }

    /// Largest degree in `name` over all entries.
    pub fn degree_in(&self, name: &str) -> Result<u32> {
        self.space.index_of(name).ok_or_else(|| Error::UndeclaredParam(name.to_string()))?;
        self.entries().map(|(_, _, p)| p.degree_in(name)).try_fold(0, |acc, d| Ok(acc.max(d?)))
    }

    pub fn is_parameter_free(&self) -> bool {
        self.entries().all(|(_, _, p)| p.is_constant())
    }

    /// Dense rational copy. Fails if any entry still involves a parameter.
    pub fn to_rational(&self) -> Result<QMatrix> {
        let mut q = QMatrix::zeros(self.rows, self.cols);
        for (r, c, p) in self.entries() {
            let v = p.constant_value().ok_or_else(|| {
                Error::Precondition(format!("entry ({r},{c}) = {p} is not parameter-free; substitute first"))
            })?;
            q.set(r, c, v);
        }
        Ok(q)
    }

    /// The submatrix on the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut out = Self::zeros(&self.space, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (c, p) in &self.data[r] {
                if let Some(&j) = col_pos.get(c) {
                    out.data[i].insert(j, p.clone());
                }
            }
        }
        out
    }

    /// `P M P^{-1}` for the permutation sending basis index `i` to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert!(self.is_square() && perm.len() == self.rows);
        let mut out = Self::zeros(&self.space, self.rows, self.cols);
        for (r, c, p) in self.entries() {
            out.data[perm[r]].insert(perm[c], p.clone());
        }
        out
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`, adding to any
    /// existing entries.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for (r, c, p) in block.entries() {
            self.add_at(r0 + r, c0 + c, p);
        }
    }

    /// Applies the matrix to a sparse column vector.
    pub fn apply(&self, v: &BTreeMap<usize, ParamPoly>) -> BTreeMap<usize, ParamPoly> {
        let mut out: BTreeMap<usize, ParamPoly> = BTreeMap::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = ParamPoly::zero(&self.space);
            for (c, a) in row {
                if let Some(x) = v.get(c) {
                    acc.try_add_assign(&(a * x)).expect("apply space");
                }
            }
            if !acc.is_zero() {
                out.insert(r, acc);
            }
        }
        out
    }

    /// First nonzero entry in row-major order, if any.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &ParamPoly)> {
        self.entries().next()
    }
}
