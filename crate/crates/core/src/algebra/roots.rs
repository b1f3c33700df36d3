use num_traits::{One, Zero};

use super::labels::GeneratorLabel;
use super::spec::SuperAlgebraSpec;
use crate::error::{Error, Result};
use crate::exactmath::{rat, row_reduce, ParamPoly, ParamSpace, QMatrix, Rational};

/// A positive even root `x_start - x_end` inside one diagonal block, with
/// 0-based matrix indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenRoot {
    pub start: usize,
    pub end: usize,
    /// Coefficients on the even simple roots.
    pub simple_expansion: Vec<i64>,
    /// For non-simple roots, `(k1, k2)` with `e_k = [e_k1, e_k2]` and
    /// `f_k = [f_k2, f_k1]`.
    pub recipe: Option<(usize, usize)>,
}

/// The odd positive root `epsilon_i - delta_j` (1-based `i`, `j`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OddRoot {
    pub i: usize,
    pub j: usize,
}

/// Roots, Cartan data and the hypercharge normalization of `sl(m|n)` or
/// `gl(m|n)`.
///
/// Weights are coordinate vectors of length `m + n` on
/// `epsilon_1..epsilon_m, delta_1..delta_n`, the duals of the diagonal
/// matrix units. Odd roots are ordered with `i` descending from `m` and `j`
/// ascending, so `beta_1 = epsilon_m - delta_1` is the odd simple root.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub spec: SuperAlgebraSpec,
    pub even_roots: Vec<EvenRoot>,
    pub odd_roots: Vec<OddRoot>,
    /// `cartan[i][j] = alpha_j(h_i)` for the even simple roots.
    pub cartan: Vec<Vec<i64>>,
    /// `y = diag(p I_m, q I_n)`.
    pub hypercharge: (Rational, Rational),
    lambda_solver: QMatrix,
}

impl RootDatum {
    pub fn new(spec: SuperAlgebraSpec) -> Self {
        let (m, n) = (spec.m, spec.n);
        let r = spec.even_rank();
        let simple_start = |k: usize| if k < m { k - 1 } else { k };
        let mut even_roots: Vec<EvenRoot> = (1..=r)
            .map(|k| {
                let s = simple_start(k);
                let mut exp = vec![0; r];
                exp[k - 1] = 1;
                EvenRoot { start: s, end: s + 1, simple_expansion: exp, recipe: None }
            })
            .collect();
        for (lo, size) in [(0, m), (m, n)] {
            for height in 2..size {
                for s in lo..lo + size - height {
                    let e = s + height;
                    let find = |a: usize, b: usize| {
                        even_roots.iter().position(|x| x.start == a && x.end == b).expect("shorter root present") + 1
                    };
                    let (k1, k2) = (find(s, e - 1), find(e - 1, e));
                    let mut exp = even_roots[k1 - 1].simple_expansion.clone();
                    exp[k2 - 1] += 1;
                    even_roots.push(EvenRoot { start: s, end: e, simple_expansion: exp, recipe: Some((k1, k2)) });
                }
            }
        }
        let odd_roots = (1..=m).rev().flat_map(|i| (1..=n).map(move |j| OddRoot { i, j })).collect();
        let mut datum = Self {
            spec,
            even_roots,
            odd_roots,
            cartan: Vec::new(),
            hypercharge: (rat(n as i64, n as i64 - m as i64), rat(m as i64, n as i64 - m as i64)),
            lambda_solver: QMatrix::zeros(0, 0),
        };
        datum.cartan = (1..=r)
            .map(|i| {
                let h = datum.cartan_diagonal(GeneratorLabel::H(i)).expect("simple coroot");
                (1..=r)
                    .map(|j| {
                        let v: Rational = datum.even_root_weight(j).iter().zip(&h).map(|(a, b)| rat(*a, 1) * b).sum();
                        v.to_integer().try_into().expect("small Cartan entry")
                    })
                    .collect()
            })
            .collect();
        // Rows: h_1..h_r, h_beta, identity. Invertible because m != n.
        let mut rows: Vec<Vec<Rational>> =
            (1..=r).map(|i| datum.cartan_diagonal(GeneratorLabel::H(i)).expect("coroot")).collect();
        rows.push(datum.h_beta_diagonal());
        rows.push(vec![Rational::one(); m + n]);
        datum.lambda_solver = QMatrix::from_rows(rows).inverse().expect("m != n keeps the weight system solvable");
        datum
    }

    pub fn even_rank(&self) -> usize {
        self.spec.even_rank()
    }

    pub fn num_even_positive(&self) -> usize {
        self.even_roots.len()
    }

    pub fn num_odd(&self) -> usize {
        self.odd_roots.len()
    }

    /// Weight of `E(k)` (1-based).
    pub fn even_root_weight(&self, k: usize) -> Vec<i64> {
        let root = &self.even_roots[k - 1];
        let mut w = vec![0; self.spec.size()];
        w[root.start] = 1;
        w[root.end] = -1;
        w
    }

    /// Weight of `U(idx)` (1-based).
    pub fn odd_root_weight(&self, idx: usize) -> Vec<i64> {
        let OddRoot { i, j } = self.odd_roots[idx - 1];
        let mut w = vec![0; self.spec.size()];
        w[i - 1] = 1;
        w[self.spec.m + j - 1] = -1;
        w
    }

    /// 1-based index of the odd root `epsilon_i - delta_j`.
    pub fn odd_index(&self, i: usize, j: usize) -> usize {
        (self.spec.m - i) * self.spec.n + j
    }

    /// Weight of a generator, or the zero weight for Cartan elements.
    pub fn label_weight(&self, label: GeneratorLabel) -> Vec<i64> {
        match label {
            GeneratorLabel::E(k) => self.even_root_weight(k),
            GeneratorLabel::F(k) => self.even_root_weight(k).iter().map(|x| -x).collect(),
            GeneratorLabel::U(k) => self.odd_root_weight(k),
            GeneratorLabel::V(k) => self.odd_root_weight(k).iter().map(|x| -x).collect(),
            _ => vec![0; self.spec.size()],
        }
    }

    /// The invariant form `(epsilon_i, epsilon_j) = delta_ij`,
    /// `(delta_i, delta_j) = -delta_ij`, mixed pairs zero.
    pub fn bilinear_form(&self, w1: &[Rational], w2: &[Rational]) -> Rational {
        let m = self.spec.m;
        w1.iter().zip(w2).enumerate().map(|(k, (a, b))| if k < m { a * b } else { -(a * b) }).sum()
    }

    pub fn rho0(&self) -> Vec<Rational> {
        let mut acc = vec![Rational::zero(); self.spec.size()];
        for k in 1..=self.num_even_positive() {
            for (a, w) in acc.iter_mut().zip(self.even_root_weight(k)) {
                *a += rat(w, 2);
            }
        }
        acc
    }

    pub fn rho1(&self) -> Vec<Rational> {
        let mut acc = vec![Rational::zero(); self.spec.size()];
        for k in 1..=self.num_odd() {
            for (a, w) in acc.iter_mut().zip(self.odd_root_weight(k)) {
                *a += rat(w, 2);
            }
        }
        acc
    }

    /// `rho = rho0 - rho1`.
    pub fn rho(&self) -> Vec<Rational> {
        self.rho0().iter().zip(self.rho1()).map(|(a, b)| a - b).collect()
    }

    /// Diagonal of a Cartan generator in the defining representation.
    pub fn cartan_diagonal(&self, label: GeneratorLabel) -> Result<Vec<Rational>> {
        let (m, size) = (self.spec.m, self.spec.size());
        match label {
            GeneratorLabel::H(i) if (1..=self.even_rank()).contains(&i) => {
                let s = if i < m { i - 1 } else { i };
                let mut d = vec![Rational::zero(); size];
                d[s] = Rational::one();
                d[s + 1] = -Rational::one();
                Ok(d)
            }
            GeneratorLabel::Y => {
                let (p, q) = &self.hypercharge;
                Ok((0..size).map(|k| if k < m { p.clone() } else { q.clone() }).collect())
            }
            GeneratorLabel::Z0 if self.spec.flavor == super::Flavor::Gl => Ok(vec![Rational::one(); size]),
            _ => Err(Error::Precondition(format!("{label} is not a Cartan generator of {}", self.spec))),
        }
    }

    /// Diagonal of `h_beta = {u_1, v_1} = E_mm + E_(m+1)(m+1)`.
    pub fn h_beta_diagonal(&self) -> Vec<Rational> {
        let mut d = vec![Rational::zero(); self.spec.size()];
        d[self.spec.m - 1] = Rational::one();
        d[self.spec.m] = Rational::one();
        d
    }

    /// Rejects label vectors of the wrong length or with negative entries.
    pub fn check_dominant(&self, a: &[i64]) -> Result<()> {
        if a.len() != self.even_rank() {
            return Err(Error::Dimension(format!("{} even labels given, {} expected", a.len(), self.even_rank())));
        }
        if let Some(i) = a.iter().position(|&x| x < 0) {
            return Err(Error::NonDominant(format!("a_{} = {} is negative", i + 1, a[i])));
        }
        Ok(())
    }

    /// Coordinates of the highest weight with `Lambda(h_i) = a_i`,
    /// `Lambda(h_beta) = b` and `Lambda(1) = c` (`gl`) or `0` (`sl`, where
    /// the identity is not in the algebra and only fixes a gauge).
    pub fn highest_weight(&self, a: &[i64], space: &ParamSpace) -> Result<Vec<ParamPoly>> {
        self.check_dominant(a)?;
        let b = ParamPoly::var(space, "b")?;
        let c = match self.spec.flavor {
            super::Flavor::Gl => ParamPoly::var(space, "c")?,
            super::Flavor::Sl => ParamPoly::zero(space),
        };
        let mut rhs: Vec<ParamPoly> = a.iter().map(|&x| ParamPoly::constant(space, rat(x, 1))).collect();
        rhs.push(b);
        rhs.push(c);
        Ok((0..self.spec.size())
            .map(|row| {
                rhs.iter()
                    .enumerate()
                    .fold(ParamPoly::zero(space), |acc, (k, p)| &acc + &p.scale(self.lambda_solver.get(row, k)))
            })
            .collect())
    }

    /// `<Lambda + rho | beta_i>` for every odd positive root.
    pub fn typicality_factors(&self, a: &[i64], space: &ParamSpace) -> Result<Vec<ParamPoly>> {
        let lambda = self.highest_weight(a, space)?;
        let rho = self.rho();
        let shifted: Vec<ParamPoly> =
            lambda.iter().zip(&rho).map(|(l, r)| l + &ParamPoly::constant(space, r.clone())).collect();
        Ok((1..=self.num_odd())
            .map(|idx| {
                let beta = self.odd_root_weight(idx);
                let m = self.spec.m;
                shifted.iter().zip(&beta).enumerate().fold(ParamPoly::zero(space), |acc, (k, (x, w))| {
                    let sign = if k < m { *w } else { -*w };
                    &acc + &x.scale(&rat(sign, 1))
                })
            })
            .collect())
    }

    /// Values of a weight (given by coordinates) on a Cartan generator.
    pub fn evaluate_weight(&self, weight: &[ParamPoly], label: GeneratorLabel) -> Result<ParamPoly> {
        let diag = self.cartan_diagonal(label)?;
        let space = weight.first().map(|p| p.space().clone()).unwrap_or_else(ParamSpace::empty);
        Ok(weight.iter().zip(&diag).fold(ParamPoly::zero(&space), |acc, (w, d)| &acc + &w.scale(d)))
    }

    /// Simple-root depth of an integral weight offset that lies in the even
    /// root lattice, or `None` otherwise.
    pub fn even_depth(&self, offset: &[i64]) -> Option<Vec<i64>> {
        let r = self.even_rank();
        let mut cols: Vec<Vec<Rational>> =
            (1..=r).map(|k| self.even_root_weight(k).iter().map(|&x| rat(-x, 1)).collect()).collect();
        cols.push(offset.iter().map(|&x| rat(x, 1)).collect());
        let aug = QMatrix::from_columns(self.spec.size(), &cols);
        let red = row_reduce(&aug);
        if red.pivots.contains(&r) {
            return None;
        }
        (0..r)
            .map(|i| {
                let x = red.rref.get(i, r);
                x.is_integer().then(|| x.to_integer().try_into().ok()).flatten()
            })
            .collect()
    }
}
