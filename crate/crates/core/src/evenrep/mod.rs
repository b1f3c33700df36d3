//! Finite-dimensional irreducible modules of the even part, built level by
//! level from the highest-weight vector. At each depth the span of
//! `f_j w` (with `w` from the previous level) is cut down to a basis by the
//! rank of its Shapovalov Gram matrix, which quotients out the maximal
//! submodule of the Verma module exactly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{GeneratorLabel, RootDatum, SuperAlgebra};
use crate::error::{Error, Result};
use crate::exactmath::{rat, row_reduce, solve_in_span, ParamPoly, ParamSpace, PolyMatrix, QMatrix, Rational};
use crate::representation::{BasisInfo, Representation};

type SparseVec = BTreeMap<usize, Rational>;

/// A depth, its candidate `(basis vector, lowering index)` pairs, and the
/// images of each candidate under the simple raising operators.
type Group = (Vec<i64>, Vec<(usize, usize)>, Vec<Vec<SparseVec>>);

fn axpy(acc: &mut SparseVec, k: &Rational, x: &SparseVec) {
    for (i, v) in x {
        let e = acc.entry(*i).or_insert_with(Rational::zero);
        *e += k * v;
        if e.is_zero() {
            acc.remove(i);
        }
    }
}

/// An irreducible module of the even part with dominant integral labels `a`
/// and symbolic `b` (and `c` for `gl`). `y` acts by the scalar `y0`, `z0` by
/// `c`.
#[derive(Clone, Debug)]
pub struct EvenModule {
    pub labels: Vec<i64>,
    pub params: ParamSpace,
    pub y0: ParamPoly,
    /// Simple-root depth of each basis vector below the highest weight.
    pub depths: Vec<Vec<i64>>,
    /// Weight offset of each basis vector, epsilon/delta coordinates.
    pub weights: Vec<Vec<i64>>,
    pub matrices: BTreeMap<GeneratorLabel, PolyMatrix>,
}

impl EvenModule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn to_representation(&self) -> Representation {
        Representation {
            params: self.params.clone(),
            matrices: self.matrices.clone(),
            basis: self
                .weights
                .iter()
                .enumerate()
                .map(|(i, w)| BasisInfo { block: 0, odd_subset: Vec::new(), even_index: i, weight: w.clone() })
                .collect(),
        }
    }
}

/// `y0 = (b - sum_i d_i a_i - gamma c) / k`, read off from
/// `{u_1, v_1} = sum_i d_i h_i + k y + gamma z0`.
pub fn labels_to_hypercharge(alg: &SuperAlgebra, a: &[i64]) -> Result<ParamPoly> {
    alg.datum.check_dominant(a)?;
    let space = alg.spec().param_space();
    let hb = alg.constants.bracket(GeneratorLabel::U(1), GeneratorLabel::V(1));
    let k = alg.constants.k()?;
    let mut num = ParamPoly::var(&space, "b")?;
    for (l, d) in &hb {
        let term = match l {
            GeneratorLabel::H(i) => ParamPoly::constant(&space, d * rat(a[i - 1], 1)),
            GeneratorLabel::Z0 => ParamPoly::var(&space, "c")?.scale(d),
            GeneratorLabel::Y => continue,
            other => return Err(Error::Structural(format!("{{u1, v1}} has a {other} component"))),
        };
        num = &num - &term;
    }
    Ok(num.scale(&(Rational::one() / k)))
}

/// Weyl dimension formula for the even part.
pub fn weyl_dimension(datum: &RootDatum, a: &[i64]) -> Result<BigInt> {
    datum.check_dominant(a)?;
    let mut prod = Rational::one();
    for root in &datum.even_roots {
        let num: i64 = root.simple_expansion.iter().zip(a).map(|(c, x)| c * (x + 1)).sum();
        let den: i64 = root.simple_expansion.iter().sum();
        prod *= rat(num, den);
    }
    if !prod.is_integer() {
        return Err(Error::Structural(format!("Weyl product {prod} is not an integer")));
    }
    Ok(prod.to_integer())
}

/// Largest depth of a weight in the module, `sum over positive roots of <lambda, alpha^vee>`.
fn depth_bound(datum: &RootDatum, a: &[i64]) -> i64 {
    datum.even_roots.iter().map(|r| r.simple_expansion.iter().zip(a).map(|(c, x)| c * x).sum::<i64>()).sum()
}

pub fn build_even_irrep(alg: &SuperAlgebra, a: &[i64]) -> Result<EvenModule> {
    let datum = &alg.datum;
    datum.check_dominant(a)?;
    let r = datum.even_rank();
    let space = alg.spec().param_space();
    let mu = |depth: &[i64], i: usize| -> Rational {
        rat(a[i] - (0..r).map(|k| datum.cartan[i][k] * depth[k]).sum::<i64>(), 1)
    };

    let mut depths: Vec<Vec<i64>> = vec![vec![0; r]];
    let mut e_act: Vec<Vec<SparseVec>> = vec![vec![SparseVec::new(); r]];
    let mut f_act: Vec<Vec<SparseVec>> = Vec::new();
    let mut gram: BTreeMap<Vec<i64>, (Vec<usize>, QMatrix)> =
        BTreeMap::from([(vec![0; r], (vec![0], QMatrix::identity(1)))]);
    let mut prev = vec![0usize];
    let bound = depth_bound(datum, a);
    let mut level = 0;
    while !prev.is_empty() {
        level += 1;
        let mut groups: BTreeMap<Vec<i64>, Vec<(usize, usize)>> = BTreeMap::new();
        for &w in &prev {
            for j in 0..r {
                let mut d = depths[w].clone();
                d[j] += 1;
                groups.entry(d).or_default().push((w, j));
            }
        }
        // e_i (f_j w) = f_j (e_i w) + delta_ij mu_w(h_i) w, over the previous level.
        let e_on = |w: usize, j: usize| -> Vec<SparseVec> {
            (0..r)
                .map(|i| {
                    let mut out = SparseVec::new();
                    for (x, c) in &e_act[w][i] {
                        axpy(&mut out, c, &f_act[*x][j]);
                    }
                    if i == j {
                        axpy(&mut out, &mu(&depths[w], i), &SparseVec::from([(w, Rational::one())]));
                    }
                    out
                })
                .collect()
        };
        let groups: Vec<Group> = groups
            .into_iter()
            .map(|(d, cands)| {
                let evs = cands.iter().map(|&(w, j)| e_on(w, j)).collect();
                (d, cands, evs)
            })
            .collect();
        let mut new_elems = Vec::new();
        let mut f_updates: Vec<(usize, usize, SparseVec)> = Vec::new();
        for (depth, cands, evs) in groups {
            let n = cands.len();
            let mut g = QMatrix::zeros(n, n);
            for (ci, &(w, j)) in cands.iter().enumerate() {
                let (elems, gprev) = &gram[&depths[w]];
                let pos = elems.iter().position(|&x| x == w).expect("element in its weight space");
                for (cj, ev) in evs.iter().enumerate() {
                    let v: Rational = ev[j]
                        .iter()
                        .map(|(y, c)| {
                            elems.iter().position(|x| x == y).map_or_else(Rational::zero, |q| gprev.get(pos, q) * c)
                        })
                        .sum();
                    g.set(ci, cj, v);
                }
            }
            if g != g.transpose() {
                return Err(Error::Structural(format!("Shapovalov form is not symmetric at depth {depth:?}")));
            }
            let pivots = row_reduce(&g).pivots;
            let base = depths.len();
            let new_ids: Vec<usize> = (0..pivots.len()).map(|k| base + k).collect();
            let span = g.select_columns(&pivots);
            for (ci, &(w, j)) in cands.iter().enumerate() {
                let coords = solve_in_span(&span, &g.column(ci))?
                    .ok_or_else(|| Error::Structural("Gram column outside the pivot span".into()))?;
                let v: SparseVec =
                    coords.into_iter().zip(&new_ids).filter(|(c, _)| !c.is_zero()).map(|(c, id)| (*id, c)).collect();
                f_updates.push((w, j, v));
            }
            for &p in &pivots {
                depths.push(depth.clone());
                e_act.push(evs[p].clone());
            }
            let sub = span.select_rows(&pivots);
            if !pivots.is_empty() {
                gram.insert(depth, (new_ids.clone(), sub));
            }
            new_elems.extend(new_ids);
        }
        f_act.resize(depths.len(), vec![SparseVec::new(); r]);
        for (w, j, v) in f_updates {
            f_act[w][j] = v;
        }
        if !new_elems.is_empty() && level > bound {
            return Err(Error::Structural(format!("nonzero vectors beyond depth bound {bound}")));
        }
        prev = new_elems;
    }
    let dim = depths.len();
    let expected = weyl_dimension(datum, a)?;
    if BigInt::from(dim) != expected {
        return Err(Error::Structural(format!("built dimension {dim}, Weyl dimension {expected}")));
    }

    let poly = |x: &Rational| ParamPoly::constant(&space, x.clone());
    let mut matrices = BTreeMap::new();
    for i in 0..r {
        let mut h = PolyMatrix::zeros(&space, dim, dim);
        let mut e = PolyMatrix::zeros(&space, dim, dim);
        let mut f = PolyMatrix::zeros(&space, dim, dim);
        for w in 0..dim {
            h.set(w, w, poly(&mu(&depths[w], i)));
            for (x, c) in &e_act[w][i] {
                e.set(*x, w, poly(c));
            }
            for (x, c) in &f_act[w][i] {
                f.set(*x, w, poly(c));
            }
        }
        matrices.insert(GeneratorLabel::H(i + 1), h);
        matrices.insert(GeneratorLabel::E(i + 1), e);
        matrices.insert(GeneratorLabel::F(i + 1), f);
    }
    for (k, root) in datum.even_roots.iter().enumerate() {
        if let Some((k1, k2)) = root.recipe {
            let e = matrices[&GeneratorLabel::E(k1)].supercommutator(&matrices[&GeneratorLabel::E(k2)], false)?;
            let f = matrices[&GeneratorLabel::F(k2)].supercommutator(&matrices[&GeneratorLabel::F(k1)], false)?;
            matrices.insert(GeneratorLabel::E(k + 1), e);
            matrices.insert(GeneratorLabel::F(k + 1), f);
        }
    }
    let y0 = labels_to_hypercharge(alg, a)?;
    matrices.insert(GeneratorLabel::Y, PolyMatrix::scalar(&space, dim, &y0));
    if alg.constants.contains(GeneratorLabel::Z0) {
        matrices.insert(GeneratorLabel::Z0, PolyMatrix::scalar(&space, dim, &ParamPoly::var(&space, "c")?));
    }
    let weights = depths
        .iter()
        .map(|d| {
            let mut w = vec![0i64; datum.spec.size()];
            for (k, &c) in d.iter().enumerate() {
                for (x, y) in w.iter_mut().zip(datum.even_root_weight(k + 1)) {
                    *x -= c * y;
                }
            }
            w
        })
        .collect();
    Ok(EvenModule { labels: a.to_vec(), params: space, y0, depths, weights, matrices })
}
