//! Kac modules: induction from an even module with the raising odd part
//! acting trivially, so that as an even module `K(L) = L (x) wedge(g_-1)`.
//!
//! Basis vectors are `v_S (x) w` with `S` a strictly increasing list of odd
//! indices and `w` an even basis index. The order is layer-major (`|S|`),
//! then lexicographic in `S`, then the even index. `v_j` acts by inserting
//! `j` into `S` with sign `(-1)^{#{i in S : i < j}}`.

mod checks;
mod typicality;

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{GeneratorLabel, StructureConstants, SuperAlgebra, SuperAlgebraSpec};
use crate::error::{Error, Result};
use crate::evenrep::{build_even_irrep, EvenModule};
use crate::exactmath::{ParamPoly, ParamSpace, PolyMatrix};
use crate::representation::{BasisInfo, Representation};

pub use checks::{check_degree_profile, check_y_spectrum};
pub use typicality::{
    character, check_typicality, even_character, kac_typicality, singular_vectors, RaisingSet, SingularVector,
    Typicality, TypicalityReport,
};

pub type PolyVec = BTreeMap<usize, ParamPoly>;

/// A basis vector `v_S (x) w`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KacBasisElement {
    pub odd_subset: Vec<usize>,
    pub even_index: usize,
}

impl KacBasisElement {
    pub fn layer(&self) -> usize {
        self.odd_subset.len()
    }
}

/// Sorts a word of odd lowering indices into ascending order. Returns the
/// sign of the permutation, or `None` if an index repeats (the product is
/// zero because the `v`'s anticommute).
pub fn normal_order_odd(word: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut w = word.to_vec();
    let mut sign = 1;
    for i in 0..w.len() {
        for j in 0..w.len() - 1 - i {
            if w[j] == w[j + 1] {
                return None;
            }
            if w[j] > w[j + 1] {
                w.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if w.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((sign, w))
}

/// Layer-major, then lexicographic, list of all subsets of `1..=p` as bit
/// masks (bit `j-1` for index `j`).
fn ordered_subsets(p: usize) -> Vec<u64> {
    let mut subsets: Vec<(Vec<usize>, u64)> =
        (0..1u64 << p).map(|mask| ((1..=p).filter(|j| mask >> (j - 1) & 1 == 1).collect(), mask)).collect();
    subsets.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    subsets.into_iter().map(|(_, m)| m).collect()
}

fn mask_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

struct Layout {
    masks: Vec<u64>,
    rank: HashMap<u64, usize>,
    even_dim: usize,
}

impl Layout {
    fn new(p: usize, even_dim: usize) -> Self {
        let masks = ordered_subsets(p);
        let rank = masks.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Self { masks, rank, even_dim }
    }

    fn index(&self, mask: u64, w: usize) -> usize {
        self.rank[&mask] * self.even_dim + w
    }

    fn decode(&self, idx: usize) -> (u64, usize) {
        (self.masks[idx / self.even_dim], idx % self.even_dim)
    }

    fn dim(&self) -> usize {
        self.masks.len() * self.even_dim
    }

    /// `v_j` applied to a vector.
    fn insert(&self, j: usize, v: &PolyVec) -> PolyVec {
        let bit = 1u64 << (j - 1);
        let mut out = PolyVec::new();
        for (idx, c) in v {
            let (mask, w) = self.decode(*idx);
            if mask & bit != 0 {
                continue;
            }
            let below = (mask & (bit - 1)).count_ones();
            let c = if below % 2 == 1 { -c } else { c.clone() };
            out.insert(self.index(mask | bit, w), c);
        }
        out
    }
}

fn add_into(acc: &mut PolyVec, v: &PolyVec, k: &ParamPoly) {
    for (i, x) in v {
        let t = x * k;
        match acc.get_mut(i) {
            Some(y) => {
                y.try_add_assign(&t).expect("same space");
                if y.is_zero() {
                    acc.remove(i);
                }
            }
            None => {
                if !t.is_zero() {
                    acc.insert(*i, t);
                }
            }
        }
    }
}

fn columns_to_matrix(space: &ParamSpace, cols: &[PolyVec]) -> PolyMatrix {
    let n = cols.len();
    let mut m = PolyMatrix::zeros(space, n, n);
    for (c, col) in cols.iter().enumerate() {
        for (r, p) in col {
            m.set(*r, c, p.clone());
        }
    }
    m
}

/// Induces from an even module over any algebra whose constants contain
/// odd labels `U(i)`, `V(i)` with `[even, V] ⊂ V` and `{U, V} ⊂ even`.
///
/// `even` must carry matrices for every even label of `sc`; `odd_weights[j-1]`
/// is the weight of `V(j)`.
pub fn induce_generic(
    sc: &StructureConstants,
    even: &Representation,
    odd_weights: &[Vec<i64>],
) -> Result<Representation> {
    let space = even.params.clone();
    let raising = sc.odd_raising();
    let lowering = sc.odd_lowering();
    let p = lowering.len();
    if raising.len() != p || odd_weights.len() != p || p > 20 {
        return Err(Error::Precondition(format!("{} raising, {} lowering odd generators", raising.len(), p)));
    }
    let even_labels = sc.even_labels();
    for l in &even_labels {
        even.matrix(*l)?;
    }
    let const_poly = |c: &crate::exactmath::Rational| ParamPoly::constant(&space, c.clone());
    // [X, v_s] over lowering labels, {u_i, v_s} over even labels.
    let mut ad_v: BTreeMap<(GeneratorLabel, usize), Vec<(usize, ParamPoly)>> = BTreeMap::new();
    for x in &even_labels {
        for s in 1..=p {
            let e = sc.bracket(*x, GeneratorLabel::V(s));
            let mut terms = Vec::new();
            for (l, c) in e {
                match l {
                    GeneratorLabel::V(t) => terms.push((t, const_poly(&c))),
                    other => return Err(Error::Structural(format!("[{x}, v{s}] has a {other} component"))),
                }
            }
            ad_v.insert((*x, s), terms);
        }
    }
    let mut anti: BTreeMap<(usize, usize), Vec<(GeneratorLabel, ParamPoly)>> = BTreeMap::new();
    for i in 1..=p {
        for s in 1..=p {
            let e = sc.bracket(GeneratorLabel::U(i), GeneratorLabel::V(s));
            if let Some(l) = e.keys().find(|l| l.is_odd()) {
                return Err(Error::Structural(format!("{{u{i}, v{s}}} has a {l} component")));
            }
            anti.insert((i, s), e.into_iter().map(|(l, c)| (l, const_poly(&c))).collect());
        }
    }

    let even_dim = even.dim();
    let layout = Layout::new(p, even_dim);
    let dim = layout.dim();
    let even_cols: BTreeMap<GeneratorLabel, Vec<Vec<(usize, ParamPoly)>>> = even_labels
        .iter()
        .map(|l| {
            let mut cols = vec![Vec::new(); even_dim];
            for (r, c, x) in even.matrices[l].entries() {
                cols[c].push((r, x.clone()));
            }
            (*l, cols)
        })
        .collect();

    let single = |idx: usize| PolyVec::from([(idx, ParamPoly::one(&space))]);
    let mut cols: BTreeMap<GeneratorLabel, Vec<PolyVec>> =
        even_labels.iter().chain(&raising).map(|l| (*l, Vec::with_capacity(dim))).collect();
    // Columns are filled in basis order; the tail `v_rest (x) w` of any basis
    // vector precedes it, so its images are already available.
    for idx in 0..dim {
        let (mask, w) = layout.decode(idx);
        if mask == 0 {
            for x in &even_labels {
                let col = even_cols[x][w].iter().map(|(r, c)| (layout.index(0, *r), c.clone())).collect();
                cols.get_mut(x).expect("label").push(col);
            }
            for u in &raising {
                cols.get_mut(u).expect("label").push(PolyVec::new());
            }
            continue;
        }
        let s1 = mask.trailing_zeros() as usize + 1;
        let rest = layout.index(mask & (mask - 1), w);
        for x in &even_labels {
            // X v_s1 t = [X, v_s1] t + v_s1 X t
            let mut col = layout.insert(s1, &cols[x][rest]);
            for (t, c) in &ad_v[&(*x, s1)] {
                add_into(&mut col, &layout.insert(*t, &single(rest)), c);
            }
            cols.get_mut(x).expect("label").push(col);
        }
        for u in &raising {
            let GeneratorLabel::U(i) = *u else { unreachable!() };
            // u v_s1 t = {u, v_s1} t - v_s1 u t
            let mut col = PolyVec::new();
            add_into(&mut col, &layout.insert(s1, &cols[u][rest]), &-&ParamPoly::one(&space));
            for (l, c) in &anti[&(i, s1)] {
                add_into(&mut col, &cols[l][rest], c);
            }
            cols.get_mut(u).expect("label").push(col);
        }
    }
    let mut matrices: BTreeMap<GeneratorLabel, PolyMatrix> =
        cols.iter().map(|(l, c)| (*l, columns_to_matrix(&space, c))).collect();
    for j in 1..=p {
        let c: Vec<PolyVec> = (0..dim).map(|idx| layout.insert(j, &single(idx))).collect();
        matrices.insert(GeneratorLabel::V(j), columns_to_matrix(&space, &c));
    }
    let basis = (0..dim)
        .map(|idx| {
            let (mask, w) = layout.decode(idx);
            let odd_subset = mask_indices(mask);
            let mut weight = even.basis[w].weight.clone();
            for j in &odd_subset {
                for (x, y) in weight.iter_mut().zip(&odd_weights[j - 1]) {
                    *x += y;
                }
            }
            BasisInfo { block: even.basis[w].block, odd_subset, even_index: w, weight }
        })
        .collect();
    Ok(Representation { params: space, matrices, basis })
}

/// A Kac module over `sl(m|n)` or `gl(m|n)` with symbolic `b` (and `c`).
#[derive(Clone, Debug)]
pub struct KacModule {
    pub spec: SuperAlgebraSpec,
    pub labels: Vec<i64>,
    pub y0: ParamPoly,
    pub even_dim: usize,
    pub num_odd: usize,
    pub rep: Representation,
}

impl KacModule {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn basis_element(&self, idx: usize) -> KacBasisElement {
        let b = &self.rep.basis[idx];
        KacBasisElement { odd_subset: b.odd_subset.clone(), even_index: b.even_index }
    }

    pub fn index_of(&self, e: &KacBasisElement) -> Option<usize> {
        self.rep.basis.iter().position(|b| b.odd_subset == e.odd_subset && b.even_index == e.even_index)
    }
}

pub fn induce(alg: &SuperAlgebra, l: &EvenModule) -> Result<KacModule> {
    let p = alg.datum.num_odd();
    let odd_weights: Vec<Vec<i64>> =
        (1..=p).map(|j| alg.datum.odd_root_weight(j).iter().map(|x| -x).collect()).collect();
    let rep = induce_generic(&alg.constants, &l.to_representation(), &odd_weights)?;
    Ok(KacModule { spec: alg.spec(), labels: l.labels.clone(), y0: l.y0.clone(), even_dim: l.dim(), num_odd: p, rep })
}

/// Even irrep with labels `a`, then induction.
pub fn build_kac_module(alg: &SuperAlgebra, a: &[i64]) -> Result<KacModule> {
    induce(alg, &build_even_irrep(alg, a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_super_relations;
    use crate::exactmath::rat;

    fn sl21() -> SuperAlgebra {
        SuperAlgebra::new(SuperAlgebraSpec::sl(2, 1).unwrap()).unwrap()
    }

    #[test]
    fn normal_ordering_signs() {
        assert_eq!(normal_order_odd(&[2, 1]), Some((-1, vec![1, 2])));
        assert_eq!(normal_order_odd(&[3, 1, 2]), Some((1, vec![1, 2, 3])));
        assert_eq!(normal_order_odd(&[1, 2, 1]), None);
        assert_eq!(normal_order_odd(&[]), Some((1, vec![])));
    }

    #[test]
    fn subsets_are_layer_major() {
        let order: Vec<Vec<usize>> = ordered_subsets(3).into_iter().map(mask_indices).collect();
        assert_eq!(order[0], Vec::<usize>::new());
        assert_eq!(order[1..4], [vec![1], vec![2], vec![3]]);
        assert_eq!(order[4..7], [vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(order[7], vec![1, 2, 3]);
    }

    #[test]
    fn u1_on_v1_gives_b() {
        let alg = sl21();
        let k = build_kac_module(&alg, &[0]).unwrap();
        let s = k.rep.params.clone();
        let v1 = k.index_of(&KacBasisElement { odd_subset: vec![1], even_index: 0 }).unwrap();
        let u1 = k.rep.matrix(GeneratorLabel::U(1)).unwrap();
        assert_eq!(u1.get(0, v1), ParamPoly::var(&s, "b").unwrap());
        assert_eq!((0..k.dim()).filter(|&r| u1.entry(r, v1).is_some()).count(), 1);
    }

    #[test]
    fn sl21_quartet_relations_and_spectrum() {
        let alg = sl21();
        let k = build_kac_module(&alg, &[0]).unwrap();
        assert_eq!(k.dim(), 4);
        assert!(check_super_relations(&k.rep, &alg.constants).unwrap().passed);
        let y = k.rep.matrix(GeneratorLabel::Y).unwrap();
        for (i, b) in k.rep.basis.iter().enumerate() {
            let shift = ParamPoly::constant(&k.rep.params, rat(b.layer() as i64, 1));
            assert_eq!(y.get(i, i), &k.y0 - &shift);
        }
    }
}
