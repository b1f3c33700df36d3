use std::collections::BTreeMap;

use super::labels::GeneratorLabel;
use super::roots::RootDatum;
use super::spec::Flavor;
use crate::exactmath::{ParamPoly, ParamSpace, PolyMatrix};
use crate::representation::{BasisInfo, Representation};

/// Generator labels of the algebra in canonical order.
pub fn algebra_labels(datum: &RootDatum) -> Vec<GeneratorLabel> {
    let mut out: Vec<GeneratorLabel> = (1..=datum.even_rank()).map(GeneratorLabel::H).collect();
    out.push(GeneratorLabel::Y);
    if datum.spec.flavor == Flavor::Gl {
        out.push(GeneratorLabel::Z0);
    }
    let re = datum.num_even_positive();
    out.extend((1..=re).map(GeneratorLabel::E));
    out.extend((1..=re).map(GeneratorLabel::F));
    out.extend((1..=datum.num_odd()).map(GeneratorLabel::U));
    out.extend((1..=datum.num_odd()).map(GeneratorLabel::V));
    out
}

fn unit(space: &ParamSpace, size: usize, r: usize, c: usize) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(space, size, size);
    m.set(r, c, ParamPoly::one(space));
    m
}

/// The defining `(m+n)`-dimensional representation: `u_idx = E_(i, m+j)`,
/// `v_idx = E_(m+j, i)`, even root vectors as matrix units, Cartan
/// generators as diagonal matrices.
pub fn fundamental_rep(datum: &RootDatum) -> Representation {
    let space = ParamSpace::empty();
    let size = datum.spec.size();
    let m = datum.spec.m;
    let mut matrices = BTreeMap::new();
    for label in algebra_labels(datum) {
        let mat = match label {
            GeneratorLabel::H(_) | GeneratorLabel::Y | GeneratorLabel::Z0 => {
                let diag = datum.cartan_diagonal(label).expect("Cartan label of this algebra");
                let mut mat = PolyMatrix::zeros(&space, size, size);
                for (k, x) in diag.into_iter().enumerate() {
                    mat.set(k, k, ParamPoly::constant(&space, x));
                }
                mat
            }
            GeneratorLabel::E(k) => {
                let root = &datum.even_roots[k - 1];
                unit(&space, size, root.start, root.end)
            }
            GeneratorLabel::F(k) => {
                let root = &datum.even_roots[k - 1];
                unit(&space, size, root.end, root.start)
            }
            GeneratorLabel::U(idx) => {
                let r = datum.odd_roots[idx - 1];
                unit(&space, size, r.i - 1, m + r.j - 1)
            }
            GeneratorLabel::V(idx) => {
                let r = datum.odd_roots[idx - 1];
                unit(&space, size, m + r.j - 1, r.i - 1)
            }
        };
        matrices.insert(label, mat);
    }
    let basis = (0..size)
        .map(|k| {
            let mut weight = vec![0; size];
            weight[k] = 1;
            BasisInfo { block: 0, odd_subset: Vec::new(), even_index: k, weight }
        })
        .collect();
    Representation { params: space, matrices, basis }
}
