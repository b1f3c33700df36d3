//! Canonical JSON forms of modules, structure constants and reports.
//!
//! Polynomials are objects from monomial keys (`"1"`, `"b^1"`,
//! `"b^1.c^2"`) to exact rational strings. Matrices list their nonzero
//! entries as `[row, col, poly]` in row-major order. All maps are ordered,
//! so equal values always serialize to identical bytes.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{GeneratorLabel, StructureConstants, SuperAlgebraSpec};
use crate::error::{Error, Result};
use crate::exactmath::{format_rational, parse_rational, ParamPoly, ParamSpace, PolyMatrix};
use crate::representation::{BasisInfo, Representation};

pub type PolyJson = BTreeMap<String, String>;

pub const WEDGE_SIGN_CONVENTION: &str = "v_j inserts j into the sorted odd subset S with sign (-1)^{#{i in S : i < j}}";
pub const BASIS_ORDER_CONVENTION: &str = "block-major, then layer |S|, then S lexicographic, then even index";

pub fn poly_to_json(p: &ParamPoly) -> PolyJson {
    p.terms().map(|(e, c)| (ParamPoly::monomial_key(p.space(), e), format_rational(c))).collect()
}

pub fn poly_from_json(space: &ParamSpace, j: &PolyJson) -> Result<ParamPoly> {
    let terms = j
        .iter()
        .map(|(k, v)| Ok((ParamPoly::parse_monomial_key(space, k)?, parse_rational(v)?)))
        .collect::<Result<Vec<_>>>()?;
    ParamPoly::from_terms(space, terms)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, PolyJson)>,
}

impl MatrixJson {
    pub fn from_matrix(m: &PolyMatrix) -> Self {
        Self { rows: m.rows(), cols: m.cols(), entries: m.entries().map(|(r, c, p)| (r, c, poly_to_json(p))).collect() }
    }

    pub fn to_matrix(&self, space: &ParamSpace) -> Result<PolyMatrix> {
        let mut m = PolyMatrix::zeros(space, self.rows, self.cols);
        for (r, c, p) in &self.entries {
            if *r >= self.rows || *c >= self.cols {
                return Err(Error::Parse(format!("entry ({r},{c}) outside a {}x{} matrix", self.rows, self.cols)));
            }
            m.set(*r, *c, poly_from_json(space, p)?);
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisJson {
    pub block: usize,
    pub odd_subset: Vec<usize>,
    pub even_index: usize,
    pub weight: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationJson {
    pub params: Vec<String>,
    pub dim: usize,
    pub basis: Vec<BasisJson>,
    pub matrices: BTreeMap<GeneratorLabel, MatrixJson>,
}

impl RepresentationJson {
    pub fn from_rep(rep: &Representation) -> Self {
        Self {
            params: rep.params.names().to_vec(),
            dim: rep.dim(),
            basis: rep
                .basis
                .iter()
                .map(|b| BasisJson {
                    block: b.block,
                    odd_subset: b.odd_subset.clone(),
                    even_index: b.even_index,
                    weight: b.weight.clone(),
                })
                .collect(),
            matrices: rep.matrices.iter().map(|(l, m)| (*l, MatrixJson::from_matrix(m))).collect(),
        }
    }

    pub fn to_rep(&self) -> Result<Representation> {
        let params = ParamSpace::new(self.params.iter().map(String::as_str))?;
        if self.basis.len() != self.dim {
            return Err(Error::Parse(format!("{} basis records for dimension {}", self.basis.len(), self.dim)));
        }
        let matrices = self.matrices.iter().map(|(l, m)| Ok((*l, m.to_matrix(&params)?))).collect::<Result<_>>()?;
        let basis = self
            .basis
            .iter()
            .map(|b| BasisInfo {
                block: b.block,
                odd_subset: b.odd_subset.clone(),
                even_index: b.even_index,
                weight: b.weight.clone(),
            })
            .collect();
        let rep = Representation { params, matrices, basis };
        rep.validate()?;
        Ok(rep)
    }
}

/// How a module was assembled from its base Kac module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Construction {
    Kac,
    Replication { blocks: usize, block_dim: usize, lambdas: Vec<String> },
    Twist { blocks: usize, block_dim: usize, nu: (String, String) },
    TwistFamily { blocks: usize, block_dim: usize, nu: (String, String) },
    HeisenbergPhi { blocks: usize, block_dim: usize, nu: (String, String) },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Conventions {
    pub wedge_sign: String,
    pub basis_order: String,
}

impl Default for Conventions {
    fn default() -> Self {
        Self { wedge_sign: WEDGE_SIGN_CONVENTION.into(), basis_order: BASIS_ORDER_CONVENTION.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub algebra: SuperAlgebraSpec,
    pub even_labels: Vec<i64>,
    pub y0: PolyJson,
    pub construction: Construction,
    pub conventions: Conventions,
    pub module: RepresentationJson,
}

impl ModuleJson {
    pub fn y0_poly(&self) -> Result<ParamPoly> {
        let space = ParamSpace::new(self.module.params.iter().map(String::as_str))?;
        poly_from_json(&space, &self.y0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureConstantsJson {
    pub algebra: Option<SuperAlgebraSpec>,
    pub labels: Vec<GeneratorLabel>,
    /// Nonzero brackets `[a, b, {c: coefficient}]`.
    pub brackets: Vec<(GeneratorLabel, GeneratorLabel, BTreeMap<GeneratorLabel, String>)>,
}

impl StructureConstantsJson {
    pub fn from_constants(spec: Option<SuperAlgebraSpec>, sc: &StructureConstants) -> Self {
        let mut brackets = Vec::new();
        for &a in sc.labels() {
            for &b in sc.labels() {
                let e = sc.bracket(a, b);
                if !e.is_empty() {
                    brackets.push((a, b, e.iter().map(|(l, c)| (*l, format_rational(c))).collect()));
                }
            }
        }
        Self { algebra: spec, labels: sc.labels().to_vec(), brackets }
    }

    pub fn to_constants(&self) -> Result<StructureConstants> {
        let mut table = BTreeMap::new();
        for (a, b, e) in &self.brackets {
            let e = e.iter().map(|(l, c)| Ok((*l, parse_rational(c)?))).collect::<Result<_>>()?;
            table.insert((*a, *b), e);
        }
        StructureConstants::from_table(self.labels.clone(), table)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn export_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    std::fs::write(path, to_json_string(value)?)?;
    Ok(())
}

pub fn import_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn poly_format() {
        let s = ParamSpace::new(["b", "c"]).unwrap();
        let p = ParamPoly::from_terms(&s, [(vec![1, 0], rat(3, 2)), (vec![0, 0], rat(-1, 4)), (vec![1, 2], rat(1, 1))])
            .unwrap();
        let j = poly_to_json(&p);
        assert_eq!(j.get("b^1").unwrap(), "3/2");
        assert_eq!(j.get("1").unwrap(), "-1/4");
        assert_eq!(j.get("b^1.c^2").unwrap(), "1");
        assert_eq!(poly_from_json(&s, &j).unwrap(), p);
    }

    #[test]
    fn matrix_json_shape() {
        let s = ParamSpace::new(["b"]).unwrap();
        let mut m = PolyMatrix::zeros(&s, 2, 2);
        m.set(0, 1, ParamPoly::var(&s, "b").unwrap());
        let text = serde_json::to_string(&MatrixJson::from_matrix(&m)).unwrap();
        assert_eq!(text, r#"{"rows":2,"cols":2,"entries":[[0,1,{"b^1":"1"}]]}"#);
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_matrix(&s).unwrap(), m);
    }

    #[test]
    fn bad_entries_rejected() {
        let s = ParamSpace::new(["b"]).unwrap();
        let j: MatrixJson = serde_json::from_str(r#"{"rows":1,"cols":1,"entries":[[0,3,{"1":"1"}]]}"#).unwrap();
        assert!(j.to_matrix(&s).is_err());
        let j: MatrixJson = serde_json::from_str(r#"{"rows":1,"cols":1,"entries":[[0,0,{"q^1":"1"}]]}"#).unwrap();
        assert!(j.to_matrix(&s).is_err());
    }
}
