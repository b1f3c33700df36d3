use std::collections::BTreeMap;

use crate::algebra::GeneratorLabel;
use crate::error::{Error, Result};
use crate::exactmath::{ParamSpace, PolyMatrix, Rational};

/// Metadata for one basis vector of a constructed module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisInfo {
    /// Block index in an N-fold replication or twist; 0 otherwise.
    pub block: usize,
    /// Indices of the lowering odd generators applied, strictly increasing.
    pub odd_subset: Vec<usize>,
    pub even_index: usize,
    /// Weight minus the highest weight, in epsilon/delta coordinates.
    pub weight: Vec<i64>,
}

impl BasisInfo {
    pub fn layer(&self) -> usize {
        self.odd_subset.len()
    }
}

/// Square polynomial matrices for a set of generators, with basis metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub params: ParamSpace,
    pub matrices: BTreeMap<GeneratorLabel, PolyMatrix>,
    pub basis: Vec<BasisInfo>,
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix(&self, label: GeneratorLabel) -> Result<&PolyMatrix> {
        self.matrices.get(&label).ok_or_else(|| Error::Precondition(format!("no matrix for generator {label}")))
    }

    pub fn substitute(&self, bindings: &BTreeMap<String, Rational>) -> Result<Self> {
        let matrices = self.matrices.iter().map(|(l, m)| Ok((*l, m.substitute(bindings)?))).collect::<Result<_>>()?;
        Ok(Self { params: self.params.clone(), matrices, basis: self.basis.clone() })
    }

    pub fn embed(&self, target: &ParamSpace) -> Result<Self> {
        let matrices = self.matrices.iter().map(|(l, m)| Ok((*l, m.embed(target)?))).collect::<Result<_>>()?;
        Ok(Self { params: target.clone(), matrices, basis: self.basis.clone() })
    }

    /// Basis indices grouped by weight, in basis order within each group.
    pub fn weight_spaces(&self) -> BTreeMap<Vec<i64>, Vec<usize>> {
        let mut out: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            out.entry(b.weight.clone()).or_default().push(i);
        }
        out
    }

    /// Checks that every matrix is `dim x dim` over this representation's space.
    pub fn validate(&self) -> Result<()> {
        for (l, m) in &self.matrices {
            if m.rows() != self.dim() || m.cols() != self.dim() {
                return Err(Error::Dimension(format!(
                    "{l} is {}x{} in a {}-dimensional module",
                    m.rows(),
                    m.cols(),
                    self.dim()
                )));
            }
            if m.space() != &self.params {
                return Err(Error::ParamMismatch {
                    left: m.space().names().to_vec(),
                    right: self.params.names().to_vec(),
                });
            }
        }
        Ok(())
    }
}
