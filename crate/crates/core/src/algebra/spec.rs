use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::ParamSpace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Sl,
    Gl,
}

/// `sl(m|n)` or `gl(m|n)`. Both flavors require `m != n` so that the
/// hypercharge `y` exists and the odd bracket constant `k` is nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct SuperAlgebraSpec {
    pub flavor: Flavor,
    pub m: usize,
    pub n: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    flavor: Flavor,
    m: usize,
    n: usize,
}

impl TryFrom<RawSpec> for SuperAlgebraSpec {
    type Error = Error;

    fn try_from(r: RawSpec) -> Result<Self> {
        Self::new(r.flavor, r.m, r.n)
    }
}

impl SuperAlgebraSpec {
    pub fn new(flavor: Flavor, m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidAlgebra(format!("m and n must be positive, got ({m}|{n})")));
        }
        if m == n {
            return Err(Error::InvalidAlgebra(format!(
                "{}({m}|{m}) is excluded: for m = n there is no supertraceless hypercharge y",
                match flavor {
                    Flavor::Sl => "sl",
                    Flavor::Gl => "gl",
                }
            )));
        }
        Ok(Self { flavor, m, n })
    }

    pub fn sl(m: usize, n: usize) -> Result<Self> {
        Self::new(Flavor::Sl, m, n)
    }

    pub fn gl(m: usize, n: usize) -> Result<Self> {
        Self::new(Flavor::Gl, m, n)
    }

    /// Number of even simple roots, `m + n - 2`.
    pub fn even_rank(&self) -> usize {
        self.m + self.n - 2
    }

    /// Number of odd positive roots, `mn`.
    pub fn num_odd(&self) -> usize {
        self.m * self.n
    }

    /// Size of the defining matrices.
    pub fn size(&self) -> usize {
        self.m + self.n
    }

    pub fn dim(&self) -> usize {
        let s = self.size() * self.size();
        match self.flavor {
            Flavor::Sl => s - 1,
            Flavor::Gl => s,
        }
    }

    /// Parameters of highest-weight modules: `b`, plus the central charge
    /// `c` for `gl`.
    pub fn param_space(&self) -> ParamSpace {
        match self.flavor {
            Flavor::Sl => ParamSpace::new(["b"]),
            Flavor::Gl => ParamSpace::new(["b", "c"]),
        }
        .expect("fixed parameter names")
    }
}

impl fmt::Display for SuperAlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.flavor {
            Flavor::Sl => "sl",
            Flavor::Gl => "gl",
        };
        write!(f, "{name}({}|{})", self.m, self.n)
    }
}
