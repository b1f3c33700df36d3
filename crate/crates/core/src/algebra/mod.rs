//! Root data, generators and structure constants of `sl(m|n)` and `gl(m|n)`.

mod fundamental;
mod labels;
mod roots;
mod spec;
mod structure;

pub use fundamental::{algebra_labels, fundamental_rep};
pub use labels::{GeneratorLabel, Parity};
pub use roots::{EvenRoot, OddRoot, RootDatum};
pub use spec::{Flavor, SuperAlgebraSpec};
pub use structure::{check_super_relations, check_super_relations_on, format_expansion, Expansion, StructureConstants};

use crate::error::Result;

/// Root datum and structure constants, with the constants checked for
/// super-antisymmetry, grading and the super-Jacobi identity.
#[derive(Clone, Debug)]
pub struct SuperAlgebra {
    pub datum: RootDatum,
    pub constants: StructureConstants,
}

impl SuperAlgebra {
    pub fn new(spec: SuperAlgebraSpec) -> Result<Self> {
        let datum = RootDatum::new(spec);
        let constants = StructureConstants::from_representation(&fundamental_rep(&datum))?;
        let mut report = constants.self_check();
        report.push(constants.check_hypercharge());
        if let Some(f) = report.first_failure() {
            return Err(crate::error::Error::Structural(format!("{} fails for {spec}", f.name)));
        }
        Ok(Self { datum, constants })
    }

    pub fn spec(&self) -> SuperAlgebraSpec {
        self.datum.spec
    }
}
