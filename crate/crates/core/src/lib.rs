//! Exact construction and verification of Kac modules over `sl(m|n)` and
//! `gl(m|n)`, their odd-reflection typicality data, self-extensions built
//! by differentiating in the highest-weight parameter, and the associated
//! Heisenberg superalgebra modules.

pub mod algebra;
pub mod error;
pub mod evenrep;
pub mod exactmath;
pub mod export;
pub mod heisenberg;
pub mod kacmod;
pub mod matryoshka;
pub mod report;
pub mod representation;

pub use error::{Error, Result};
