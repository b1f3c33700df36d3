//! Exact scalars and linear algebra: rationals, sparse polynomials in named
//! parameters, sparse polynomial matrices and rational row reduction.

mod linsolve;
mod matrix;
mod poly;
mod rational;
mod univariate;

pub use linsolve::{rational_linear_solve, row_reduce, solve_in_span, QMatrix, RowReduction, SpanSolver};
pub use matrix::PolyMatrix;
pub use poly::{ParamPoly, ParamSpace};
pub use rational::{format_rational, parse_rational, rat, Rational};
pub use univariate::{rational_roots, RootSplit};
