//! Exact scalars, matrices and polynomials over the rationals.

pub mod matrix;
pub mod poly;
pub mod rational;

pub use matrix::{dot, nullspace, rref, solve_affine, AffineSolution, QMatrix, SolutionFamily};
pub use poly::{Monomial, PolyQ};
pub use rational::{int, parse_rational, rat, Rational};
