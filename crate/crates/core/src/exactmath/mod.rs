//! Exact arithmetic: rationals, polynomials over ℚ, integer matrices and
//! their normal forms.

pub mod matrix;
pub mod mpoly;
pub mod normal_form;
pub mod rational;
pub mod upoly;

pub use matrix::{IMat, QMat};
pub use mpoly::MPoly;
pub use normal_form::{hermite_normal_form, integer_kernel, smith_normal_form, Hnf, Snf};
pub use rational::{int, parse_rational, rat, Rational};
pub use upoly::{discriminant, resultant, squarefree_decomposition, UPoly};
