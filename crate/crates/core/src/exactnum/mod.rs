//! Arithmetic kernel: exact rationals, small dense symmetric matrices, inertia
//! counting and a damped Newton driver.

mod inertia;
mod matrix;
mod newton;
mod scalar;

pub use inertia::{inertia, inertia_default, negative_direction, Inertia, FLOAT_ZERO_TOL};
pub use matrix::{Matrix, SymMatrix};
pub use newton::{newton_solve, Jacobian, NewtonOptions, MAX_HALVINGS};
pub use scalar::{format_f64, format_rational, parse_rational, Rational, Scalar};
