//! Linear-stability quantities for Einstein metrics of Riemannian-submersion type.
//!
//! Every analysis evaluates a closed-form second variation
//! `⟨(∇*∇ − 2R̊)h, h⟩` along explicit TT-directions and reports
//! [`Verdict::Unstable`] when it is negative. Nothing here ever declares a
//! metric stable. Inputs may be exact rationals ([`Rational`]) or `f64`.

pub mod circle_bundle;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod homogeneous_sp;
pub mod oracle;
pub mod product_base;
pub mod qk_bundle;
pub mod submersion;
pub mod torus_bundle;
pub mod verdict;
pub mod verify;

pub use error::{Error, Result};
pub use exactnum::{Inertia, Rational, Scalar, SymMatrix};
pub use verdict::Verdict;
