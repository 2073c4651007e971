//! Iterative Hasse-Schmidt derivations in characteristic p, truncated arc
//! bundles of affine varieties and groups, and the iterative logarithmic
//! derivative, all computed exactly over F_p(t).

pub mod algebra;
pub mod arc;
pub mod derivation;
pub mod error;
pub mod group;
pub mod logeq;
pub mod sample;
pub mod suites;

pub use error::{Error, Result};
