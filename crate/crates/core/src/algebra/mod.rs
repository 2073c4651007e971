//! Exact arithmetic: F_p, F_p[t], F_p(t), multivariate polynomials over
//! F_p(t), and truncated power series over any of these.

pub mod linalg;
mod modulus;
mod multipoly;
mod poly;
mod ratfunc;
mod ring;
mod series;

pub use modulus::{binom_mod_p, Fp, Modulus};
pub use multipoly::MultiPoly;
pub use poly::Poly;
pub use ratfunc::{pth_root, ratfunc_reduce, RatFunc};
pub use ring::Ring;
pub use series::{series_inverse, series_mul, TruncSeries};
