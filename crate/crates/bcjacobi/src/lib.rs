//! Exact-arithmetic constructions around the Calogero-Moser-Sutherland
//! operator of type BC in infinitely many variables: Jacobi symmetric
//! functions, Jack polynomials, interpolation polynomials of type BC, Pieri
//! rules, and the deformed BC(m,n) theory with super Jacobi polynomials.
//!
//! Every computation is over arbitrary-precision rationals and every
//! identity is checked with zero tolerance. See the `book/` guide for a
//! narrative tour; its code snippets run as doctests.

pub mod bernoulli;
pub mod deformed;
pub mod eigen;
pub mod error;
mod gamma;
pub mod interpolation;
mod linalg;
pub mod multipoly;
pub mod operators;
pub mod params;
pub mod partition;
pub mod pieri;
pub mod rational;
pub mod suites;
pub mod symfunc;

pub use error::{Error, Result};
pub use multipoly::MultiPoly;
pub use params::ParamContext;
pub use partition::Partition;
pub use rational::Rat;
pub use symfunc::{Basis, DeformedPoint, SymFunc};
