//! Exact chain-level calculus for polytopal manifolds with corners.

pub mod bordism;
pub mod chains;
pub mod dd;
pub mod error;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod maps;
pub mod orbifold;
pub mod products;
pub mod random;
pub mod rational;
pub mod suites;

pub use error::{Error, Result};
pub use rational::Rational;
