//! Exact Chow rings of moduli spaces of ordered point configurations on the
//! projective line.
//!
//! The ambient ring is `A = Q[X_1..X_m, Y]/(X_i^2 - Y)`; a stability
//! `theta` selects forbidden subsets whose relations `R_I`, `S_I` cut out
//! the Chow ring of the corresponding moduli space.

pub mod autgroup;
pub mod checks;
pub mod chow;
pub mod error;
pub mod exactpoly;
pub mod invariants;
pub mod linalg;
pub mod presentation;
pub mod rational;
pub mod stability;

pub use error::{Error, Result};
pub use rational::Rational;
