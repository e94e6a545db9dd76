//! Exact sparse polynomial kernel: rationals, torus-side polynomials in
//! `x_1..x_m, y_1, y_2`, and the divided-difference symmetrization.

mod multipoly;
mod subset;
mod torus;

pub use multipoly::{Exponent, MultiPoly};
pub use subset::{Members, SubsetIndex, MAX_ARITY};
pub use torus::{
    chow_generator_images, divided_difference, elementary_symmetric, poly_arith, substitute_chow, ArithKind,
    RingElement, TorusPolynomial,
};
