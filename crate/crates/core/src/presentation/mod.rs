//! Tautological relations and the graded quotient rings they define.

mod quotient;
mod relations;

pub use quotient::{
    build_quotient, ideal_components, ideal_contained, is_zero_in_quotient, normal_form, poincare_polynomial,
    same_ideal, Ambient, DegreeComponent, GeneratorSet, QuotientRing,
};
pub use relations::{relation_oracle, relation_r, relation_s, tautological_product, RelationPair};
