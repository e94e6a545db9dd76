use num_traits::One;

use crate::chow::{ChowElement, ChowMonomial};
use crate::exactpoly::{SubsetIndex, TorusPolynomial};
use crate::rational::{rat, Rational};

/// The relation pair attached to a subset `I`: `R_I` of degree `|I| - 1`
/// and `S_I` of degree `|I|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationPair {
    pub set: SubsetIndex,
    pub r: ChowElement,
    pub s: ChowElement,
}

impl RelationPair {
    pub fn new(m: usize, set: SubsetIndex) -> Self {
        RelationPair { set, r: relation_r(m, set), s: relation_s(m, set) }
    }
}

/// `sum_{|J| = j, J ⊆ I} X_J Y^nu`, i.e. `e_j(X_i | i in I) Y^nu`.
fn add_symmetric_block(out: &mut ChowElement, set: SubsetIndex, j: usize, nu: u32) {
    for part in set.subsets_of_size(j) {
        out.add_term(ChowMonomial::new(part, nu), Rational::one());
    }
}

/// `R_I = sum_{nu} e_{k-1-2nu}(X_i | i in I) Y^nu` with `k = |I|`; `R_∅ = 0`.
pub fn relation_r(m: usize, set: SubsetIndex) -> ChowElement {
    assert!(set.within(m), "subset {set} outside 1..={m}");
    let k = set.len();
    let mut out = ChowElement::zero(m);
    if k == 0 {
        return out;
    }
    for nu in 0..=(k - 1) / 2 {
        add_symmetric_block(&mut out, set, k - 1 - 2 * nu, nu as u32);
    }
    out
}

/// `S_I = sum_{nu} e_{k-2nu}(X_i | i in I) Y^nu` with `k = |I|`; `S_∅ = 1`.
pub fn relation_s(m: usize, set: SubsetIndex) -> ChowElement {
    assert!(set.within(m), "subset {set} outside 1..={m}");
    let k = set.len();
    let mut out = ChowElement::zero(m);
    for nu in 0..=k / 2 {
        add_symmetric_block(&mut out, set, k - 2 * nu, nu as u32);
    }
    out
}

/// `f^I = prod_{i in I} (y_2 - x_i)`.
pub fn tautological_product(m: usize, set: SubsetIndex) -> TorusPolynomial {
    let y2 = TorusPolynomial::y2(m);
    set.members().fold(TorusPolynomial::one(m), |acc, i| &acc * &(&y2 - &TorusPolynomial::x(m, i)))
}

/// The torus-side symmetrizations `(rho(f^I), rho(f^I (y_2 - y_1)) / 2)`,
/// computed by divided differences. These are what `R_I` and `S_I` must
/// map to under the Chow substitution.
pub fn relation_oracle(m: usize, set: SubsetIndex) -> (TorusPolynomial, TorusPolynomial) {
    let f = tautological_product(m, set);
    let r = f.divided_difference();
    let shifted = &f * &(&TorusPolynomial::y2(m) - &TorusPolynomial::y1(m));
    let s = shifted.divided_difference().scale(&rat(1, 2));
    (r, s)
}
