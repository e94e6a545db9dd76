use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;

use super::relations::RelationPair;
use crate::chow::{graded_basis, ChowElement, ChowMonomial};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::rational::Rational;
use crate::stability::Stability;

/// The ring the ideal lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    /// `A = Q[X_1..X_m, Y]/(X_i^2 - Y)`.
    Full,
    /// `A/(Y) = Q[X_1..X_m]/(X_i^2)`: every term with a power of `Y` is dropped.
    ModY,
}

impl Ambient {
    fn project(self, el: &ChowElement) -> ChowElement {
        match self {
            Ambient::Full => el.clone(),
            Ambient::ModY => el.mod_y(),
        }
    }

    fn basis(self, m: usize, d: usize) -> Vec<ChowMonomial> {
        let mut basis = graded_basis(m, d);
        if self == Ambient::ModY {
            basis.retain(|mon| mon.k == 0);
        }
        basis
    }
}

/// Which forbidden subsets contribute relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorSet {
    Minimal,
    AllForbidden,
}

/// One graded piece: the ideal component in the fixed basis order, kept
/// as a reduced echelon form, and the basis labels of the quotient.
#[derive(Clone, Debug)]
pub struct DegreeComponent {
    degree: usize,
    basis: Vec<ChowMonomial>,
    index: HashMap<ChowMonomial, usize>,
    ideal: Echelon,
    representatives: Vec<ChowMonomial>,
}

impl DegreeComponent {
    /// Spans `{monomial * g}` over the generators `g` of degree at most `degree`.
    pub fn build(m: usize, degree: usize, generators: &[ChowElement], ambient: Ambient) -> Self {
        let basis = ambient.basis(m, degree);
        let index: HashMap<ChowMonomial, usize> = basis.iter().enumerate().map(|(pos, mon)| (*mon, pos)).collect();
        let mut ideal = Echelon::new(basis.len());
        'outer: for g in generators {
            let g = ambient.project(g);
            let Some(g_degree) = g.degree() else {
                assert!(g.is_zero(), "relations must be homogeneous");
                continue;
            };
            if g_degree > degree {
                continue;
            }
            for multiplier in ambient.basis(m, degree - g_degree) {
                if ideal.is_full() {
                    break 'outer;
                }
                let product =
                    ambient.project(&(&ChowElement::monomial(m, multiplier, Rational::from_integer(1.into())) * &g));
                let row = vectorize(&index, basis.len(), &product);
                ideal.insert(&row);
            }
        }
        let representatives = ideal.free_columns().into_iter().map(|c| basis[c]).collect();
        DegreeComponent { degree, basis, index, ideal, representatives }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> &[ChowMonomial] {
        &self.basis
    }

    pub fn ideal(&self) -> &Echelon {
        &self.ideal
    }

    pub fn rank(&self) -> usize {
        self.ideal.rank()
    }

    pub fn quotient_dimension(&self) -> usize {
        self.basis.len() - self.ideal.rank()
    }

    /// Basis labels spanning the quotient in this degree.
    pub fn representatives(&self) -> &[ChowMonomial] {
        &self.representatives
    }

    pub fn vectorize(&self, el: &ChowElement) -> Vec<Rational> {
        vectorize(&self.index, self.basis.len(), el)
    }

    pub fn devectorize(&self, m: usize, row: &[Rational]) -> ChowElement {
        ChowElement::from_terms(m, self.basis.iter().zip(row).map(|(mon, c)| (*mon, c.clone())))
    }
}

fn vectorize(index: &HashMap<ChowMonomial, usize>, len: usize, el: &ChowElement) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); len];
    for (mon, c) in el.terms() {
        let pos = *index.get(mon).unwrap_or_else(|| panic!("monomial {mon} not in this graded basis"));
        row[pos] = c.clone();
    }
    row
}

/// Ideal components of degrees `0..=max_degree` for arbitrary homogeneous
/// generators, built independently (and in parallel) per degree.
pub fn ideal_components(
    m: usize,
    generators: &[ChowElement],
    max_degree: usize,
    ambient: Ambient,
) -> Vec<DegreeComponent> {
    (0..=max_degree).into_par_iter().map(|d| DegreeComponent::build(m, d, generators, ambient)).collect()
}

/// The Chow ring of the moduli of `theta`-semistable configurations,
/// presented as `A` modulo the relations of the forbidden subsets, with
/// graded pieces cached up to `max_degree`.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    theta: Stability,
    ambient: Ambient,
    generator_set: GeneratorSet,
    generators: Vec<RelationPair>,
    components: Vec<DegreeComponent>,
}

impl QuotientRing {
    pub fn build(theta: &Stability, max_degree: usize) -> Result<Self> {
        Self::build_with(theta, max_degree, GeneratorSet::Minimal, Ambient::Full)
    }

    pub fn build_with(
        theta: &Stability,
        max_degree: usize,
        generator_set: GeneratorSet,
        ambient: Ambient,
    ) -> Result<Self> {
        if !theta.is_nontrivial() {
            return Err(Error::TrivialStability);
        }
        let m = theta.arity();
        let family = theta.forbidden();
        let sets = match generator_set {
            GeneratorSet::Minimal => family.minimal(),
            GeneratorSet::AllForbidden => family.all(),
        };
        let generators: Vec<RelationPair> = sets.iter().map(|&set| RelationPair::new(m, set)).collect();
        let elements: Vec<ChowElement> = generators.iter().flat_map(|p| [p.r.clone(), p.s.clone()]).collect();
        let components = ideal_components(m, &elements, max_degree, ambient);
        Ok(QuotientRing { theta: theta.clone(), ambient, generator_set, generators, components })
    }

    /// A new ring with the cache rebuilt through `max_degree`.
    pub fn extend(&self, max_degree: usize) -> Result<Self> {
        Self::build_with(&self.theta, max_degree, self.generator_set, self.ambient)
    }

    pub fn theta(&self) -> &Stability {
        &self.theta
    }

    pub fn arity(&self) -> usize {
        self.theta.arity()
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn generator_set(&self) -> GeneratorSet {
        self.generator_set
    }

    pub fn generators(&self) -> &[RelationPair] {
        &self.generators
    }

    pub fn max_degree(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, degree: usize) -> Result<&DegreeComponent> {
        self.components.get(degree).ok_or(Error::DegreeBeyondCache { degree, cached: self.max_degree() })
    }

    pub fn components(&self) -> &[DegreeComponent] {
        &self.components
    }

    /// Quotient dimensions in degrees `0..=max_degree`.
    pub fn dimensions(&self) -> Vec<usize> {
        self.components.iter().map(DegreeComponent::quotient_dimension).collect()
    }

    /// Quotient dimensions by degree. Once a degree vanishes every higher
    /// degree does too (the ring is generated in degree 1), so trailing
    /// zeros are dropped in that case; otherwise the full cached range is
    /// returned.
    pub fn poincare_polynomial(&self) -> Vec<usize> {
        let mut dims = self.dimensions();
        if let Some(first_zero) = dims.iter().position(|&d| d == 0) {
            debug_assert!(dims[first_zero..].iter().all(|&d| d == 0));
            dims.truncate(first_zero);
        }
        dims
    }

    /// Unique coset representative, supported on [`DegreeComponent::representatives`].
    pub fn normal_form(&self, el: &ChowElement) -> Result<ChowElement> {
        let m = self.arity();
        if el.arity() != m {
            return Err(Error::ArityMismatch { left: m, right: el.arity() });
        }
        let el = self.ambient.project(el);
        let mut out = ChowElement::zero(m);
        for (degree, part) in el.homogeneous_parts() {
            let component = self.component(degree)?;
            let reduced = component.ideal.reduce(&component.vectorize(&part));
            out = &out + &component.devectorize(m, &reduced);
        }
        Ok(out)
    }

    pub fn is_zero(&self, el: &ChowElement) -> Result<bool> {
        Ok(self.normal_form(el)?.is_zero())
    }
}

pub fn build_quotient(theta: &Stability, max_degree: usize) -> Result<QuotientRing> {
    QuotientRing::build(theta, max_degree)
}

pub fn normal_form(ring: &QuotientRing, el: &ChowElement) -> Result<ChowElement> {
    ring.normal_form(el)
}

pub fn is_zero_in_quotient(ring: &QuotientRing, el: &ChowElement) -> Result<bool> {
    ring.is_zero(el)
}

pub fn poincare_polynomial(ring: &QuotientRing) -> Vec<usize> {
    ring.poincare_polynomial()
}

/// Whether the ideal of `inner` is contained in the ideal of `outer` in
/// every degree both caches cover.
pub fn ideal_contained(inner: &QuotientRing, outer: &QuotientRing) -> Result<bool> {
    if inner.arity() != outer.arity() {
        return Err(Error::ArityMismatch { left: inner.arity(), right: outer.arity() });
    }
    if inner.ambient != outer.ambient {
        return Err(Error::InvalidInput("ideals live in different ambient rings".into()));
    }
    let top = inner.max_degree().min(outer.max_degree());
    Ok((0..=top).all(|d| outer.components[d].ideal.contains_span(&inner.components[d].ideal)))
}

/// Whether both rings have the same ideal in every degree both caches cover.
pub fn same_ideal(a: &QuotientRing, b: &QuotientRing) -> Result<bool> {
    Ok(ideal_contained(a, b)? && ideal_contained(b, a)?)
}
