use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;

use crate::chow::{ChowElement, ChowMonomial};
use crate::error::Result;
use crate::exactpoly::{MultiPoly, SubsetIndex};
use crate::rational::Rational;

/// An element of `A` whose coefficients are polynomials in symbols
/// `a_1..a_m` (polynomial variable `i - 1` is `a_i`).
#[derive(Clone, PartialEq, Eq)]
pub struct SymbolicElement {
    m: usize,
    terms: BTreeMap<ChowMonomial, MultiPoly>,
}

impl SymbolicElement {
    pub fn zero(m: usize) -> Self {
        SymbolicElement { m, terms: BTreeMap::new() }
    }

    pub fn one(m: usize) -> Self {
        let mut out = Self::zero(m);
        out.add_term(ChowMonomial::ONE, MultiPoly::one(m));
        out
    }

    /// `sum_i a_i X_i` with every `a_i` a free symbol.
    pub fn generic_linear(m: usize) -> Self {
        Self::linear((0..m).map(|i| MultiPoly::var(m, i)).collect())
    }

    /// `sum_i c_i X_i` for polynomial coefficients `c_i`.
    pub fn linear(coefficients: Vec<MultiPoly>) -> Self {
        let m = coefficients.len();
        let mut out = Self::zero(m);
        for (i, c) in coefficients.into_iter().enumerate() {
            out.add_term(ChowMonomial::new(SubsetIndex::singleton(i + 1), 0), c);
        }
        out
    }

    pub fn arity(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<ChowMonomial, MultiPoly> {
        &self.terms
    }

    pub fn coefficient(&self, mon: &ChowMonomial) -> MultiPoly {
        self.terms.get(mon).cloned().unwrap_or_else(|| MultiPoly::zero(self.m))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mon: ChowMonomial, c: MultiPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mon).or_insert_with(|| MultiPoly::zero(self.m));
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&mon);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.m);
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                out.add_term(a.times(b), p * q);
            }
        }
        out
    }

    /// Image in `A/(Y)`.
    pub fn mod_y(&self) -> Self {
        SymbolicElement {
            m: self.m,
            terms: self.terms.iter().filter(|(mon, _)| mon.k == 0).map(|(mon, c)| (*mon, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.m), |acc, _| acc.mul(self))
    }

    /// `k`-th power in `A/(Y)`, projecting after every step.
    pub fn pow_mod_y(&self, k: u32) -> Self {
        let base = self.mod_y();
        (0..k).fold(Self::one(self.m), |acc, _| acc.mul(&base).mod_y())
    }

    /// Apply a linear map given on basis monomials.
    pub fn map_linear<F>(&self, mut image: F) -> Result<Self>
    where
        F: FnMut(ChowMonomial) -> Result<ChowElement>,
    {
        let mut cache: HashMap<ChowMonomial, ChowElement> = HashMap::new();
        let mut out = Self::zero(self.m);
        for (mon, p) in &self.terms {
            if !cache.contains_key(mon) {
                cache.insert(*mon, image(*mon)?);
            }
            for (target, c) in cache[mon].terms() {
                out.add_term(*target, p.scale(c));
            }
        }
        Ok(out)
    }

    /// Substitute a polynomial for the symbol `a_i` (1-based).
    pub fn substitute(&self, i: usize, value: &MultiPoly) -> Self {
        let mut out = Self::zero(self.m);
        for (mon, p) in &self.terms {
            out.add_term(*mon, p.substitute(i - 1, value));
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> ChowElement {
        let mut out = ChowElement::zero(self.m);
        for (mon, p) in &self.terms {
            let value = p.evaluate(point);
            if !value.is_zero() {
                out.add_term(*mon, value);
            }
        }
        out
    }
}

pub(crate) fn symbol_names(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("a{i}")).collect()
}

impl fmt::Display for SymbolicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = symbol_names(self.m);
        let parts: Vec<String> = self.terms.iter().map(|(mon, p)| format!("({})*{mon}", p.render(&names))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for SymbolicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
