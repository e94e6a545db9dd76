//! Normal-form arithmetic in `A = Q[X_1..X_m, Y]/(X_i^2 - Y)`.
//!
//! Every element is a unique combination of the monomials `X_J Y^k` with
//! `J` squarefree. Products rewrite `X_i^2` to `Y` on the fly, so the
//! result of every operation is already in normal form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{MultiPoly, RingElement, SubsetIndex, MAX_ARITY};
use crate::rational::{self, display_rational, Rational};

/// Basis label `X_J Y^k`. The derived order compares `k` first, then `J`
/// lexicographically; within one degree this is the fixed basis order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChowMonomial {
    pub k: u32,
    pub set: SubsetIndex,
}

impl ChowMonomial {
    pub const ONE: ChowMonomial = ChowMonomial { k: 0, set: SubsetIndex::EMPTY };

    pub fn new(set: SubsetIndex, k: u32) -> Self {
        ChowMonomial { k, set }
    }

    pub fn degree(&self) -> usize {
        self.set.len() + 2 * self.k as usize
    }

    /// Product of two labels: shared indices square to `Y`.
    pub fn times(&self, other: &ChowMonomial) -> ChowMonomial {
        let shared = self.set.intersection(other.set).len() as u32;
        ChowMonomial { k: self.k + other.k + shared, set: self.set.symmetric_difference(other.set) }
    }
}

impl fmt::Debug for ChowMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.set, self.k)
    }
}

impl fmt::Display for ChowMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors: Vec<String> = self.set.members().map(|i| format!("X{i}")).collect();
        match self.k {
            0 => {}
            1 => factors.push("Y".into()),
            k => factors.push(format!("Y^{k}")),
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

/// All basis labels of degree `d`, ordered by `k` and then lexicographically by `J`.
pub fn graded_basis(m: usize, d: usize) -> Vec<ChowMonomial> {
    let full = SubsetIndex::full(m);
    (0..=d / 2)
        .flat_map(|k| full.subsets_of_size(d - 2 * k).into_iter().map(move |set| ChowMonomial::new(set, k as u32)))
        .collect()
}

/// `dim A_d` for `d = 0..=max_degree`, by enumerating the normal-form basis.
pub fn ambient_hilbert(m: usize, max_degree: usize) -> Vec<usize> {
    (0..=max_degree).map(|d| graded_basis(m, d).len()).collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChowElement {
    m: usize,
    terms: BTreeMap<ChowMonomial, Rational>,
}

impl ChowElement {
    pub fn zero(m: usize) -> Self {
        assert!(m <= MAX_ARITY, "arity {m} exceeds {MAX_ARITY}");
        ChowElement { m, terms: BTreeMap::new() }
    }

    pub fn one(m: usize) -> Self {
        Self::monomial(m, ChowMonomial::ONE, Rational::one())
    }

    pub fn constant(m: usize, c: Rational) -> Self {
        Self::monomial(m, ChowMonomial::ONE, c)
    }

    /// `X_i`, 1-based.
    pub fn x(m: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= m, "X_{i} out of range for m = {m}");
        Self::monomial(m, ChowMonomial::new(SubsetIndex::singleton(i), 0), Rational::one())
    }

    pub fn y(m: usize) -> Self {
        Self::monomial(m, ChowMonomial::new(SubsetIndex::EMPTY, 1), Rational::one())
    }

    /// `X_J = prod_{j in J} X_j`.
    pub fn x_set(m: usize, set: SubsetIndex) -> Self {
        Self::monomial(m, ChowMonomial::new(set, 0), Rational::one())
    }

    pub fn monomial(m: usize, mon: ChowMonomial, c: Rational) -> Self {
        let mut out = Self::zero(m);
        out.add_term(mon, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (ChowMonomial, Rational)>>(m: usize, terms: I) -> Self {
        let mut out = Self::zero(m);
        for (mon, c) in terms {
            out.add_term(mon, c);
        }
        out
    }

    /// Linear form `sum_i a_i X_i`.
    pub fn linear(coefficients: &[Rational]) -> Self {
        let m = coefficients.len();
        Self::from_terms(
            m,
            coefficients
                .iter()
                .enumerate()
                .map(|(i, c)| (ChowMonomial::new(SubsetIndex::singleton(i + 1), 0), c.clone())),
        )
    }

    pub fn arity(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<ChowMonomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mon: &ChowMonomial) -> Rational {
        self.terms.get(mon).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, mon: ChowMonomial, c: Rational) {
        assert!(mon.set.within(self.m), "monomial {mon} outside arity {}", self.m);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mon).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mon);
        }
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::ArityMismatch { left: self.m, right: other.m });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (mon, c) in &other.terms {
            out.add_term(*mon, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (mon, c) in &other.terms {
            out.add_term(*mon, -c.clone());
        }
        Ok(out)
    }

    /// Product in normal form.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.m);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.m);
        }
        ChowElement { m: self.m, terms: self.terms.iter().map(|(mon, v)| (*mon, v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.m);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(ChowMonomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree(&self) -> Option<usize> {
        if self.is_homogeneous() {
            self.terms.keys().next().map(ChowMonomial::degree)
        } else {
            None
        }
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(ChowMonomial::degree).max()
    }

    pub fn homogeneous_parts(&self) -> BTreeMap<usize, ChowElement> {
        let mut parts: BTreeMap<usize, ChowElement> = BTreeMap::new();
        for (mon, c) in &self.terms {
            parts.entry(mon.degree()).or_insert_with(|| Self::zero(self.m)).add_term(*mon, c.clone());
        }
        parts
    }

    /// Image in `A/(Y)`: drops every term with a positive power of `Y`.
    pub fn mod_y(&self) -> Self {
        ChowElement {
            m: self.m,
            terms: self.terms.iter().filter(|(mon, _)| mon.k == 0).map(|(mon, c)| (*mon, c.clone())).collect(),
        }
    }

    /// The canonical representative as a polynomial in `X_1..X_m, Y`
    /// (variable `m` is `Y`).
    pub fn lift(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.m + 1);
        for (mon, c) in &self.terms {
            let mut exp = vec![0u32; self.m + 1];
            for i in mon.set.members() {
                exp[i - 1] = 1;
            }
            exp[self.m] = mon.k;
            out.add_term(exp, c.clone());
        }
        out
    }

    /// Normal form of an arbitrary polynomial in `X_1..X_m, Y`.
    pub fn from_generator_poly(g: &MultiPoly) -> Result<Self> {
        if g.nvars() == 0 {
            return Err(Error::InvalidInput("generator polynomial needs at least the Y variable".into()));
        }
        let m = g.nvars() - 1;
        if m > MAX_ARITY {
            return Err(Error::InvalidInput(format!("arity {m} exceeds {MAX_ARITY}")));
        }
        let mut out = Self::zero(m);
        for (exp, c) in g.terms() {
            let mut set = SubsetIndex::EMPTY;
            let mut k = exp[m];
            for (i, &e) in exp[..m].iter().enumerate() {
                k += e / 2;
                if e % 2 == 1 {
                    set = set.with(i + 1);
                }
            }
            out.add_term(ChowMonomial::new(set, k), c.clone());
        }
        Ok(out)
    }
}

pub fn chow_mul(a: &ChowElement, b: &ChowElement) -> Result<ChowElement> {
    a.try_mul(b)
}

pub fn chow_pow(a: &ChowElement, k: u32) -> ChowElement {
    a.pow(k)
}

impl RingElement for ChowElement {
    fn zero_like(&self) -> Self {
        ChowElement::zero(self.m)
    }
    fn one_like(&self) -> Self {
        ChowElement::one(self.m)
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl Add for &ChowElement {
    type Output = ChowElement;
    fn add(self, rhs: &ChowElement) -> ChowElement {
        self.try_add(rhs).expect("Chow element arity")
    }
}

impl Sub for &ChowElement {
    type Output = ChowElement;
    fn sub(self, rhs: &ChowElement) -> ChowElement {
        self.try_sub(rhs).expect("Chow element arity")
    }
}

impl Mul for &ChowElement {
    type Output = ChowElement;
    fn mul(self, rhs: &ChowElement) -> ChowElement {
        self.try_mul(rhs).expect("Chow element arity")
    }
}

impl Neg for &ChowElement {
    type Output = ChowElement;
    fn neg(self) -> ChowElement {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for ChowElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (mon, c)) in self.terms.iter().enumerate() {
            let text = display_rational(c);
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (pos, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *mon == ChowMonomial::ONE {
                write!(f, "{magnitude}")?;
            } else if magnitude == "1" {
                write!(f, "{mon}")?;
            } else {
                write!(f, "{magnitude}*{mon}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ChowElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    #[serde(rename = "J")]
    set: Vec<usize>,
    k: u32,
    #[serde(with = "rational::as_string")]
    c: Rational,
}

#[derive(Serialize, Deserialize)]
struct ChowElementWire {
    m: usize,
    terms: Vec<TermWire>,
}

impl Serialize for ChowElement {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ChowElementWire {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(mon, c)| TermWire { set: mon.set.to_vec(), k: mon.k, c: c.clone() })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ChowElement {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = ChowElementWire::deserialize(de)?;
        if wire.m > MAX_ARITY {
            return Err(D::Error::custom(format!("arity {} exceeds {MAX_ARITY}", wire.m)));
        }
        let mut out = ChowElement::zero(wire.m);
        for term in wire.terms {
            let set = SubsetIndex::new(term.set.iter().copied()).map_err(D::Error::custom)?;
            if !set.within(wire.m) {
                return Err(D::Error::custom(format!("subset {set} outside 1..={}", wire.m)));
            }
            out.add_term(ChowMonomial::new(set, term.k), term.c);
        }
        Ok(out)
    }
}
