use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use super::multipoly::{Exponent, MultiPoly};
use crate::error::{Error, Result};
use crate::rational::{rat, Rational};

/// Polynomial in `x_1, …, x_m, y_1, y_2` over Q, the torus-equivariant side
/// of the picture. Variables are ordered `x_1 < … < x_m < y_1 < y_2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TorusPolynomial {
    m: usize,
    poly: MultiPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

impl TorusPolynomial {
    pub fn zero(m: usize) -> Self {
        TorusPolynomial { m, poly: MultiPoly::zero(m + 2) }
    }

    pub fn one(m: usize) -> Self {
        Self::constant(m, Rational::one())
    }

    pub fn constant(m: usize, c: Rational) -> Self {
        TorusPolynomial { m, poly: MultiPoly::constant(m + 2, c) }
    }

    /// `x_i`, 1-based.
    pub fn x(m: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= m, "x_{i} out of range for m = {m}");
        TorusPolynomial { m, poly: MultiPoly::var(m + 2, i - 1) }
    }

    pub fn y1(m: usize) -> Self {
        TorusPolynomial { m, poly: MultiPoly::var(m + 2, m) }
    }

    pub fn y2(m: usize) -> Self {
        TorusPolynomial { m, poly: MultiPoly::var(m + 2, m + 1) }
    }

    /// `y = y_1 + y_2`.
    pub fn y(m: usize) -> Self {
        &Self::y1(m) + &Self::y2(m)
    }

    /// `z = y_1 y_2`.
    pub fn z(m: usize) -> Self {
        &Self::y1(m) * &Self::y2(m)
    }

    pub fn from_poly(m: usize, poly: MultiPoly) -> Result<Self> {
        if poly.nvars() != m + 2 {
            return Err(Error::ArityMismatch { left: m + 2, right: poly.nvars() });
        }
        Ok(TorusPolynomial { m, poly })
    }

    pub fn arity(&self) -> usize {
        self.m
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TorusPolynomial { m: self.m, poly: self.poly.scale(c) }
    }

    pub fn pow(&self, k: u32) -> Self {
        TorusPolynomial { m: self.m, poly: self.poly.pow(k) }
    }

    /// Exact sum, difference or product of two polynomials of equal arity.
    pub fn arith(&self, other: &Self, kind: ArithKind) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::ArityMismatch { left: self.m, right: other.m });
        }
        let poly = match kind {
            ArithKind::Add => self.poly.try_add(&other.poly)?,
            ArithKind::Sub => self.poly.try_sub(&other.poly)?,
            ArithKind::Mul => self.poly.try_mul(&other.poly)?,
        };
        Ok(TorusPolynomial { m: self.m, poly })
    }

    /// Exchanges the exponents of `y_1` and `y_2` in every term.
    pub fn swap_y(&self) -> Self {
        let m = self.m;
        let poly = self.poly.map_exponents(m + 2, |e| {
            let mut out = e.to_vec();
            out.swap(m, m + 1);
            out
        });
        TorusPolynomial { m, poly }
    }

    /// Divides by `y_2 - y_1` with remainder, treating the polynomial as a
    /// polynomial in `y_2`. The remainder is free of `y_2`.
    pub fn div_rem_by_y_difference(&self) -> (Self, Self) {
        let m = self.m;
        let y2 = m + 1;
        let mut rem = self.poly.clone();
        let mut quot = MultiPoly::zero(m + 2);
        for e in (1..=rem.degree_in(y2)).rev() {
            let top: Vec<(Exponent, Rational)> =
                rem.terms().iter().filter(|(exp, _)| exp[y2] == e).map(|(exp, c)| (exp.clone(), c.clone())).collect();
            for (exp, c) in top {
                // c * M * y2^e = c * M * y2^(e-1) * (y2 - y1) + c * M * y1 * y2^(e-1)
                let mut lowered = exp.clone();
                lowered[y2] -= 1;
                quot.add_term(lowered.clone(), c.clone());
                rem.add_term(exp, -c.clone());
                lowered[m] += 1;
                rem.add_term(lowered, c);
            }
        }
        (TorusPolynomial { m, poly: quot }, TorusPolynomial { m, poly: rem })
    }

    /// `(f - swap_y(f)) / (y_2 - y_1)`, the symmetrization for a rank-two sink.
    ///
    /// Panics if the division leaves a remainder: the numerator is
    /// antisymmetric, so a remainder means the arithmetic is broken.
    pub fn divided_difference(&self) -> Self {
        let numerator = self - &self.swap_y();
        let (quot, rem) = numerator.div_rem_by_y_difference();
        assert!(rem.is_zero(), "inexact divided difference, remainder {rem:?}");
        quot
    }

    pub fn is_swap_symmetric(&self) -> bool {
        self.swap_y() == *self
    }
}

pub fn poly_arith(a: &TorusPolynomial, b: &TorusPolynomial, kind: ArithKind) -> Result<TorusPolynomial> {
    a.arith(b, kind)
}

pub fn divided_difference(f: &TorusPolynomial) -> TorusPolynomial {
    f.divided_difference()
}

/// Images of the Chow generators: `X_i = y/2 - x_i` and `Y = y^2/4 - z`.
pub fn chow_generator_images(m: usize) -> (Vec<TorusPolynomial>, TorusPolynomial) {
    let half_y = TorusPolynomial::y(m).scale(&rat(1, 2));
    let xs = (1..=m).map(|i| &half_y - &TorusPolynomial::x(m, i)).collect();
    let y = &TorusPolynomial::y(m).pow(2).scale(&rat(1, 4)) - &TorusPolynomial::z(m);
    (xs, y)
}

/// Substitutes the Chow generators into `g`, a polynomial in
/// `X_1, …, X_m, Y` (variables `0..m` are the `X_i`, variable `m` is `Y`).
pub fn substitute_chow(g: &MultiPoly) -> Result<TorusPolynomial> {
    if g.nvars() == 0 {
        return Err(Error::InvalidInput("generator polynomial needs at least the Y variable".into()));
    }
    let m = g.nvars() - 1;
    let (xs, y) = chow_generator_images(m);
    let mut images = xs;
    images.push(y);
    let mut powers: Vec<Vec<TorusPolynomial>> =
        images.iter().map(|p| vec![TorusPolynomial::one(m), p.clone()]).collect();
    let mut out = TorusPolynomial::zero(m);
    for (exp, c) in g.terms() {
        let mut term = TorusPolynomial::constant(m, c.clone());
        for (var, &e) in exp.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let table = &mut powers[var];
            while table.len() <= e as usize {
                let next = &table[table.len() - 1] * &images[var];
                table.push(next);
            }
            term = &term * &table[e as usize];
        }
        out = &out + &term;
    }
    Ok(out)
}

/// Minimal ring interface shared by the polynomial and Chow element types.
pub trait RingElement: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
}

impl RingElement for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.nvars())
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl RingElement for TorusPolynomial {
    fn zero_like(&self) -> Self {
        TorusPolynomial::zero(self.m)
    }
    fn one_like(&self) -> Self {
        TorusPolynomial::one(self.m)
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
}

/// `e_j(vars)`, computed by the standard one-variable-at-a-time recurrence.
/// `one` supplies the unit of the ring, which matters when `vars` is empty.
pub fn elementary_symmetric<T: RingElement>(j: usize, vars: &[T], one: &T) -> T {
    if j > vars.len() {
        return one.zero_like();
    }
    // table[t] holds e_t of the variables processed so far
    let mut table = vec![one.zero_like(); j + 1];
    table[0] = one.clone();
    for (seen, v) in vars.iter().enumerate() {
        for t in (1..=j.min(seen + 1)).rev() {
            table[t] = table[t].ring_add(&v.ring_mul(&table[t - 1]));
        }
    }
    table.swap_remove(j)
}

impl fmt::Debug for TorusPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names: Vec<String> = (1..=self.m).map(|i| format!("x{i}")).collect();
        names.push("y1".into());
        names.push("y2".into());
        write!(f, "{}", self.poly.render(&names))
    }
}

impl fmt::Display for TorusPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &TorusPolynomial {
    type Output = TorusPolynomial;
    fn add(self, rhs: &TorusPolynomial) -> TorusPolynomial {
        self.arith(rhs, ArithKind::Add).expect("torus polynomial arity")
    }
}

impl Sub for &TorusPolynomial {
    type Output = TorusPolynomial;
    fn sub(self, rhs: &TorusPolynomial) -> TorusPolynomial {
        self.arith(rhs, ArithKind::Sub).expect("torus polynomial arity")
    }
}

impl Mul for &TorusPolynomial {
    type Output = TorusPolynomial;
    fn mul(self, rhs: &TorusPolynomial) -> TorusPolynomial {
        self.arith(rhs, ArithKind::Mul).expect("torus polynomial arity")
    }
}

impl Neg for &TorusPolynomial {
    type Output = TorusPolynomial;
    fn neg(self) -> TorusPolynomial {
        self.scale(&-Rational::one())
    }
}
