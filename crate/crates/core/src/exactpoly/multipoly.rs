use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{display_rational, Rational};

/// Exponent vector, one entry per variable.
pub type Exponent = Vec<u32>;

/// Sparse multivariate polynomial over Q with a fixed number of variables.
///
/// Terms with zero coefficient are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The variable with 0-based index `var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable {var} out of range for {nvars} variables");
        let mut exp = vec![0; nvars];
        exp[var] = 1;
        Self::monomial(nvars, exp, Rational::one())
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: Rational) -> Self {
        assert_eq!(exp.len(), nvars);
        let mut p = Self::zero(nvars);
        p.add_term(exp, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rational)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (exp, c) in terms {
            p.add_term(exp, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rational> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &[u32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c * x^exp` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, exp: Exponent, c: Rational) {
        assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (exp, c) in &other.terms {
            out.add_term(exp.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (exp, c) in &other.terms {
            out.add_term(exp.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exp, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut total = Rational::zero();
        for (exp, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(exp) {
                for _ in 0..e {
                    term *= x;
                }
            }
            total += term;
        }
        total
    }

    /// Replaces variable `var` by `value` (a polynomial in the same variables).
    pub fn substitute(&self, var: usize, value: &MultiPoly) -> MultiPoly {
        assert_eq!(value.nvars, self.nvars);
        let mut powers = vec![Self::one(self.nvars)];
        let mut out = Self::zero(self.nvars);
        for (exp, c) in &self.terms {
            let e = exp[var] as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let mut rest = exp.clone();
            rest[var] = 0;
            let base = Self::monomial(self.nvars, rest, c.clone());
            out = &out + &(&base * &powers[e]);
        }
        out
    }

    /// Applies `f` to every exponent vector; coefficients of colliding images are summed.
    pub fn map_exponents<F: Fn(&[u32]) -> Exponent>(&self, nvars: usize, f: F) -> MultiPoly {
        let mut out = Self::zero(nvars);
        for (exp, c) in &self.terms {
            out.add_term(f(exp), c.clone());
        }
        out
    }

    /// Renders with the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (pos, (exp, c)) in self.terms.iter().rev().enumerate() {
            let text = display_rational(c);
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if pos == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let factors: Vec<String> = exp
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
                .collect();
            if factors.is_empty() {
                out.push_str(&magnitude);
            } else {
                if magnitude != "1" {
                    out.push_str(&magnitude);
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

// Operator forms panic on arity mismatch; use the `try_*` methods for
// untrusted inputs.
impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("polynomial arity")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("polynomial arity")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("polynomial arity")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}
