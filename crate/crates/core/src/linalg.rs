//! Exact row reduction over Q.
//!
//! Rows are cleared of denominators and stored as primitive integer vectors
//! with a positive pivot, and kept fully reduced (every pivot column is zero
//! in all other rows). Elimination is fraction-free: combining two rows
//! multiplies by pivot entries instead of dividing. The reduced form of a
//! row space is unique, so two spans are equal iff their echelons are.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
struct EchelonRow {
    pivot: usize,
    coeffs: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<EchelonRow>,
}

/// Clears denominators: returns integers `v` and a positive `scale` with
/// `row = v / scale`.
fn to_integral(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let scale = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints = row.iter().map(|r| r.numer() * (&scale / r.denom())).collect();
    (ints, scale)
}

/// Divides out the content and makes the first nonzero entry positive.
fn make_primitive(row: &mut [BigInt]) {
    let content = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if content.is_zero() {
        return;
    }
    let negate = row.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative());
    let divisor = if negate { -content } else { content };
    if !divisor.is_one() {
        for v in row.iter_mut() {
            *v = &*v / &divisor;
        }
    }
}

/// `target <- a * target - b * source`.
fn combine(target: &mut [BigInt], a: &BigInt, b: &BigInt, source: &[BigInt]) {
    for (t, s) in target.iter_mut().zip(source) {
        if s.is_zero() {
            if !a.is_one() {
                *t *= a;
            }
        } else {
            *t = &*t * a - b * s;
        }
    }
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new() }
    }

    pub fn from_rows<'a, I: IntoIterator<Item = &'a [Rational]>>(ncols: usize, rows: I) -> Self {
        let mut ech = Self::new(ncols);
        for row in rows {
            ech.insert(row);
        }
        ech
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.pivot).collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for r in &self.rows {
            is_pivot[r.pivot] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Adds a row to the span. Returns whether the rank grew.
    pub fn insert(&mut self, row: &[Rational]) -> bool {
        assert_eq!(row.len(), self.ncols, "row length");
        let (ints, _) = to_integral(row);
        self.insert_integral(ints)
    }

    pub fn insert_integral(&mut self, mut v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.ncols, "row length");
        if self.is_full() {
            return false;
        }
        for r in &self.rows {
            let entry = &v[r.pivot];
            if entry.is_zero() {
                continue;
            }
            let g = r.coeffs[r.pivot].gcd(entry);
            let a = &r.coeffs[r.pivot] / &g;
            let b = entry / &g;
            combine(&mut v, &a, &b, &r.coeffs);
            make_primitive(&mut v);
        }
        let Some(pivot) = v.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        make_primitive(&mut v);
        for r in &mut self.rows {
            let entry = r.coeffs[pivot].clone();
            if entry.is_zero() {
                continue;
            }
            let g = v[pivot].gcd(&entry);
            let a = &v[pivot] / &g;
            let b = &entry / &g;
            combine(&mut r.coeffs, &a, &b, &v);
            make_primitive(&mut r.coeffs);
        }
        let at = self.rows.partition_point(|r| r.pivot < pivot);
        self.rows.insert(at, EchelonRow { pivot, coeffs: v });
        true
    }

    /// The unique representative of `row` modulo the span: zero in every
    /// pivot column.
    pub fn reduce(&self, row: &[Rational]) -> Vec<Rational> {
        assert_eq!(row.len(), self.ncols, "row length");
        let (mut v, mut scale) = to_integral(row);
        for r in &self.rows {
            let entry = &v[r.pivot];
            if entry.is_zero() {
                continue;
            }
            let g = r.coeffs[r.pivot].gcd(entry);
            let a = &r.coeffs[r.pivot] / &g;
            let b = entry / &g;
            combine(&mut v, &a, &b, &r.coeffs);
            scale *= &a;
        }
        v.into_iter().map(|e| Rational::new(e, scale.clone())).collect()
    }

    pub fn contains(&self, row: &[Rational]) -> bool {
        self.reduce(row).iter().all(Zero::is_zero)
    }

    /// Rows scaled so each pivot entry is 1.
    pub fn rref_rows(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|r| {
                let p = &r.coeffs[r.pivot];
                r.coeffs.iter().map(|e| Rational::new(e.clone(), p.clone())).collect()
            })
            .collect()
    }

    /// Whether every row of `other` lies in this span.
    pub fn contains_span(&self, other: &Echelon) -> bool {
        other.rref_rows().iter().all(|row| self.contains(row))
    }

    /// A basis of `{v : row . v = 0 for every row}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let rref = self.rref_rows();
        self.free_columns()
            .into_iter()
            .map(|free| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[free] = Rational::one();
                for (r, row) in self.rows.iter().zip(&rref) {
                    v[r.pivot] = -row[free].clone();
                }
                v
            })
            .collect()
    }
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    Echelon::from_rows(ncols, rows.iter().map(Vec::as_slice)).rank()
}
