//! Graded automorphisms of `A = Q[X_1..X_m, Y]/(X_i^2 - Y)`.
//!
//! A graded automorphism is determined by an invertible matrix `A` acting
//! on degree 1 via `X_j -> sum_i a_ij X_i`. It descends to `A` exactly when
//! all columns have the same squared length and, for each pair of rows,
//! the products `a_{i1 j} a_{i2 j}` do not depend on `j`. For `m > 2` such
//! matrices are dilations times signed permutations.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::chow::{ChowElement, ChowMonomial};
use crate::error::{Error, Result};
use crate::exactpoly::SubsetIndex;
use crate::linalg;
use crate::rational::{self, display_rational, Rational};

/// `X_i -> d * signs_i * X_{sigma(i)}`, `Y -> d^2 Y`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedScaledPermutation {
    #[serde(with = "rational::as_string")]
    dilation: Rational,
    sigma: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedScaledPermutation {
    /// `sigma` lists the 1-based images of `1..=m`.
    pub fn new(dilation: Rational, sigma: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let m = sigma.len();
        if dilation.is_zero() {
            return Err(Error::InvalidInput("dilation must be nonzero".into()));
        }
        if signs.len() != m {
            return Err(Error::ArityMismatch { left: m, right: signs.len() });
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidInput("signs must be +1 or -1".into()));
        }
        let mut seen = vec![false; m];
        for &image in &sigma {
            if image == 0 || image > m || std::mem::replace(&mut seen[image - 1], true) {
                return Err(Error::InvalidInput(format!("{sigma:?} is not a permutation of 1..={m}")));
            }
        }
        Ok(SignedScaledPermutation { dilation, sigma, signs })
    }

    pub fn identity(m: usize) -> Self {
        SignedScaledPermutation { dilation: Rational::one(), sigma: (1..=m).collect(), signs: vec![1; m] }
    }

    /// The dilation `m_d`.
    pub fn scaling(m: usize, dilation: Rational) -> Result<Self> {
        Self::new(dilation, (1..=m).collect(), vec![1; m])
    }

    /// The relabeling `pi_sigma`.
    pub fn permutation(sigma: Vec<usize>) -> Result<Self> {
        let m = sigma.len();
        Self::new(Rational::one(), sigma, vec![1; m])
    }

    /// The sign change `tau_i`, 1-based.
    pub fn sign_flip(m: usize, i: usize) -> Result<Self> {
        if i == 0 || i > m {
            return Err(Error::InvalidInput(format!("index {i} outside 1..={m}")));
        }
        let mut signs = vec![1; m];
        signs[i - 1] = -1;
        Self::new(Rational::one(), (1..=m).collect(), signs)
    }

    pub fn arity(&self) -> usize {
        self.sigma.len()
    }

    pub fn dilation(&self) -> &Rational {
        &self.dilation
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Image of `X_J Y^k`.
    pub fn apply_monomial(&self, mon: ChowMonomial) -> (ChowMonomial, Rational) {
        let flips = mon.set.members().filter(|&i| self.signs[i - 1] < 0).count();
        let mut scale = num_traits::pow(self.dilation.clone(), mon.degree());
        if flips % 2 == 1 {
            scale = -scale;
        }
        (ChowMonomial::new(mon.set.permuted(&self.sigma), mon.k), scale)
    }

    pub fn apply(&self, el: &ChowElement) -> Result<ChowElement> {
        if el.arity() != self.arity() {
            return Err(Error::ArityMismatch { left: self.arity(), right: el.arity() });
        }
        Ok(ChowElement::from_terms(
            el.arity(),
            el.terms().iter().map(|(mon, c)| {
                let (image, scale) = self.apply_monomial(*mon);
                (image, scale * c)
            }),
        ))
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &SignedScaledPermutation) -> Result<Self> {
        if self.arity() != first.arity() {
            return Err(Error::ArityMismatch { left: self.arity(), right: first.arity() });
        }
        let sigma: Vec<usize> = first.sigma.iter().map(|&j| self.sigma[j - 1]).collect();
        let signs: Vec<i8> = (0..self.arity()).map(|i| first.signs[i] * self.signs[first.sigma[i] - 1]).collect();
        Self::new(&self.dilation * &first.dilation, sigma, signs)
    }

    /// The matrix with `a_{sigma(j), j} = d * signs_j`.
    pub fn matrix(&self) -> CandidateMatrix {
        let m = self.arity();
        let mut entries = vec![vec![Rational::zero(); m]; m];
        for j in 0..m {
            let value = if self.signs[j] < 0 { -self.dilation.clone() } else { self.dilation.clone() };
            entries[self.sigma[j] - 1][j] = value;
        }
        CandidateMatrix { entries }
    }
}

impl fmt::Debug for SignedScaledPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={} sigma={:?} signs={:?}", display_rational(&self.dilation), self.sigma, self.signs)
    }
}

/// Square rational matrix acting by `X_j -> sum_i a_ij X_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct CandidateMatrix {
    entries: Vec<Vec<Rational>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixWire {
    Rows(Vec<Vec<String>>),
    Tagged { entries: Vec<Vec<String>> },
}

impl CandidateMatrix {
    /// `rows[i][j] = a_{i+1, j+1}`.
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::InvalidInput("empty matrix".into()));
        }
        if let Some(row) = rows.iter().find(|row| row.len() != m) {
            return Err(Error::ArityMismatch { left: m, right: row.len() });
        }
        Ok(CandidateMatrix { entries: rows })
    }

    pub fn identity(m: usize) -> Self {
        SignedScaledPermutation::identity(m).matrix()
    }

    /// Accepts `[["1","0"],["0","1"]]` or `{"entries": [...]}` with `"p/q"` strings.
    pub fn from_json(text: &str) -> Result<Self> {
        let wire: MatrixWire = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        let rows = match wire {
            MatrixWire::Rows(rows) | MatrixWire::Tagged { entries: rows } => rows,
        };
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|s| rational::parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn is_invertible(&self) -> bool {
        linalg::rank(&self.entries, self.size()) == self.size()
    }

    /// `sum_i a_ij X_i` for 1-based `j`.
    pub fn image_of_generator(&self, j: usize) -> ChowElement {
        let column: Vec<Rational> = self.entries.iter().map(|row| row[j - 1].clone()).collect();
        ChowElement::linear(&column)
    }

    /// Conditions (a) and (b) on all pairs of columns and rows.
    pub fn check_conditions(&self) -> Result<bool> {
        if !self.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        let m = self.size();
        let a = &self.entries;
        let norm = |j: usize| -> Rational { (0..m).map(|i| &a[i][j] * &a[i][j]).sum() };
        let first_norm = norm(0);
        if (1..m).any(|j| norm(j) != first_norm) {
            return Ok(false);
        }
        for i1 in 0..m {
            for i2 in i1 + 1..m {
                let first = &a[i1][0] * &a[i2][0];
                if (1..m).any(|j| &a[i1][j] * &a[i2][j] != first) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether `phi(X_j1)^2 = phi(X_j2)^2` holds in `A` for every pair,
    /// computed by multiplying the images in the ring.
    pub fn preserves_relations_directly(&self) -> Result<bool> {
        if !self.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        let squares: Vec<ChowElement> = (1..=self.size())
            .map(|j| {
                let image = self.image_of_generator(j);
                &image * &image
            })
            .collect();
        Ok(squares.windows(2).all(|pair| pair[0] == pair[1]))
    }

    /// Ring map `A -> A` induced by the matrix; only meaningful when
    /// [`check_conditions`](Self::check_conditions) holds.
    pub fn apply(&self, el: &ChowElement) -> Result<ChowElement> {
        let m = self.size();
        if el.arity() != m {
            return Err(Error::ArityMismatch { left: m, right: el.arity() });
        }
        let images: Vec<ChowElement> = (1..=m).map(|j| self.image_of_generator(j)).collect();
        let y_image = &images[0] * &images[0];
        let mut out = ChowElement::zero(m);
        for (mon, c) in el.terms() {
            let mut term = ChowElement::constant(m, c.clone());
            for i in mon.set.members() {
                term = &term * &images[i - 1];
            }
            term = &term * &y_image.pow(mon.k);
            out = &out + &term;
        }
        Ok(out)
    }
}

impl fmt::Debug for CandidateMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            self.entries.iter().map(|row| row.iter().map(display_rational).collect()).collect();
        write!(f, "{rows:?}")
    }
}

impl Serialize for CandidateMatrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            self.entries.iter().map(|row| row.iter().map(rational::format_rational).collect()).collect();
        rows.serialize(ser)
    }
}

pub fn check_conditions(matrix: &CandidateMatrix) -> Result<bool> {
    matrix.check_conditions()
}

/// Factor an automorphism matrix as dilation (positive) times signs times
/// permutation. `Ok(None)` means the matrix does not induce an automorphism.
pub fn decompose(matrix: &CandidateMatrix) -> Result<Option<SignedScaledPermutation>> {
    let m = matrix.size();
    if m <= 2 {
        return Err(Error::ArityTooSmall(m));
    }
    if !matrix.check_conditions()? {
        return Ok(None);
    }
    let mut sigma = Vec::with_capacity(m);
    let mut signs = Vec::with_capacity(m);
    let mut dilation: Option<Rational> = None;
    for j in 0..m {
        let mut nonzero = (0..m).filter(|&i| !matrix.entries[i][j].is_zero());
        let (Some(i), None) = (nonzero.next(), nonzero.next()) else {
            return Ok(None);
        };
        let entry = &matrix.entries[i][j];
        let magnitude = entry.abs();
        match &dilation {
            Some(d) if *d != magnitude => return Ok(None),
            _ => dilation = Some(magnitude),
        }
        sigma.push(i + 1);
        signs.push(if entry.is_negative() { -1 } else { 1 });
    }
    let g = SignedScaledPermutation::new(dilation.expect("m > 2"), sigma, signs)?;
    Ok(Some(g))
}

/// All `2^m m!` signed permutations with the given dilation.
pub fn signed_permutations(m: usize, dilation: &Rational) -> Vec<SignedScaledPermutation> {
    let mut out = Vec::new();
    for sigma in permutations(m) {
        for mask in SubsetIndex::full(m).all_subsets() {
            let signs = (1..=m).map(|i| if mask.contains(i) { -1 } else { 1 }).collect();
            out.push(
                SignedScaledPermutation::new(dilation.clone(), sigma.clone(), signs).expect("valid by construction"),
            );
        }
    }
    out
}

/// Permutations of `1..=m` in lexicographic order.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (1..=m).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(pivot) = (1..m).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let swap = (pivot..m).rev().find(|&j| current[j] > current[pivot - 1]).expect("pivot has a successor");
        current.swap(pivot - 1, swap);
        current[pivot..].reverse();
        out.push(current.clone());
    }
}

/// A dense matrix with entries `p/q`, `p` in `[-9, 9] \ {0}`, `q` in `[1, 4]`.
pub fn random_dense_matrix<R: Rng + ?Sized>(m: usize, rng: &mut R) -> CandidateMatrix {
    let rows = (0..m)
        .map(|_| {
            (0..m)
                .map(|_| {
                    let p = loop {
                        let p: i64 = rng.gen_range(-9..=9);
                        if p != 0 {
                            break p;
                        }
                    };
                    rational::rat(p, rng.gen_range(1..=4))
                })
                .collect()
        })
        .collect();
    CandidateMatrix { entries: rows }
}
