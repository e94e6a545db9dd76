use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use super::symbolic::SymbolicElement;
use super::{BElement, LinearForm};
use crate::chow::{ChowElement, ChowMonomial};
use crate::error::{Error, Result};
use crate::exactpoly::{MultiPoly, SubsetIndex};
use crate::presentation::{Ambient, GeneratorSet, QuotientRing};
use crate::rational::{self, Rational};
use crate::stability::{Sign, Stability};

/// Largest arity for which symbolic expansions are attempted (`n <= 4`).
pub const SYMBOLIC_ARITY_GUARD: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionPath {
    ClosedForm,
    LinearAlgebra,
}

/// `B^theta = A^theta/(Y)`, with graded pieces cached up to a fixed degree.
///
/// For the two deformations of the symmetric stability at `m = 2n`, degree
/// `n - 1` reduces by explicit rewrite rules onto the monomials `X_J` with
/// `1 in J`; everything else goes through the cached linear algebra.
#[derive(Clone, Debug)]
pub struct BRing {
    preset: Option<(Sign, usize)>,
    quotient: QuotientRing,
}

impl BRing {
    pub fn new(theta: &Stability, max_degree: usize) -> Result<Self> {
        let quotient = QuotientRing::build_with(theta, max_degree, GeneratorSet::Minimal, Ambient::ModY)?;
        Ok(BRing { preset: detect_preset(theta)?, quotient })
    }

    pub fn theta(&self) -> &Stability {
        self.quotient.theta()
    }

    pub fn arity(&self) -> usize {
        self.quotient.arity()
    }

    pub fn max_degree(&self) -> usize {
        self.quotient.max_degree()
    }

    pub fn quotient(&self) -> &QuotientRing {
        &self.quotient
    }

    /// Which deformation this is, with `n`, when its forbidden family is
    /// that of one of the two presets.
    pub fn closed_form(&self) -> Option<(Sign, usize)> {
        self.preset
    }

    pub fn notice(&self) -> Option<String> {
        match self.preset {
            Some(_) => None,
            None => Some("no closed-form rules for this stability; reducing by linear algebra".into()),
        }
    }

    pub fn path(&self, degree: usize) -> ReductionPath {
        match self.preset {
            Some((_, n)) if degree < n => ReductionPath::ClosedForm,
            _ => ReductionPath::LinearAlgebra,
        }
    }

    pub fn reduce(&self, a: &ChowElement) -> Result<BElement> {
        let m = self.arity();
        if a.arity() != m {
            return Err(Error::ArityMismatch { left: m, right: a.arity() });
        }
        let a = BElement::new(a.clone())?.into_element();
        let mut out = ChowElement::zero(m);
        for (degree, part) in a.homogeneous_parts() {
            let reduced = match (self.path(degree), self.preset) {
                (ReductionPath::ClosedForm, Some((sign, n))) if degree + 1 == n => rewrite_top(sign, &part),
                (ReductionPath::ClosedForm, _) => part,
                (ReductionPath::LinearAlgebra, _) => self.quotient.normal_form(&part)?,
            };
            out = &out + &reduced;
        }
        Ok(BElement(out))
    }

    pub fn reduce_symbolic(&self, a: &SymbolicElement) -> Result<SymbolicElement> {
        let m = self.arity();
        a.mod_y().map_linear(|mon| {
            let basis = ChowElement::monomial(m, mon, Rational::one());
            self.reduce(&basis).map(BElement::into_element)
        })
    }

    /// Reduced `a^k`.
    pub fn power(&self, a: &LinearForm, k: u32) -> Result<BElement> {
        let m = self.arity();
        if a.arity() != m {
            return Err(Error::ArityMismatch { left: m, right: a.arity() });
        }
        let base = a.to_element();
        let mut acc = ChowElement::one(m);
        for _ in 0..k {
            acc = (&acc * &base).mod_y();
        }
        self.reduce(&acc)
    }

    /// Reduced `a^k` for the generic `a = sum_i a_i X_i`.
    pub fn symbolic_power(&self, k: u32) -> Result<SymbolicElement> {
        self.check_symbolic_guard()?;
        self.reduce_symbolic(&SymbolicElement::generic_linear(self.arity()).pow_mod_y(k))
    }

    /// Whether `a^k` vanishes identically on the hyperplane `lambda . a = 0`,
    /// decided by eliminating one coordinate and expanding symbolically.
    pub fn hyperplane_power_test(&self, lambda: &LinearForm, k: u32) -> Result<bool> {
        let restricted = self.restricted_generic(lambda)?;
        let power = restricted.pow_mod_y(k);
        Ok(self.reduce_symbolic(&power)?.is_zero())
    }

    /// Sampling version of [`hyperplane_power_test`](Self::hyperplane_power_test):
    /// true iff `a^k` vanished at every sampled point of the hyperplane.
    pub fn sampled_hyperplane_test<R: Rng + ?Sized>(
        &self,
        lambda: &LinearForm,
        k: u32,
        samples: usize,
        rng: &mut R,
    ) -> Result<bool> {
        let m = self.arity();
        let pivot = hyperplane_pivot(lambda, m)?;
        for _ in 0..samples {
            let mut point: Vec<Rational> = (0..m).map(|_| random_rational(rng)).collect();
            let rest: Rational = (1..=m).filter(|&i| i != pivot).map(|i| lambda.coefficient(i) * &point[i - 1]).sum();
            point[pivot - 1] = -rest / lambda.coefficient(pivot);
            if !self.power(&LinearForm::new(point), k)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_symbolic_guard(&self) -> Result<()> {
        check_symbolic_guard(self.arity())
    }

    fn restricted_generic(&self, lambda: &LinearForm) -> Result<SymbolicElement> {
        self.check_symbolic_guard()?;
        let m = self.arity();
        let pivot = hyperplane_pivot(lambda, m)?;
        let scale = -lambda.coefficient(pivot).recip();
        let value = (1..=m).filter(|&i| i != pivot).fold(MultiPoly::zero(m), |acc, i| {
            &acc + &MultiPoly::var(m, i - 1).scale(&(lambda.coefficient(i) * &scale))
        });
        Ok(SymbolicElement::generic_linear(m).substitute(pivot, &value))
    }
}

fn hyperplane_pivot(lambda: &LinearForm, m: usize) -> Result<usize> {
    if lambda.arity() != m {
        return Err(Error::ArityMismatch { left: m, right: lambda.arity() });
    }
    (1..=m)
        .find(|&i| !lambda.coefficient(i).is_zero())
        .ok_or_else(|| Error::InvalidInput("hyperplane normal must be nonzero".into()))
}

fn detect_preset(theta: &Stability) -> Result<Option<(Sign, usize)>> {
    let m = theta.arity();
    if m % 2 == 1 {
        return Ok(None);
    }
    let n = m / 2;
    let family = theta.forbidden();
    for sign in [Sign::Plus, Sign::Minus] {
        let preset = Stability::theta_pm(n, sign, None)?;
        if preset.forbidden().minimal() == family.minimal() {
            return Ok(Some((sign, n)));
        }
    }
    Ok(None)
}

/// Degree `n - 1` rewrite: monomials avoiding `1` vanish in `B^-`, and in
/// `B^+` become `-X_1 sum_{j in J} X_{J - j}`.
fn rewrite_top(sign: Sign, part: &ChowElement) -> ChowElement {
    let m = part.arity();
    let mut out = ChowElement::zero(m);
    for (mon, c) in part.terms() {
        if mon.set.contains(1) {
            out.add_term(*mon, c.clone());
        } else if sign == Sign::Plus {
            for j in mon.set.members() {
                out.add_term(ChowMonomial::new(mon.set.without(j).with(1), 0), -c.clone());
            }
        }
    }
    out
}

/// Reduce `a` in `B^theta`.
pub fn b_reduce(theta: &Stability, a: &ChowElement) -> Result<BElement> {
    BRing::new(theta, a.max_degree().unwrap_or(0))?.reduce(a)
}

/// Reduced `a^k` in `B^theta`.
pub fn power_in_b(theta: &Stability, a: &LinearForm, k: u32) -> Result<BElement> {
    BRing::new(theta, k as usize)?.power(a, k)
}

fn check_symbolic_guard(m: usize) -> Result<()> {
    if m > SYMBOLIC_ARITY_GUARD {
        return Err(Error::GuardExceeded(format!(
            "symbolic expansion limited to m <= {SYMBOLIC_ARITY_GUARD}; use the sampling test"
        )));
    }
    Ok(())
}

pub fn hyperplane_power_test(theta: &Stability, lambda: &LinearForm, k: u32) -> Result<bool> {
    check_symbolic_guard(theta.arity())?;
    BRing::new(theta, k as usize)?.hyperplane_power_test(lambda, k)
}

pub fn sampled_hyperplane_test<R: Rng + ?Sized>(
    theta: &Stability,
    lambda: &LinearForm,
    k: u32,
    samples: usize,
    rng: &mut R,
) -> Result<bool> {
    BRing::new(theta, k as usize)?.sampled_hyperplane_test(lambda, k, samples, rng)
}

/// `a^{n-1}` in `B^±` from the explicit expansion: in `B^-` the coefficient
/// of `X_1 X_K` is `(n-1)! a_1 a_K`, in `B^+` it is
/// `(n-1)! a_K (a_1 - sum_{j in {2..2n} - K} a_j)`.
pub fn closed_form_power(sign: Sign, a: &LinearForm) -> Result<BElement> {
    let m = a.arity();
    if m < 4 || m % 2 == 1 {
        return Err(Error::InvalidInput(format!("closed-form expansion needs m = 2n >= 4, got {m}")));
    }
    let n = m / 2;
    let factorial: Rational = (1..n as i64).map(rational::int).product();
    let tail = SubsetIndex::full(m).without(1);
    let mut out = ChowElement::zero(m);
    for k_set in tail.subsets_of_size(n - 2) {
        let a_k: Rational = k_set.members().map(|i| a.coefficient(i).clone()).product();
        let second = match sign {
            Sign::Minus => a.coefficient(1).clone(),
            Sign::Plus => {
                let rest: Rational =
                    tail.members().filter(|&j| !k_set.contains(j)).map(|j| a.coefficient(j).clone()).sum();
                a.coefficient(1) - rest
            }
        };
        out.add_term(ChowMonomial::new(k_set.with(1), 0), &factorial * &a_k * second);
    }
    Ok(BElement(out))
}

/// The linear factors of the `X_1 X_K` coefficient of `a^{n-1}` in `B^+`
/// with `K = {2..n-1}`: the coordinates `a_k` (`k in K`) and
/// `a_1 - sum_{j >= n} a_j`. A hyperplane on which `a^{n-1}` vanishes
/// must be cut out by one of them.
pub fn plus_factor_candidates(n: usize) -> (ChowMonomial, Vec<LinearForm>) {
    let m = 2 * n;
    let k_set = SubsetIndex::new(2..n).expect("within range");
    let mut out: Vec<LinearForm> = k_set.members().map(|k| LinearForm::unit(m, k)).collect();
    let mut last = vec![Rational::zero(); m];
    last[0] = Rational::one();
    for slot in last.iter_mut().skip(n - 1) {
        *slot = -Rational::one();
    }
    out.push(LinearForm::new(last));
    (ChowMonomial::new(k_set.with(1), 0), out)
}

/// Nonzero `p/q` with `|p| <= 20`, `1 <= q <= 7`.
pub(crate) fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-20..=20);
        if p != 0 {
            return rational::rat(p, rng.gen_range(1..=7));
        }
    }
}
