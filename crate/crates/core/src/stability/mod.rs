//! Stability conditions for the m-subspace quiver with dimension vector
//! `(1,…,1; 2)`, normalized so the sink weight is `-1` and the source
//! weights sum to 2.
//!
//! Everything here reduces to comparing subset sums `theta_I` with 1, so
//! the weights are scaled to integers over a common denominator and the
//! `2^m` subsets are enumerated directly (guarded by [`MAX_STABILITY_ARITY`]).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::SubsetIndex;
use crate::rational::{self, display_rational, int, rat, Rational};

/// Subset enumeration is `2^m`; beyond this the calculus refuses to run.
pub const MAX_STABILITY_ARITY: usize = 24;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Stability {
    weights: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// Named stabilities understood by the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Canonical,
    ThetaPlus,
    ThetaMinus,
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "canonical" => Ok(Preset::Canonical),
            "theta-plus" => Ok(Preset::ThetaPlus),
            "theta-minus" => Ok(Preset::ThetaMinus),
            other => Err(Error::UnknownPreset(other.to_string())),
        }
    }
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Canonical => "canonical",
            Preset::ThetaPlus => "theta-plus",
            Preset::ThetaMinus => "theta-minus",
        }
    }

    /// Builds the preset for `m` points; the deformed presets need `m` even.
    pub fn build(self, m: usize, epsilon: Option<Rational>) -> Result<Stability> {
        match self {
            Preset::Canonical => Stability::canonical(m),
            Preset::ThetaPlus | Preset::ThetaMinus => {
                if !m.is_multiple_of(2) {
                    return Err(Error::InvalidStability(format!(
                        "{} needs an even number of points, got m = {m}",
                        self.name()
                    )));
                }
                let sign = if self == Preset::ThetaPlus { Sign::Plus } else { Sign::Minus };
                Stability::theta_pm(m / 2, sign, epsilon)
            }
        }
    }
}

/// `(2n - 1) / (n (n + 1))`: below this the deformed stabilities have the
/// expected forbidden families.
pub fn epsilon_bound(n: usize) -> Rational {
    let n = n as i64;
    rat(2 * n - 1, n * (n + 1))
}

/// Half of [`epsilon_bound`].
pub fn default_epsilon(n: usize) -> Rational {
    epsilon_bound(n) / int(2)
}

/// Integer weights over a common denominator: `theta_I > 1` iff `sum > unit`.
enum Scaled {
    Small { weights: Vec<i128>, unit: i128 },
    Big { weights: Vec<BigInt>, unit: BigInt },
}

impl Scaled {
    fn new(weights: &[Rational]) -> Self {
        let unit = weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let ints: Vec<BigInt> = weights.iter().map(|w| w.numer() * (&unit / w.denom())).collect();
        let small: Option<Vec<i128>> = ints.iter().map(|v| v.to_i64().map(i128::from)).collect();
        match (small, unit.to_i64()) {
            (Some(weights), Some(unit)) => Scaled::Small { weights, unit: unit as i128 },
            _ => Scaled::Big { weights: ints, unit },
        }
    }

    /// `theta_I` compared with 1.
    fn compare(&self, mask: u32) -> Ordering {
        match self {
            Scaled::Small { weights, unit } => {
                let mut sum = 0i128;
                let mut rest = mask;
                while rest != 0 {
                    sum += weights[rest.trailing_zeros() as usize];
                    rest &= rest - 1;
                }
                sum.cmp(unit)
            }
            Scaled::Big { weights, unit } => {
                let mut sum = BigInt::zero();
                let mut rest = mask;
                while rest != 0 {
                    sum += &weights[rest.trailing_zeros() as usize];
                    rest &= rest - 1;
                }
                sum.cmp(unit)
            }
        }
    }
}

impl Stability {
    /// Validates `m` in `3..=24` and `sum theta_i = 2`.
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        let m = weights.len();
        if m < 3 {
            return Err(Error::InvalidStability(format!("need at least 3 points, got {m}")));
        }
        if m > MAX_STABILITY_ARITY {
            return Err(Error::GuardExceeded(format!(
                "m = {m} exceeds the subset-enumeration limit {MAX_STABILITY_ARITY}"
            )));
        }
        let total: Rational = weights.iter().sum();
        if total != int(2) {
            return Err(Error::InvalidStability(format!("weights sum to {}, expected 2", display_rational(&total))));
        }
        Ok(Stability { weights })
    }

    /// `theta^0 = (2/m, …, 2/m; -1)`.
    pub fn canonical(m: usize) -> Result<Self> {
        Self::new(vec![rat(2, m.max(1) as i64); m])
    }

    /// The deformations of the canonical stability for `m = 2n` points:
    /// `theta^+ = (1/n + eps, 1/n - eps/(2n-1), …)` and `theta^-` with the
    /// signs of `eps` flipped.
    pub fn theta_pm(n: usize, sign: Sign, epsilon: Option<Rational>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidStability(format!("deformed stabilities need n >= 2, got {n}")));
        }
        let bound = epsilon_bound(n);
        let eps = epsilon.unwrap_or_else(|| default_epsilon(n));
        let out_of_range = || Error::EpsilonOutOfRange {
            epsilon: rational::format_rational(&eps),
            bound: rational::format_rational(&bound),
        };
        if !eps.is_positive() || eps >= bound {
            return Err(out_of_range());
        }
        let base = rat(1, n as i64);
        if sign == Sign::Minus && eps >= base {
            // the first weight 1/n - eps would leave the open interval (0, 1)
            return Err(Error::EpsilonOutOfRange {
                epsilon: rational::format_rational(&eps),
                bound: rational::format_rational(&base),
            });
        }
        let spread = &eps / int(2 * n as i64 - 1);
        let (first, rest) = match sign {
            Sign::Plus => (&base + &eps, &base - &spread),
            Sign::Minus => (&base - &eps, &base + &spread),
        };
        let mut weights = vec![first];
        weights.extend(std::iter::repeat_n(rest, 2 * n - 1));
        Self::new(weights)
    }

    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// `theta_i`, 1-based.
    pub fn weight(&self, i: usize) -> &Rational {
        &self.weights[i - 1]
    }

    pub fn sink_weight(&self) -> Rational {
        int(-1)
    }

    /// `theta_I = sum_{i in I} theta_i`.
    pub fn theta_of(&self, set: SubsetIndex) -> Rational {
        set.members().map(|i| self.weights[i - 1].clone()).sum()
    }

    /// Non-empty stable locus: `0 < theta_i < 1` for all `i`.
    pub fn is_nontrivial(&self) -> bool {
        let one = Rational::one();
        self.weights.iter().all(|w| w.is_positive() && *w < one)
    }

    fn comparisons(&self) -> Vec<Ordering> {
        let scaled = Scaled::new(&self.weights);
        let count = 1u64 << self.arity();
        (0..count).into_par_iter().map(|mask| scaled.compare(mask as u32)).collect()
    }

    fn proper_masks(&self) -> std::ops::Range<u32> {
        1..(SubsetIndex::full(self.arity()).mask())
    }

    /// `theta_I != 1` for every non-empty proper subset.
    pub fn is_coprime(&self) -> bool {
        let scaled = Scaled::new(&self.weights);
        self.proper_masks().into_par_iter().all(|mask| scaled.compare(mask) != Ordering::Equal)
    }

    /// Whether `deformed` is a deformation of `self`: for every non-empty
    /// proper `I`, `theta_I < 1` implies `theta'_I < 1` and `theta'_I <= 1`
    /// implies `theta_I <= 1`.
    pub fn is_deformation(&self, deformed: &Stability) -> Result<bool> {
        if self.arity() != deformed.arity() {
            return Err(Error::ArityMismatch { left: self.arity(), right: deformed.arity() });
        }
        let base = Scaled::new(&self.weights);
        let other = Scaled::new(&deformed.weights);
        Ok(self.proper_masks().into_par_iter().all(|mask| {
            let (a, b) = (base.compare(mask), other.compare(mask));
            let strict_kept = a != Ordering::Less || b == Ordering::Less;
            let weak_reflected = b == Ordering::Greater || a != Ordering::Greater;
            strict_kept && weak_reflected
        }))
    }

    /// The forbidden subsets (`theta_I > 1`) and their inclusion-minimal members.
    pub fn forbidden(&self) -> ForbiddenFamily {
        let m = self.arity();
        let cmp = self.comparisons();
        let count = cmp.len();
        let forbidden: Vec<bool> = cmp.iter().map(|&o| o == Ordering::Greater).collect();
        // has_forbidden[mask]: some subset of mask (itself included) is forbidden
        let mut has_forbidden = forbidden.clone();
        for mask in 1..count {
            if has_forbidden[mask] {
                continue;
            }
            let mut rest = mask;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                if has_forbidden[mask ^ bit] {
                    has_forbidden[mask] = true;
                    break;
                }
                rest &= rest - 1;
            }
        }
        let mut all = Vec::new();
        let mut minimal = Vec::new();
        for mask in 1..count {
            if !forbidden[mask] {
                continue;
            }
            all.push(SubsetIndex::from_mask(mask as u32));
            let mut rest = mask;
            let mut is_minimal = true;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                if has_forbidden[mask ^ bit] {
                    is_minimal = false;
                    break;
                }
                rest &= rest - 1;
            }
            if is_minimal {
                minimal.push(SubsetIndex::from_mask(mask as u32));
            }
        }
        ForbiddenFamily::new(m, all, minimal)
    }
}

pub fn is_nontrivial(theta: &Stability) -> bool {
    theta.is_nontrivial()
}

pub fn is_coprime(theta: &Stability) -> bool {
    theta.is_coprime()
}

pub fn is_deformation(theta: &Stability, deformed: &Stability) -> Result<bool> {
    theta.is_deformation(deformed)
}

pub fn forbidden(theta: &Stability) -> ForbiddenFamily {
    theta.forbidden()
}

/// Forbidden subsets sorted by size, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenFamily {
    m: usize,
    all: Vec<SubsetIndex>,
    minimal: Vec<SubsetIndex>,
}

fn size_then_lex(a: &SubsetIndex, b: &SubsetIndex) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl ForbiddenFamily {
    pub fn new(m: usize, mut all: Vec<SubsetIndex>, mut minimal: Vec<SubsetIndex>) -> Self {
        all.sort_by(size_then_lex);
        minimal.sort_by(size_then_lex);
        ForbiddenFamily { m, all, minimal }
    }

    pub fn arity(&self) -> usize {
        self.m
    }

    pub fn all(&self) -> &[SubsetIndex] {
        &self.all
    }

    pub fn minimal(&self) -> &[SubsetIndex] {
        &self.minimal
    }

    pub fn contains(&self, set: SubsetIndex) -> bool {
        self.all.binary_search_by(|probe| size_then_lex(probe, &set)).is_ok()
    }
}

impl fmt::Debug for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(display_rational).collect();
        write!(f, "({}; -1)", parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct StabilityWire {
    m: usize,
    #[serde(with = "rational::vec_as_string")]
    weights: Vec<Rational>,
}

impl Serialize for Stability {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        StabilityWire { m: self.arity(), weights: self.weights.clone() }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Stability {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = StabilityWire::deserialize(de)?;
        if wire.m != wire.weights.len() {
            return Err(D::Error::custom(format!("m = {} but {} weights given", wire.m, wire.weights.len())));
        }
        Stability::new(wire.weights).map_err(D::Error::custom)
    }
}

/// Parses comma-separated inline weights such as `1/2,3/10,3/10,3/10,3/10,3/10`.
pub fn parse_inline_weights(text: &str) -> Result<Stability> {
    let weights = text.split(',').map(rational::parse_rational).collect::<Result<Vec<_>>>()?;
    Stability::new(weights)
}

#[cfg(test)]
mod tests;
