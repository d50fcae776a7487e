//! The character ring `ℤ[X(T)]` and Demazure operators on it.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_integer::Integer;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};
use crate::weyl::ReducedWord;

/// A finitely supported `ℤ`-combination of weights. Zero multiplicities are
/// never stored, so structural equality is equality in the ring.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FormalCharacter {
    terms: BTreeMap<Weight, i64>,
}

impl FormalCharacter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(lambda: Weight) -> Self {
        let mut f = Self::new();
        f.add_term(lambda, 1);
        f
    }

    /// Each listed weight with multiplicity one per occurrence.
    pub fn from_weights<I: IntoIterator<Item = Weight>>(weights: I) -> Self {
        let mut f = Self::new();
        for w in weights {
            f.add_term(w, 1);
        }
        f
    }

    pub fn from_terms<I: IntoIterator<Item = (Weight, i64)>>(terms: I) -> Self {
        let mut f = Self::new();
        for (w, m) in terms {
            f.add_term(w, m);
        }
        f
    }

    pub fn add_term(&mut self, lambda: Weight, mult: i64) {
        if mult == 0 {
            return;
        }
        match self.terms.entry(lambda) {
            btree_map::Entry::Vacant(e) => {
                e.insert(mult);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += mult;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn mult(&self, lambda: &Weight) -> i64 {
        self.terms.get(lambda).copied().unwrap_or(0)
    }

    /// Terms in canonical (lexicographic) weight order.
    pub fn iter(&self) -> impl Iterator<Item = (&Weight, i64)> + '_ {
        self.terms.iter().map(|(w, &m)| (w, m))
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> + '_ {
        self.terms.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct weights.
    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&m| m > 0)
    }

    /// Total multiplicity, defined only when every multiplicity is positive.
    pub fn dimension(&self) -> Option<u64> {
        self.is_nonnegative()
            .then(|| self.terms.values().map(|&m| m as u64).sum())
    }

    /// `Σ multiplicities`, the virtual dimension.
    pub fn signed_dimension(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn require_nonnegative(&self) -> Result<()> {
        match self.terms.iter().find(|(_, &m)| m < 0) {
            None => Ok(()),
            Some((w, &m)) => Err(Error::NegativeMultiplicity {
                weight: w.to_string(),
                mult: m,
            }),
        }
    }

    pub fn map_weights(&self, mut f: impl FnMut(&Weight) -> Weight) -> FormalCharacter {
        FormalCharacter::from_terms(self.iter().map(|(w, m)| (f(w), m)))
    }

    /// Applies `sᵢ` to every weight.
    pub fn reflect(&self, rs: &RootSystem, i: usize) -> FormalCharacter {
        self.map_weights(|w| rs.reflect(w, i))
    }

    pub fn is_reflection_invariant(&self, rs: &RootSystem) -> bool {
        (0..rs.rank()).all(|i| self.reflect(rs, i) == *self)
    }

    /// `self ≤ other` term-wise.
    pub fn is_submultiset_of(&self, other: &FormalCharacter) -> bool {
        self.iter().all(|(w, m)| m <= other.mult(w))
    }

    /// Positive part of `self − other`: what `self` has in excess of `other`.
    pub fn excess_over(&self, other: &FormalCharacter) -> FormalCharacter {
        FormalCharacter::from_terms(
            self.iter()
                .map(|(w, m)| (w.clone(), (m - other.mult(w)).max(0))),
        )
    }

    /// Term-wise minimum.
    pub fn meet(&self, other: &FormalCharacter) -> FormalCharacter {
        FormalCharacter::from_terms(self.iter().map(|(w, m)| (w.clone(), m.min(other.mult(w)))))
    }

    pub fn shares_weight_with(&self, other: &FormalCharacter) -> bool {
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.terms.keys().any(|w| big.terms.contains_key(w))
    }
}

impl fmt::Display for FormalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, m)) in self.iter().enumerate() {
            match (k, m) {
                (0, 1) => write!(f, "e{w}")?,
                (0, -1) => write!(f, "-e{w}")?,
                (0, m) => write!(f, "{m}e{w}")?,
                (_, 1) => write!(f, " + e{w}")?,
                (_, -1) => write!(f, " - e{w}")?,
                (_, m) if m < 0 => write!(f, " - {}e{w}", -m)?,
                (_, m) => write!(f, " + {m}e{w}")?,
            }
        }
        Ok(())
    }
}

impl FromIterator<Weight> for FormalCharacter {
    fn from_iter<I: IntoIterator<Item = Weight>>(iter: I) -> Self {
        FormalCharacter::from_weights(iter)
    }
}

impl AddAssign<&FormalCharacter> for FormalCharacter {
    fn add_assign(&mut self, rhs: &FormalCharacter) {
        for (w, m) in rhs.iter() {
            self.add_term(w.clone(), m);
        }
    }
}

impl SubAssign<&FormalCharacter> for FormalCharacter {
    fn sub_assign(&mut self, rhs: &FormalCharacter) {
        for (w, m) in rhs.iter() {
            self.add_term(w.clone(), -m);
        }
    }
}

impl Add<&FormalCharacter> for &FormalCharacter {
    type Output = FormalCharacter;
    fn add(self, rhs: &FormalCharacter) -> FormalCharacter {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&FormalCharacter> for &FormalCharacter {
    type Output = FormalCharacter;
    fn sub(self, rhs: &FormalCharacter) -> FormalCharacter {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &FormalCharacter {
    type Output = FormalCharacter;
    fn neg(self) -> FormalCharacter {
        FormalCharacter::from_terms(self.iter().map(|(w, m)| (w.clone(), -m)))
    }
}

#[derive(Serialize, Deserialize)]
struct Term {
    weight: Weight,
    mult: i64,
}

impl Serialize for FormalCharacter {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (weight, &mult) in &self.terms {
            seq.serialize_element(&Term {
                weight: weight.clone(),
                mult,
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for FormalCharacter {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<Term>::deserialize(deserializer)?;
        Ok(FormalCharacter::from_terms(
            terms.into_iter().map(|t| (t.weight, t.mult)),
        ))
    }
}

/// `Dᵢ(e^λ)` accumulated into `out` with multiplicity `mult`.
fn demazure_term(rs: &RootSystem, lambda: &Weight, mult: i64, i: usize, out: &mut FormalCharacter) {
    let alpha = rs.simple_root(i);
    let n = lambda.coord(i);
    if n >= 0 {
        for k in 0..=n {
            out.add_term(lambda.add_scaled(alpha, -k), mult);
        }
    } else {
        for k in 1..=(-n - 1) {
            out.add_term(lambda.add_scaled(alpha, k), -mult);
        }
    }
}

/// The Demazure operator `Dᵢ`, extended linearly:
/// `e^λ ↦ e^λ + e^{λ−α} + … + e^{sᵢλ}` when `⟨λ,αᵢ∨⟩ ≥ 0`, zero when the
/// pairing is `−1`, and `−(e^{λ+α} + … + e^{sᵢλ−α})` when it is `≤ −2`.
pub fn demazure_op(rs: &RootSystem, f: &FormalCharacter, i: usize) -> FormalCharacter {
    let mut out = FormalCharacter::new();
    for (w, m) in f.iter() {
        demazure_term(rs, w, m, i, &mut out);
    }
    out
}

/// `D_{i₁} ∘ … ∘ D_{i_r} (e^λ)`: the Euler characteristic of the line bundle
/// `λ` on the Bott–Samelson variety of `word`.
pub fn demazure_char(rs: &RootSystem, word: &ReducedWord, lambda: &Weight) -> FormalCharacter {
    demazure_apply(rs, word, FormalCharacter::singleton(lambda.clone()))
}

/// `D_{i₁} ∘ … ∘ D_{i_r}` applied to an arbitrary character.
pub fn demazure_apply(rs: &RootSystem, word: &ReducedWord, f: FormalCharacter) -> FormalCharacter {
    word.letters()
        .iter()
        .rev()
        .fold(f, |acc, &i| demazure_op(rs, &acc, i))
}

/// Character of the irreducible module `V(λ)`, via the Demazure operator of `w₀`.
pub fn weyl_character(rs: &RootSystem, lambda: &Weight) -> Result<FormalCharacter> {
    rs.check_weight(lambda)?;
    if !lambda.dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    Ok(demazure_char(rs, &rs.longest_word(), lambda))
}

/// `dim V(λ) = Π_{β>0} ⟨λ+ρ, β∨⟩ / ⟨ρ, β∨⟩`.
pub fn weyl_dim(rs: &RootSystem, lambda: &Weight) -> Result<u128> {
    rs.check_weight(lambda)?;
    if !lambda.dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let shifted = lambda + rs.rho();
    let (mut num, mut den) = (1u128, 1u128);
    for b in rs.positive_roots() {
        let p = rs.pairing(&shifted, b) as u128;
        let q = rs.pairing(rs.rho(), b) as u128;
        let g0 = p.gcd(&q);
        let (p, q) = (p / g0, q / g0);
        let g = p.gcd(&den);
        let (p, den_r) = (p / g, den / g);
        let g2 = num.gcd(&q);
        let (num_r, q) = (num / g2, q / g2);
        num = num_r
            .checked_mul(p)
            .ok_or(Error::Overflow("Weyl dimension"))?;
        den = den_r
            .checked_mul(q)
            .ok_or(Error::Overflow("Weyl dimension"))?;
    }
    debug_assert_eq!(den, 1);
    Ok(num / den)
}
