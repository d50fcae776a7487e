//! Graded cohomology: `Hʲ(w, λ)` and `Hʲ(w, V)` on Bott–Samelson varieties
//! by right-to-left string recursion, and Borel–Weil–Bott on `G/B`.

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::charring::{weyl_character, FormalCharacter};
use crate::error::Result;
use crate::rootsys::{RootSystem, Weight};
use crate::strings::{decompose, sl2_cohomology, DecomposeMode};
use crate::weyl::ReducedWord;

pub type Graded = BTreeMap<usize, FormalCharacter>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Exact,
    /// The true answer lies between `lower` and `upper` degree-wise; both
    /// have the same Euler characteristic.
    Bounds {
        lower: Graded,
        upper: Graded,
        reasons: Vec<String>,
    },
}

/// A degree-indexed family of nonnegative characters.
///
/// For `Bounds` results `by_degree` holds the upper bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCharacter {
    by_degree: Graded,
    status: Status,
}

fn prune(g: Graded) -> Graded {
    g.into_iter().filter(|(_, f)| !f.is_zero()).collect()
}

fn graded_euler(g: &Graded) -> FormalCharacter {
    let mut e = FormalCharacter::new();
    for (&d, f) in g {
        if d % 2 == 0 {
            e += f;
        } else {
            e -= f;
        }
    }
    e
}

/// Cancels as much as possible between adjacent degrees, weight by weight,
/// sweeping upward from degree 0.
pub fn max_cancellation(upper: &Graded) -> Graded {
    let Some(&top) = upper.keys().next_back() else {
        return Graded::new();
    };
    let empty = FormalCharacter::new();
    let mut lower = Graded::new();
    let mut carry = FormalCharacter::new();
    for d in 0..=top {
        let here = upper.get(&d).unwrap_or(&empty);
        let x = &here.clone() - &carry;
        let next = upper.get(&(d + 1)).unwrap_or(&empty);
        let k = x.meet(next);
        lower.insert(d, &x - &k);
        carry = k;
    }
    prune(lower)
}

impl GradedCharacter {
    pub fn exact(by_degree: Graded) -> Self {
        GradedCharacter {
            by_degree: prune(by_degree),
            status: Status::Exact,
        }
    }

    pub fn zero() -> Self {
        Self::exact(Graded::new())
    }

    pub fn bounds(lower: Graded, upper: Graded, reasons: Vec<String>) -> Self {
        let (lower, upper) = (prune(lower), prune(upper));
        debug_assert_eq!(graded_euler(&lower), graded_euler(&upper));
        GradedCharacter {
            by_degree: upper.clone(),
            status: Status::Bounds {
                lower,
                upper,
                reasons,
            },
        }
    }

    pub fn status(&self) -> &Status {
        &self.status
    }

    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }

    pub fn by_degree(&self) -> &Graded {
        &self.by_degree
    }

    pub fn degree(&self, j: usize) -> FormalCharacter {
        self.by_degree.get(&j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.by_degree.is_empty()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.by_degree.keys().next_back().copied()
    }

    /// `Hʲ = 0` for all `j ≥ 1`.
    pub fn higher_vanish(&self) -> bool {
        self.by_degree.keys().all(|&d| d == 0)
    }

    /// `Σ (−1)ʲ ch Hʲ`.
    pub fn euler(&self) -> FormalCharacter {
        graded_euler(&self.by_degree)
    }

    pub fn lower(&self) -> &Graded {
        match &self.status {
            Status::Exact => &self.by_degree,
            Status::Bounds { lower, .. } => lower,
        }
    }

    pub fn reasons(&self) -> &[String] {
        match &self.status {
            Status::Exact => &[],
            Status::Bounds { reasons, .. } => reasons,
        }
    }
}

struct DegreeMap<'a>(&'a Graded);

impl Serialize for DegreeMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (d, f) in self.0 {
            m.serialize_entry(&d.to_string(), f)?;
        }
        m.end()
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Status::Exact => s.serialize_str("exact"),
            Status::Bounds {
                lower,
                upper,
                reasons,
            } => {
                #[derive(Serialize)]
                struct Inner<'a> {
                    lower: DegreeMap<'a>,
                    upper: DegreeMap<'a>,
                    reasons: &'a [String],
                }
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry(
                    "bounds",
                    &Inner {
                        lower: DegreeMap(lower),
                        upper: DegreeMap(upper),
                        reasons,
                    },
                )?;
                m.end()
            }
        }
    }
}

impl Serialize for GradedCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("degrees", &DegreeMap(&self.by_degree))?;
        m.serialize_entry("status", &self.status)?;
        m.serialize_entry("euler", &self.euler())?;
        m.end()
    }
}

struct Step {
    out: Graded,
    reasons: Vec<String>,
}

/// One `ℙ¹` step along `αᵢ`, applied to every degree of `input`.
fn step(rs: &RootSystem, input: &Graded, i: usize, mode: DecomposeMode) -> Result<Step> {
    let mut out = Graded::new();
    let mut reasons = Vec::new();
    for (&d, f) in input {
        let dec = decompose(rs, f, i, mode)?;
        if dec.ambiguous {
            reasons.push(format!("degree {d}: {}", dec.note));
        }
        let mut stay = FormalCharacter::new();
        let mut shift = FormalCharacter::new();
        for s in &dec.strings {
            let h = sl2_cohomology(rs, s);
            stay += &h.degree(0);
            shift += &h.degree(1);
        }
        if stay.shares_weight_with(&shift) {
            let common: Vec<String> = stay
                .meet(&shift)
                .weights()
                .map(ToString::to_string)
                .collect();
            reasons.push(format!(
                "alpha_{} step from degree {d}: degrees {d} and {} share weights {}",
                i + 1,
                d + 1,
                common.join(", ")
            ));
        }
        *out.entry(d).or_default() += &stay;
        *out.entry(d + 1).or_default() += &shift;
    }
    Ok(Step {
        out: prune(out),
        reasons,
    })
}

/// Cohomology over the suffix `u` is a `P_{I(u)}`-module, so each degree must
/// be invariant under the left descents of `u`. A failure means some string
/// decomposition along the way invented an extension.
fn invariance_failures(rs: &RootSystem, cur: &Graded, suffix: &[usize]) -> Result<Vec<String>> {
    let u = rs.element_from_letters(suffix)?;
    let mut out = Vec::new();
    for j in rs.left_descents(&u) {
        if j == suffix[0] {
            continue;
        }
        for (d, f) in cur {
            if f.reflect(rs, j) != *f {
                let letters: Vec<String> = suffix.iter().map(|i| (i + 1).to_string()).collect();
                out.push(format!(
                    "degree {d} after ({}) is not invariant under s_{}",
                    letters.join(","),
                    j + 1
                ));
            }
        }
    }
    Ok(out)
}

/// `Hʲ(w, V)` for a weight multiset `V`, letters consumed right to left.
pub fn h_module_coefficients(
    rs: &RootSystem,
    word: &ReducedWord,
    v: &FormalCharacter,
    mode: DecomposeMode,
) -> Result<GradedCharacter> {
    v.require_nonnegative()?;
    for w in v.weights() {
        rs.check_weight(w)?;
    }
    for &i in word.letters() {
        rs.check_index(i)?;
    }
    let mut cur: Graded = prune(BTreeMap::from([(0, v.clone())]));
    let mut reasons = Vec::new();
    let letters = word.letters();
    for k in (0..letters.len()).rev() {
        let st = step(rs, &cur, letters[k], mode)?;
        reasons.extend(st.reasons);
        cur = st.out;
        reasons.extend(invariance_failures(rs, &cur, &letters[k..])?);
    }
    if reasons.is_empty() {
        Ok(GradedCharacter::exact(cur))
    } else {
        Ok(GradedCharacter::bounds(
            max_cancellation(&cur),
            cur,
            reasons,
        ))
    }
}

/// `Hʲ(w, λ)`: cohomology of the line bundle `λ` on the Bott–Samelson variety of `word`.
pub fn h_line_bundle(
    rs: &RootSystem,
    word: &ReducedWord,
    lambda: &Weight,
    mode: DecomposeMode,
) -> Result<GradedCharacter> {
    h_module_coefficients(rs, word, &FormalCharacter::singleton(lambda.clone()), mode)
}

/// `Hʲ(G/B, λ)` in closed form: zero when `λ+ρ` is singular, otherwise
/// `V(w(λ+ρ)−ρ)` in degree `ind(λ+ρ)`.
pub fn h_full_flag(rs: &RootSystem, lambda: &Weight) -> Result<GradedCharacter> {
    rs.check_weight(lambda)?;
    let shifted = lambda + rs.rho();
    if rs.is_singular(&shifted) {
        return Ok(GradedCharacter::zero());
    }
    let (dom, path) = rs.dominant_representative(&shifted);
    let top = &dom - rs.rho();
    let ch = weyl_character(rs, &top)?;
    Ok(GradedCharacter::exact(BTreeMap::from([(path.len(), ch)])))
}
