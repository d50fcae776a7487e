//! Tangent-sheaf data: weight models of `𝔤/𝔟` and `𝔭_J`, the stabilizer of
//! a Schubert variety, and tangent cohomology of Bott–Samelson varieties.
//!
//! The tangent sheaf of `Z(w, i)` sits in `0 → L(α_{i_r}) → Θ_Z → f*Θ_{Z'} → 0`
//! where `Z'` drops the last letter. Pulling back along the `ℙ¹`-fibration
//! does not change cohomology, so `H(Θ_Z)` is assembled from
//! `H(w, α_{i_r})` and `H(Θ_{Z'})`, provided the connecting map can be
//! ruled out weight by weight.

use std::collections::BTreeSet;

use serde::{Serialize, Serializer};

use crate::charring::FormalCharacter;
use crate::cohomology::{h_line_bundle, Graded, GradedCharacter};
use crate::error::{Error, Result};
use crate::rootsys::RootSystem;
use crate::strings::DecomposeMode;
use crate::weyl::{ReducedWord, WeylElt};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BWeightModule {
    #[serde(rename = "char")]
    pub character: FormalCharacter,
    pub label: String,
}

impl BWeightModule {
    pub fn new(character: FormalCharacter, label: impl Into<String>) -> Result<Self> {
        character.require_nonnegative()?;
        Ok(BWeightModule {
            character,
            label: label.into(),
        })
    }
}

/// Serializes a set of simple indices 1-based.
pub fn serialize_index_set<S: Serializer>(
    set: &BTreeSet<usize>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(set.iter().map(|i| i + 1))
}

/// Tangent space of `G/B` at the base point: the positive roots.
pub fn g_mod_b_weights(rs: &RootSystem) -> BWeightModule {
    let ch = rs
        .positive_roots()
        .iter()
        .map(|b| b.weight.clone())
        .collect();
    BWeightModule {
        character: ch,
        label: "g/b".into(),
    }
}

/// The adjoint representation: `rank · {0}` and every root.
pub fn g_weights(rs: &RootSystem) -> BWeightModule {
    let mut ch: FormalCharacter = rs.roots().map(|b| b.weight).collect();
    ch.add_term(rs.zero(), rs.rank() as i64);
    BWeightModule {
        character: ch,
        label: "g".into(),
    }
}

/// `𝔭_J`: Cartan zeros, all negative roots, and the positive roots supported in `J`.
pub fn p_j_weights(rs: &RootSystem, j: &BTreeSet<usize>) -> Result<BWeightModule> {
    for &i in j {
        rs.check_index(i)?;
    }
    let mut ch = FormalCharacter::from_terms([(rs.zero(), rs.rank() as i64)]);
    for b in rs.positive_roots() {
        ch.add_term(-&b.weight, 1);
        if b.support().all(|i| j.contains(&i)) {
            ch.add_term(b.weight.clone(), 1);
        }
    }
    let names: Vec<String> = j.iter().map(|i| (i + 1).to_string()).collect();
    Ok(BWeightModule {
        character: ch,
        label: format!("p_{{{}}}", names.join(",")),
    })
}

/// Letters of `word` orthogonal to every earlier letter. The first letter
/// always qualifies.
pub fn j_set(rs: &RootSystem, word: &ReducedWord) -> BTreeSet<usize> {
    let letters = word.letters();
    letters
        .iter()
        .enumerate()
        .filter(|&(j, &a)| letters[..j].iter().all(|&b| rs.orthogonal(a, b)))
        .map(|(_, &a)| a)
        .collect()
}

/// `I(w)`: the simple roots whose minimal parabolic stabilizes `X(w)`.
pub fn schubert_stabilizer(rs: &RootSystem, w: &WeylElt) -> BTreeSet<usize> {
    rs.left_descents(w)
}

/// Cohomology of `0 → L → E → Q → 0` when only characters are known.
///
/// Exact when no weight appears in both `Qʲ` and `Lʲ⁺¹`. Otherwise the
/// connecting map may cancel those weights: the upper bound is `L ⊕ Q` and
/// the lower bound cancels as much as the weights allow.
pub fn extension_cohomology(l: &GradedCharacter, q: &GradedCharacter) -> GradedCharacter {
    let mut upper = Graded::new();
    for (&d, f) in l.by_degree().iter().chain(q.by_degree()) {
        *upper.entry(d).or_default() += f;
    }
    let mut reasons: Vec<String> = l.reasons().iter().chain(q.reasons()).cloned().collect();
    for (&d, f) in q.by_degree() {
        let clash = f.meet(&l.degree(d + 1));
        if !clash.is_zero() {
            let ws: Vec<String> = clash.weights().map(ToString::to_string).collect();
            reasons.push(format!(
                "connecting map from degree {d} to {} may be nonzero at {}",
                d + 1,
                ws.join(", ")
            ));
        }
    }
    if reasons.is_empty() {
        return GradedCharacter::exact(upper);
    }
    let (ll, ql) = (l.lower(), q.lower());
    let empty = FormalCharacter::new();
    let top = upper.keys().next_back().copied().unwrap_or(0);
    let mut lower = Graded::new();
    let mut prev_k = FormalCharacter::new();
    for d in 0..=top {
        let lq = ql.get(&d).unwrap_or(&empty);
        let k = lq.meet(ll.get(&(d + 1)).unwrap_or(&empty));
        let mut x = ll.get(&d).cloned().unwrap_or_default();
        x += lq;
        x -= &prev_k;
        x -= &k;
        lower.insert(d, x);
        prev_k = k;
    }
    GradedCharacter::bounds(lower, upper, reasons)
}

/// `Hʲ(Z(w, i), Θ)` for the Bott–Samelson variety of `word`.
pub fn bsdh_tangent(
    rs: &RootSystem,
    word: &ReducedWord,
    mode: DecomposeMode,
) -> Result<GradedCharacter> {
    let mut acc = GradedCharacter::zero();
    for k in 1..=word.len() {
        let prefix = word.prefix(k);
        let a = prefix.last().expect("nonempty prefix");
        let l = h_line_bundle(rs, &prefix, rs.simple_root(a), mode)?;
        acc = extension_cohomology(&l, &acc);
    }
    Ok(acc)
}

/// Containment of `H⁰(Z, Θ)` in `𝔭_{J(w,i)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionsCheck {
    pub passed: bool,
    #[serde(serialize_with = "serialize_index_set")]
    pub j_set: BTreeSet<usize>,
    /// Weights of `H⁰` not accounted for by `𝔭_J`.
    pub excess: FormalCharacter,
    pub exact: bool,
}

pub fn sections_check(
    rs: &RootSystem,
    word: &ReducedWord,
    mode: DecomposeMode,
) -> Result<SectionsCheck> {
    if !rs.cartan_type().simply_laced() {
        return Err(Error::NotSimplyLaced(rs.cartan_type().to_string()));
    }
    let h = bsdh_tangent(rs, word, mode)?;
    let j = j_set(rs, word);
    let p = p_j_weights(rs, &j)?;
    let h0 = h.degree(0);
    let excess = h0.excess_over(&p.character);
    Ok(SectionsCheck {
        passed: excess.is_zero(),
        j_set: j,
        excess,
        exact: h.is_exact(),
    })
}

/// Tangent cohomology with its `J(w, i)` and, in simply-laced types, the
/// containment check.
#[derive(Clone, Debug, Serialize)]
pub struct TangentReport {
    #[serde(flatten)]
    pub cohomology: GradedCharacter,
    #[serde(serialize_with = "serialize_index_set")]
    pub j_set: BTreeSet<usize>,
    pub lemma46: Option<SectionsCheck>,
}

pub fn tangent_report(
    rs: &RootSystem,
    word: &ReducedWord,
    mode: DecomposeMode,
) -> Result<TangentReport> {
    let cohomology = bsdh_tangent(rs, word, mode)?;
    let lemma46 = if rs.cartan_type().simply_laced() {
        Some(sections_check(rs, word, mode)?)
    } else {
        None
    };
    Ok(TangentReport {
        cohomology,
        j_set: j_set(rs, word),
        lemma46,
    })
}
