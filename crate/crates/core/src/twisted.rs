//! Automorphism and deformation criteria for `G`-twisted varieties
//! `E = G ×_B F`, specialized to Schubert and Bott–Samelson fibers.
//!
//! With `π: E → G/B`, the kernel of `π_*` on `Aut⁰(E)` has Lie algebra
//! `H⁰(G/B, H⁰(F, Θ_F))`, and the sequence `1 → ker π_* → Aut⁰(E) → G → 1`
//! splits. So `Aut⁰(E) = G` exactly when that space vanishes. When moreover
//! `Hʲ(F, 𝒪_F) = 0` for `j ≥ 1` and `Hʲ(G/B, H⁰(F, Θ_F)) = 0` for
//! `j = 1, 2`, one has `H¹(E, Θ_E) = H⁰(G/B, H¹(F, Θ_F))`.

use std::collections::{BTreeMap, BTreeSet};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::charring::FormalCharacter;
use crate::cohomology::{h_module_coefficients, GradedCharacter};
use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};
use crate::strings::DecomposeMode;
use crate::tangent::{bsdh_tangent, g_weights, p_j_weights, schubert_stabilizer, BWeightModule};
use crate::weyl::{ReducedWord, WeylElt};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberData {
    /// Character of `H⁰(F, Θ_F)`.
    pub h0_theta: BWeightModule,
    /// Character of `H¹(F, Θ_F)`, when known.
    pub h1_theta: Option<BWeightModule>,
    /// `Hʲ(F, 𝒪_F) = 0` for `j ≥ 1`.
    pub structure_vanishing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Aut0 {
    ExactlyG,
    /// `ker π_*` may be nontrivial; its Lie algebra has this character.
    Inconclusive {
        kernel_character: FormalCharacter,
    },
}

impl Aut0 {
    pub fn kernel_character(&self) -> FormalCharacter {
        match self {
            Aut0::ExactlyG => FormalCharacter::new(),
            Aut0::Inconclusive { kernel_character } => kernel_character.clone(),
        }
    }
}

impl Serialize for Aut0 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Aut0::ExactlyG => s.serialize_str("G"),
            Aut0::Inconclusive { kernel_character } => {
                let inner = BTreeMap::from([("kernel_character", kernel_character)]);
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("inconclusive", &inner)?;
                m.end()
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NotDeterminedKind {
    /// A required input is outside what the engine computes.
    ExternalInput,
    /// A hypothesis was computed exactly and fails.
    HypothesisFails,
    /// A Bounds result stood in the way.
    Uncertified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum H1Twisted {
    Determined(GradedCharacter),
    NotDetermined {
        kind: NotDeterminedKind,
        reason: String,
    },
}

impl Serialize for H1Twisted {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            H1Twisted::Determined(g) => g.serialize(s),
            H1Twisted::NotDetermined { reason, .. } => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("not_determined", reason)?;
                m.end()
            }
        }
    }
}

impl H1Twisted {
    fn not_determined(kind: NotDeterminedKind, reason: impl Into<String>) -> Self {
        H1Twisted::NotDetermined {
            kind,
            reason: reason.into(),
        }
    }
}

/// An engine computation the report depends on.
#[derive(Clone, Debug, Serialize)]
pub struct Ingredient {
    pub name: String,
    pub result: GradedCharacter,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistedReport {
    pub aut0: Aut0,
    pub h1: H1Twisted,
    /// `Hʲ(G/B, H⁰(F, Θ_F))`.
    pub base_cohomology: GradedCharacter,
    /// Character of `Lie Aut⁰(E)`: kernel plus `𝔤`.
    pub lie_aut0: FormalCharacter,
    pub lie_aut0_dim: u64,
    pub ingredients: Vec<Ingredient>,
    pub citations: Vec<String>,
    pub notes: Vec<String>,
}

impl TwistedReport {
    /// False when some engine result carried Bounds or `h1` could not be
    /// certified.
    pub fn certified(&self) -> bool {
        let engine =
            self.base_cohomology.is_exact() && self.ingredients.iter().all(|i| i.result.is_exact());
        engine
            && !matches!(
                self.h1,
                H1Twisted::NotDetermined {
                    kind: NotDeterminedKind::Uncertified,
                    ..
                }
            )
    }

    pub fn h1_is_zero(&self) -> bool {
        matches!(&self.h1, H1Twisted::Determined(g) if g.is_zero())
    }
}

const KERNEL_LIE: &str = "Lie(ker pi_*) = H^0(G/B, H^0(F, Theta_F)) and Aut^0(E) = ker pi_* x| G";
const AUT0_CRITERION: &str = "Aut^0(E) = G when H^0(G/B, H^0(F, Theta_F)) = 0";
const H1_CRITERION: &str = "H^1(E, Theta_E) = H^0(G/B, H^1(F, Theta_F)) when H^j(F, O_F) = 0 for \
     j >= 1 and H^j(G/B, H^0(F, Theta_F)) = 0 for j = 1, 2";

fn lie_aut0(rs: &RootSystem, aut0: &Aut0) -> (FormalCharacter, u64) {
    let kernel = aut0.kernel_character();
    let g = g_weights(rs).character;
    let lie = &kernel + &g;
    let dim = lie.dimension().expect("nonnegative");
    assert_eq!(
        dim,
        kernel.dimension().expect("nonnegative") + g.dimension().expect("nonnegative"),
        "Lie(Aut^0) splits as kernel plus g"
    );
    (lie, dim)
}

/// Degree 0 of `g`, if the result pins it down.
fn certain_degree_zero(g: &GradedCharacter) -> Option<FormalCharacter> {
    let upper = g.degree(0);
    let lower = g.lower().get(&0).cloned().unwrap_or_default();
    (upper == lower).then_some(upper)
}

pub fn check_twisted(
    rs: &RootSystem,
    fiber: &FiberData,
    mode: DecomposeMode,
) -> Result<TwistedReport> {
    let w0 = rs.longest_word();
    let base = h_module_coefficients(rs, &w0, &fiber.h0_theta.character, mode)?;
    let mut notes = Vec::new();

    let aut0 = if base.is_exact() && base.degree(0).is_zero() {
        Aut0::ExactlyG
    } else {
        if !base.is_exact() {
            notes.push("H^j(G/B, H^0(F, Theta_F)) is only bounded".to_string());
        }
        Aut0::Inconclusive {
            kernel_character: base.degree(0),
        }
    };

    let h1 = if !base.is_exact() {
        H1Twisted::not_determined(
            NotDeterminedKind::Uncertified,
            "engine could not certify exactness of H^j(G/B, H^0(F, Theta_F))",
        )
    } else if !(base.degree(1).is_zero() && base.degree(2).is_zero()) {
        H1Twisted::not_determined(
            NotDeterminedKind::HypothesisFails,
            "H^j(G/B, H^0(F, Theta_F)) is nonzero for j = 1 or 2",
        )
    } else if !fiber.structure_vanishing {
        H1Twisted::not_determined(
            NotDeterminedKind::HypothesisFails,
            "H^j(F, O_F) = 0 for j >= 1 is not asserted",
        )
    } else if let Some(h1f) = &fiber.h1_theta {
        let h = h_module_coefficients(rs, &w0, &h1f.character, mode)?;
        match certain_degree_zero(&h) {
            Some(d0) => H1Twisted::Determined(GradedCharacter::exact(BTreeMap::from([(0, d0)]))),
            None => H1Twisted::not_determined(
                NotDeterminedKind::Uncertified,
                "engine could not certify H^0(G/B, H^1(F, Theta_F))",
            ),
        }
    } else {
        H1Twisted::not_determined(
            NotDeterminedKind::ExternalInput,
            "H^1(F, Theta_F) not supplied",
        )
    };

    if let Aut0::Inconclusive { kernel_character } = &aut0 {
        if !kernel_character.is_zero() {
            notes.push("nonzero kernel: Aut^0(E) is strictly larger than G".to_string());
        }
    }
    let (lie, dim) = lie_aut0(rs, &aut0);
    Ok(TwistedReport {
        aut0,
        h1,
        base_cohomology: base,
        lie_aut0: lie,
        lie_aut0_dim: dim,
        ingredients: Vec::new(),
        citations: vec![
            KERNEL_LIE.into(),
            AUT0_CRITERION.into(),
            H1_CRITERION.into(),
        ],
        notes,
    })
}

fn require_simply_laced(rs: &RootSystem) -> Result<()> {
    if rs.cartan_type().simply_laced() {
        Ok(())
    } else {
        Err(Error::NotSimplyLaced(rs.cartan_type().to_string()))
    }
}

/// `Hʲ(G/B, 𝔭_J)` for `j = 0, 1, 2`, checked to vanish.
pub fn parabolic_ingredient(
    rs: &RootSystem,
    j: &BTreeSet<usize>,
    mode: DecomposeMode,
) -> Result<Ingredient> {
    let p = p_j_weights(rs, j)?;
    let result = h_module_coefficients(rs, &rs.longest_word(), &p.character, mode)?;
    let holds = result.is_exact() && (0..=2).all(|d| result.degree(d).is_zero());
    Ok(Ingredient {
        name: format!("H^j(G/B, {}) = 0 for j = 0, 1, 2", p.label),
        result,
        holds,
    })
}

/// Report for the `G`-Schubert variety `G ×_B X(w)`; simply-laced types only.
pub fn twisted_schubert_report(
    rs: &RootSystem,
    w: &WeylElt,
    mode: DecomposeMode,
) -> Result<TwistedReport> {
    require_simply_laced(rs)?;
    let external = H1Twisted::not_determined(
        NotDeterminedKind::ExternalInput,
        "H^1(X(w), Theta) is an external input",
    );
    let h1_citation =
        "H^1 of the G-Schubert variety equals H^0(G/B, H^1(X(w), Theta_X(w)))".to_string();

    if *w == rs.longest() {
        // X(w₀) = G/B, so E ≅ G/B × G/B.
        let fiber = FiberData {
            h0_theta: g_weights(rs),
            h1_theta: None,
            structure_vanishing: true,
        };
        let mut report = check_twisted(rs, &fiber, mode)?;
        report.h1 = external;
        report
            .citations
            .push("for w = w0, E = G/B x G/B and Aut^0(E) = G x G".into());
        report.citations.push(h1_citation);
        report.notes.push("w = w0: the G x G case".into());
        return Ok(report);
    }

    let i_w = schubert_stabilizer(rs, w);
    let ingredient = parabolic_ingredient(rs, &i_w, mode)?;
    let aut0 = if ingredient.holds {
        Aut0::ExactlyG
    } else {
        Aut0::Inconclusive {
            kernel_character: ingredient.result.degree(0),
        }
    };
    let (lie, dim) = lie_aut0(rs, &aut0);
    let stab: Vec<String> = i_w.iter().map(|i| (i + 1).to_string()).collect();
    Ok(TwistedReport {
        aut0,
        h1: external,
        base_cohomology: ingredient.result.clone(),
        lie_aut0: lie,
        lie_aut0_dim: dim,
        ingredients: vec![ingredient],
        citations: vec![
            KERNEL_LIE.into(),
            "for simply-laced G and w != w0, Aut^0 of the G-Schubert variety is G".into(),
            "the stabilizer of X(w) in G is P_I(w); the argument needs H^j(G/B, p_I(w)) = 0, \
             verified here, and a vanishing for the kernel sheaf K_w, assumed"
                .into(),
            h1_citation,
        ],
        notes: vec![format!("I(w) = {{{}}}", stab.join(","))],
    })
}

/// Report for the `G`-Bott–Samelson variety `G ×_B Z(w, i)`.
pub fn twisted_bsdh_report(
    rs: &RootSystem,
    word: &ReducedWord,
    mode: DecomposeMode,
) -> Result<TwistedReport> {
    let tangent = bsdh_tangent(rs, word, mode)?;
    let fiber = FiberData {
        h0_theta: BWeightModule::new(tangent.degree(0), "H0(Z,Theta)")?,
        h1_theta: Some(BWeightModule::new(tangent.degree(1), "H1(Z,Theta)")?),
        // Z(w, i) is a smooth rational tower of ℙ¹-bundles.
        structure_vanishing: true,
    };
    let mut report = check_twisted(rs, &fiber, mode)?;
    let tangent_exact = tangent.is_exact();
    let pushed = h_module_coefficients(rs, &rs.longest_word(), &tangent.degree(1), mode)?;
    report.ingredients.push(Ingredient {
        name: "H^j(Z(w,i), Theta)".into(),
        holds: tangent_exact,
        result: tangent,
    });
    report.ingredients.push(Ingredient {
        name: "H^j(G/B, H^1(Z(w,i), Theta))".into(),
        holds: pushed.is_exact(),
        result: pushed,
    });
    if !tangent_exact {
        report.aut0 = Aut0::Inconclusive {
            kernel_character: report.aut0.kernel_character(),
        };
        report.h1 = H1Twisted::not_determined(
            NotDeterminedKind::Uncertified,
            "engine could not certify exactness of H^j(Z(w,i), Theta)",
        );
    }
    if rs.cartan_type().simply_laced() {
        report.citations.push(
            "for simply-laced G, Aut^0 of the G-BSDH variety is G and its higher tangent \
             cohomology vanishes"
                .into(),
        );
    } else {
        report
            .notes
            .push("not simply laced: higher tangent cohomology may survive".into());
    }
    Ok(report)
}

/// Roots `β` with `β + ρ` non-singular, with `ind(β + ρ)`.
pub fn nonsingular_shifted_roots(rs: &RootSystem) -> Vec<(Weight, usize)> {
    rs.roots()
        .filter_map(|b| {
            let shifted = &b.weight + rs.rho();
            (!rs.is_singular(&shifted)).then(|| (b.weight, rs.index(&shifted)))
        })
        .collect()
}
