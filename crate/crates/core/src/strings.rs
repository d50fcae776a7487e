//! α-string decomposition of weight multisets and the cohomology of each
//! string over `P_α/B ≅ ℙ¹`.
//!
//! A string `top, top−α, …, top−mα` stands for an indecomposable
//! `B_α`-module `V′ ⊗ ℂ_χ` with `dim V′ = m+1` and twist `c = ⟨χ, α∨⟩`.
//! Its cohomology sits in degree 0 when `c ≥ 0`, vanishes when `c = −1`,
//! and sits in degree 1 when `c ≤ −2`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::charring::{demazure_op, FormalCharacter};
use crate::cohomology::GradedCharacter;
use crate::error::Result;
use crate::rootsys::{RootSystem, Weight};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecomposeMode {
    /// Maximal chains, highest pairing first.
    #[default]
    Greedy,
    /// Greedy, but flag decompositions that the character does not determine.
    Strict,
}

impl std::str::FromStr for DecomposeMode {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(DecomposeMode::Greedy),
            "strict" => Ok(DecomposeMode::Strict),
            _ => Err(crate::error::Error::Parse(format!("unknown mode '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AlphaString {
    pub top: Weight,
    /// Number of weights, `m + 1`.
    pub size: usize,
    pub alpha: usize,
    /// `⟨top, α∨⟩ − m`.
    pub twist: i64,
}

impl AlphaString {
    pub fn top_pairing(&self) -> i64 {
        self.top.coord(self.alpha)
    }

    pub fn weights<'a>(&'a self, rs: &'a RootSystem) -> impl Iterator<Item = Weight> + 'a {
        let a = rs.simple_root(self.alpha);
        (0..self.size as i64).map(move |k| self.top.add_scaled(a, -k))
    }

    pub fn character(&self, rs: &RootSystem) -> FormalCharacter {
        self.weights(rs).collect()
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct StringDecomposition {
    pub strings: Vec<AlphaString>,
    pub ambiguous: bool,
    pub note: String,
}

impl StringDecomposition {
    pub fn character(&self, rs: &RootSystem) -> FormalCharacter {
        let mut f = FormalCharacter::new();
        for s in &self.strings {
            f += &s.character(rs);
        }
        f
    }
}

/// Splits `f` into α-strings for the simple root `αᵢ`.
///
/// Weights on one α-line `μ + ℤα` are indexed by `t = ⌊⟨μ,α∨⟩/2⌋`. On each
/// line the highest remaining weight starts a chain that runs down while
/// copies remain. The chains on a line come out nested, and two chains
/// `[a, d] ⊋ [b, c]` with `a > b` and `c > d` can be re-paired as
/// `[a, c]`, `[b, d]`; strict mode reports exactly that situation.
pub fn decompose(
    rs: &RootSystem,
    f: &FormalCharacter,
    i: usize,
    mode: DecomposeMode,
) -> Result<StringDecomposition> {
    rs.check_index(i)?;
    f.require_nonnegative()?;
    let alpha = rs.simple_root(i);

    // line representative (pairing 0 or 1) -> t -> remaining multiplicity
    let mut lines: BTreeMap<Weight, BTreeMap<i64, i64>> = BTreeMap::new();
    for (w, m) in f.iter() {
        let p = w.coord(i);
        let t = p.div_euclid(2);
        let rep = w.add_scaled(alpha, -t);
        *lines.entry(rep).or_default().entry(t).or_insert(0) += m;
    }

    let mut strings = Vec::new();
    let mut ambiguous_lines = Vec::new();
    for (rep, mut counts) in lines {
        // (hi, lo) intervals in t, in the order they were cut
        let mut intervals: Vec<(i64, i64)> = Vec::new();
        while let Some((&hi, _)) = counts.iter().next_back() {
            let mut lo = hi;
            while counts.get(&(lo - 1)).is_some_and(|&c| c > 0) {
                lo -= 1;
            }
            for t in lo..=hi {
                let c = counts.get_mut(&t).expect("chain covers present weights");
                *c -= 1;
                if *c == 0 {
                    counts.remove(&t);
                }
            }
            intervals.push((hi, lo));
        }
        if mode == DecomposeMode::Strict {
            let crossing = intervals
                .iter()
                .any(|&(hi1, lo1)| intervals.iter().any(|&(hi2, lo2)| hi1 > hi2 && lo1 < lo2));
            if crossing {
                ambiguous_lines.push(rep.clone());
            }
        }
        for (hi, lo) in intervals {
            let top = rep.add_scaled(alpha, hi);
            let m = hi - lo;
            strings.push(AlphaString {
                twist: top.coord(i) - m,
                top,
                size: (m + 1) as usize,
                alpha: i,
            });
        }
    }
    // highest pairing first, ties in canonical weight order
    strings.sort_by(|a, b| {
        b.top_pairing()
            .cmp(&a.top_pairing())
            .then_with(|| a.top.cmp(&b.top))
            .then_with(|| b.size.cmp(&a.size))
    });

    let ambiguous = !ambiguous_lines.is_empty();
    let note = if ambiguous {
        let lines: Vec<String> = ambiguous_lines.iter().map(ToString::to_string).collect();
        format!(
            "nested chains along alpha_{} through {} admit another maximal matching",
            i + 1,
            lines.join(", ")
        )
    } else {
        String::new()
    };
    Ok(StringDecomposition {
        strings,
        ambiguous,
        note,
    })
}

/// Cohomology of one string over `P_α/B`.
pub fn sl2_cohomology(rs: &RootSystem, s: &AlphaString) -> GradedCharacter {
    let ch = s.character(rs);
    let mut by_degree = BTreeMap::new();
    match s.twist {
        c if c >= 0 => {
            by_degree.insert(0, demazure_op(rs, &ch, s.alpha));
        }
        -1 => {}
        _ => {
            by_degree.insert(1, -&demazure_op(rs, &ch, s.alpha));
        }
    }
    GradedCharacter::exact(by_degree)
}
