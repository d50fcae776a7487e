//! Named verification suites. Each one sweeps a fixed range and reports
//! pass or fail together with the first few counterexamples.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::charring::{demazure_char, weyl_character, weyl_dim, FormalCharacter};
use crate::cohomology::{h_full_flag, h_line_bundle, h_module_coefficients, GradedCharacter};
use crate::error::Result;
use crate::rootsys::{RootSystem, Weight};
use crate::strings::DecomposeMode;
use crate::tangent::{bsdh_tangent, p_j_weights};
use crate::twisted::{nonsingular_shifted_roots, twisted_bsdh_report, Aut0};
use crate::weyl::{ReducedWord, Word, DEFAULT_REDUCED_WORD_CAP};

pub const SUITES: [&str; 8] = [
    "example-4-12",
    "euler",
    "bwb",
    "demazure-weyl",
    "facts",
    "simply-laced-vanishing",
    "non-simply-laced-witness",
    "word-independence",
];

const MAX_REPORTED: usize = 20;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
    pub failure_count: usize,
    pub elapsed_ms: u128,
    pub time_limit_ms: Option<u128>,
    pub notes: Vec<String>,
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
    failure_count: usize,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(what());
            }
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(f);
            }
        }
        self.notes.extend(other.notes);
    }
}

/// Every weight with coordinates in `lo..=hi`, lexicographically.
pub fn weight_box(rank: usize, lo: i64, hi: i64) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (lo..=hi).map(move |c| {
                    let mut v = v.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Weight::new).collect()
}

/// Every reduced word of every element of `W`, shortest first.
pub fn all_words(rs: &RootSystem, max_len: usize) -> Result<Vec<ReducedWord>> {
    let mut out = Vec::new();
    for w in rs.enumerate_all()? {
        if w.length() <= max_len {
            out.extend(rs.all_reduced_words(&w, DEFAULT_REDUCED_WORD_CAP.max(max_len))?);
        }
    }
    Ok(out)
}

fn system(name: &str) -> RootSystem {
    RootSystem::build(name.parse().expect("built-in type"))
}

/// Types of rank at most 3.
pub const SMALL_TYPES: [&str; 7] = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"];

fn b2_worked_example() -> Result<Tally> {
    let mut t = Tally::default();
    let b2 = system("B2");
    let r = |k: &[i64]| b2.from_root_coords(k);
    let w = b2.reduced_word(&Word(vec![0, 1, 0]))?;
    let expected = FormalCharacter::from_weights([r(&[1, 1])?, r(&[0, 1])?]);

    let h = h_line_bundle(&b2, &w, &r(&[1, 0])?, DecomposeMode::Greedy)?;
    t.check(
        h.is_exact() && h.max_degree() == Some(1) && h.degree(1) == expected,
        || format!("H^1(w, alpha_1) = {}", h.degree(1)),
    );
    let tan = bsdh_tangent(&b2, &w, DecomposeMode::Greedy)?;
    t.check(tan.is_exact() && tan.degree(1) == expected, || {
        format!("H^1(Z, Theta) = {} exact={}", tan.degree(1), tan.is_exact())
    });
    let push = h_module_coefficients(&b2, &b2.longest_word(), &expected, DecomposeMode::Greedy)?;
    let v = weyl_character(&b2, &Weight::fundamental(2, 0))?;
    t.check(
        push.is_exact() && push.higher_vanish() && push.degree(0) == v,
        || format!("H^0(G/B, H^1(w, alpha_1)) = {}", push.degree(0)),
    );
    t.check(b2.longest_word().letters() == [0, 1, 0, 1], || {
        format!("w0 word {}", b2.longest_word())
    });
    Ok(t)
}

fn euler() -> Result<Tally> {
    let mut t = Tally::default();
    for name in ["A2", "B2", "G2"] {
        let rs = system(name);
        let words = all_words(&rs, usize::MAX)?;
        let weights = weight_box(rs.rank(), -2, 2);
        let parts: Vec<Result<Tally>> = words
            .par_iter()
            .map(|w| {
                let mut t = Tally::default();
                for l in &weights {
                    let h = h_line_bundle(&rs, w, l, DecomposeMode::Greedy)?;
                    let d = demazure_char(&rs, w, l);
                    t.check(h.euler() == d, || format!("{name} ({w}) {l}"));
                }
                Ok(t)
            })
            .collect();
        for p in parts {
            t.absorb(p?);
        }
    }
    Ok(t)
}

fn bwb() -> Result<Tally> {
    let mut t = Tally::default();
    for name in SMALL_TYPES {
        let rs = system(name);
        let w0 = rs.longest_word();
        let parts: Vec<Result<(Tally, usize)>> = weight_box(rs.rank(), -3, 3)
            .par_iter()
            .map(|l| {
                let mut t = Tally::default();
                let closed = h_full_flag(&rs, l)?;
                let shifted = l + rs.rho();
                if rs.is_singular(&shifted) {
                    t.check(closed.is_zero(), || {
                        format!("{name} {l}: singular but nonzero")
                    });
                } else {
                    let ind = rs.index(&shifted);
                    t.check(
                        closed.by_degree().len() == 1 && closed.max_degree() == Some(ind),
                        || format!("{name} {l}: degree is not ind = {ind}"),
                    );
                }
                let h = h_line_bundle(&rs, &w0, l, DecomposeMode::Greedy)?;
                let bounded = if h.is_exact() {
                    t.check(h == closed, || format!("{name} {l}: recursion disagrees"));
                    0
                } else {
                    1
                };
                Ok((t, bounded))
            })
            .collect();
        let mut bounded = 0;
        for p in parts {
            let (p, b) = p?;
            t.absorb(p);
            bounded += b;
        }
        if bounded > 0 {
            t.notes.push(format!(
                "{name}: {bounded} weights gave Bounds and were not compared"
            ));
        }
    }
    Ok(t)
}

fn demazure_weyl() -> Result<Tally> {
    let mut t = Tally::default();
    for name in SMALL_TYPES {
        let rs = system(name);
        let w0 = rs.longest_word();
        for l in weight_box(rs.rank(), 0, 3) {
            let h = h_line_bundle(&rs, &w0, &l, DecomposeMode::Greedy)?;
            let v = weyl_character(&rs, &l)?;
            let dim = weyl_dim(&rs, &l)?;
            t.check(
                h.is_exact()
                    && h.higher_vanish()
                    && h.degree(0) == v
                    && h.degree(0).dimension().map(u128::from) == Some(dim),
                || format!("{name} {l}"),
            );
        }
    }
    Ok(t)
}

fn facts() -> Result<Tally> {
    let mut t = Tally::default();
    for name in ["A2", "A3", "D4"] {
        let rs = system(name);
        let mut got = nonsingular_shifted_roots(&rs);
        got.sort();
        let mut expected = vec![(rs.highest_root().weight.clone(), 0)];
        expected.extend((0..rs.rank()).map(|i| (-rs.simple_root(i), 1)));
        expected.sort();
        t.check(got == expected, || format!("{name}: {got:?}"));
    }
    Ok(t)
}

/// Proper subsets of the simple roots.
pub fn proper_subsets(rank: usize) -> Vec<BTreeSet<usize>> {
    (0..(1u32 << rank) - 1)
        .map(|m| (0..rank).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

fn simply_laced_vanishing() -> Result<Tally> {
    let mut t = Tally::default();
    for (name, max_len) in [("A2", usize::MAX), ("A3", 6)] {
        let rs = system(name);
        let words = all_words(&rs, max_len)?;
        let parts: Vec<Result<Tally>> = words
            .par_iter()
            .map(|w| {
                let mut t = Tally::default();
                let h = bsdh_tangent(&rs, w, DecomposeMode::Greedy)?;
                t.check(h.is_exact() && h.higher_vanish(), || {
                    format!(
                        "{name} ({w}): tangent H^>=1 exact={} {:?}",
                        h.is_exact(),
                        h.max_degree()
                    )
                });
                let r = twisted_bsdh_report(&rs, w, DecomposeMode::Greedy)?;
                t.check(
                    r.aut0 == Aut0::ExactlyG && r.h1_is_zero() && r.certified(),
                    || format!("{name} ({w}): twisted report"),
                );
                Ok(t)
            })
            .collect();
        for p in parts {
            t.absorb(p?);
        }
        let w0 = rs.longest_word();
        for j in proper_subsets(rs.rank()) {
            let p = p_j_weights(&rs, &j)?;
            let h = h_module_coefficients(&rs, &w0, &p.character, DecomposeMode::Greedy)?;
            t.check(
                h.is_exact() && (0..=3).all(|d| h.degree(d).is_zero()),
                || format!("{name} H^j(G/B, {})", p.label),
            );
        }
    }
    Ok(t)
}

fn non_simply_laced_witness() -> Result<Tally> {
    let mut t = Tally::default();
    let b2 = system("B2");
    let w = b2.reduced_word(&Word(vec![0, 1, 0]))?;
    let h = bsdh_tangent(&b2, &w, DecomposeMode::Greedy)?;
    t.check(!h.degree(1).is_zero(), || {
        "B2 (1,2,1): H^1(Z, Theta) reported zero".into()
    });
    let h = bsdh_tangent(&b2, &w, DecomposeMode::Strict)?;
    t.check(!h.degree(1).is_zero(), || {
        "B2 (1,2,1) strict: H^1 reported zero".into()
    });
    Ok(t)
}

fn word_independence() -> Result<Tally> {
    let mut t = Tally::default();
    for name in ["A2", "B2", "G2"] {
        let rs = system(name);
        for w in rs.enumerate_all()? {
            let words = rs.all_reduced_words(&w, DEFAULT_REDUCED_WORD_CAP)?;
            if words.len() < 2 {
                continue;
            }
            for l in weight_box(rs.rank(), -2, 2) {
                let results: Vec<GradedCharacter> = words
                    .iter()
                    .map(|rw| h_line_bundle(&rs, rw, &l, DecomposeMode::Greedy))
                    .collect::<Result<_>>()?;
                let exact: Vec<&GradedCharacter> =
                    results.iter().filter(|h| h.is_exact()).collect();
                if let Some(first) = exact.first() {
                    t.check(exact.iter().all(|h| h == first), || {
                        format!("{name} {w} {l}")
                    });
                }
            }
        }
    }
    Ok(t)
}

fn time_limit(name: &str) -> Option<Duration> {
    match name {
        "example-4-12" => Some(Duration::from_secs(1)),
        "euler" | "bwb" => Some(Duration::from_secs(60)),
        "facts" => Some(Duration::from_secs(10)),
        "simply-laced-vanishing" => Some(Duration::from_secs(300)),
        _ => None,
    }
}

/// Runs one suite by name; `None` for an unknown name.
pub fn run_suite(name: &str) -> Option<Result<SuiteReport>> {
    let f: fn() -> Result<Tally> = match name {
        "example-4-12" => b2_worked_example,
        "euler" => euler,
        "bwb" => bwb,
        "demazure-weyl" => demazure_weyl,
        "facts" => facts,
        "simply-laced-vanishing" => simply_laced_vanishing,
        "non-simply-laced-witness" => non_simply_laced_witness,
        "word-independence" => word_independence,
        _ => return None,
    };
    let start = Instant::now();
    let tally = match f() {
        Ok(t) => t,
        Err(e) => return Some(Err(e)),
    };
    let elapsed = start.elapsed();
    let limit = time_limit(name);
    let mut notes = tally.notes;
    let in_time = limit.is_none_or(|l| elapsed <= l);
    if !in_time {
        notes.push(format!(
            "exceeded time limit of {:?}",
            limit.expect("limit set")
        ));
    }
    Some(Ok(SuiteReport {
        name: name.to_string(),
        passed: tally.failure_count == 0 && in_time,
        checks: tally.checks,
        failures: tally.failures,
        failure_count: tally.failure_count,
        elapsed_ms: elapsed.as_millis(),
        time_limit_ms: limit.map(|l| l.as_millis()),
        notes,
    }))
}

pub fn run_all() -> Result<Vec<SuiteReport>> {
    SUITES
        .iter()
        .map(|s| run_suite(s).expect("known suite"))
        .collect()
}
