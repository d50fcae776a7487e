//! Test-local oracles. Characters are plain maps from ω-coordinates to
//! multiplicities; nothing here calls into the character ring or the
//! cohomology engine.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use flagcoh::charring::FormalCharacter;
use flagcoh::rootsys::{RootSystem, Weight};

pub type Char = BTreeMap<Vec<i64>, i64>;

pub fn system(name: &str) -> RootSystem {
    RootSystem::build(name.parse().unwrap())
}

pub fn to_map(f: &FormalCharacter) -> Char {
    f.iter().map(|(w, m)| (w.coords().to_vec(), m)).collect()
}

fn add(out: &mut Char, w: Vec<i64>, m: i64) {
    let e = out.entry(w.clone()).or_insert(0);
    *e += m;
    if *e == 0 {
        out.remove(&w);
    }
}

fn shift(w: &[i64], a: &[i64], k: i64) -> Vec<i64> {
    w.iter().zip(a).map(|(x, y)| x + k * y).collect()
}

/// Divided difference on a single exponential, written out term by term.
pub fn demazure_step(rs: &RootSystem, f: &Char, i: usize) -> Char {
    let a = rs.simple_root(i).coords().to_vec();
    let mut out = Char::new();
    for (mu, &m) in f {
        let n = mu[i];
        if n >= 0 {
            for k in 0..=n {
                add(&mut out, shift(mu, &a, -k), m);
            }
        } else if n <= -2 {
            for k in 1..=(-n - 1) {
                add(&mut out, shift(mu, &a, k), -m);
            }
        }
    }
    out
}

/// `D_{i₁} ⋯ D_{i_ℓ}(e^λ)`, rightmost letter first.
pub fn demazure(rs: &RootSystem, letters: &[usize], lambda: &[i64]) -> Char {
    let mut f = Char::new();
    f.insert(lambda.to_vec(), 1);
    for &i in letters.iter().rev() {
        f = demazure_step(rs, &f, i);
    }
    f
}

/// `⟨λ, β∨⟩` from the coroot coordinates.
pub fn pair(lambda: &[i64], coroot: &[i64]) -> i64 {
    lambda.iter().zip(coroot).map(|(a, b)| a * b).sum()
}

/// `λ + ρ`.
pub fn shifted(lambda: &[i64]) -> Vec<i64> {
    lambda.iter().map(|c| c + 1).collect()
}

/// Number of positive roots with negative pairing against `λ`.
pub fn inversion_index(rs: &RootSystem, lambda: &[i64]) -> usize {
    rs.positive_roots()
        .iter()
        .filter(|b| pair(lambda, &b.coroot_coords) < 0)
        .count()
}

pub fn singular(rs: &RootSystem, lambda: &[i64]) -> bool {
    rs.positive_roots()
        .iter()
        .any(|b| pair(lambda, &b.coroot_coords) == 0)
}

/// `|∏ ⟨λ+ρ, β∨⟩ / ⟨ρ, β∨⟩|`, exact.
pub fn weyl_dimension(rs: &RootSystem, lambda: &[i64]) -> u128 {
    let s = shifted(lambda);
    let rho = vec![1; rs.rank()];
    let (mut num, mut den) = (1i128, 1i128);
    for b in rs.positive_roots() {
        num *= pair(&s, &b.coroot_coords) as i128;
        den *= pair(&rho, &b.coroot_coords) as i128;
    }
    assert_eq!(num % den, 0);
    (num / den).unsigned_abs()
}

pub fn dominant_conjugate(rs: &RootSystem, mu: &[i64]) -> Vec<i64> {
    let mut mu = mu.to_vec();
    while let Some(i) = mu.iter().position(|&c| c < 0) {
        mu = shift(&mu, rs.simple_root(i).coords(), -mu[i]);
    }
    mu
}

/// Weight multiplicities of `V(λ)` by Freudenthal's recursion.
///
/// Uses twice the invariant form: for `ν = Σ kᵢαᵢ` and `x` in ω-coordinates,
/// `2(ν, x) = Σ kᵢ xᵢ |αᵢ|²` with short roots of squared length 1.
pub fn freudenthal(rs: &RootSystem, lambda: &[i64]) -> Char {
    let n = rs.rank();
    assert!(lambda.iter().all(|&c| c >= 0));
    let len = rs.root_lengths();
    let form = |nu: &[i64], x: &[i64]| -> i64 { (0..n).map(|i| nu[i] * x[i] * len[i]).sum() };
    let lam = Weight::new(lambda.to_vec());
    let span = &lam - &rs.longest().act(&lam);
    let bound = rs.root_lattice_coords(&span).unwrap();

    let omega = |k: &[i64]| -> Vec<i64> {
        let mut w = lambda.to_vec();
        for (i, &c) in k.iter().enumerate() {
            w = shift(&w, rs.simple_root(i).coords(), -c);
        }
        w
    };
    let mut ks: Vec<Vec<i64>> = vec![vec![]];
    for &b in &bound {
        ks = ks
            .into_iter()
            .flat_map(|k| {
                (0..=b).map(move |c| {
                    let mut k = k.clone();
                    k.push(c);
                    k
                })
            })
            .collect();
    }
    ks.sort_by_key(|k| k.iter().sum::<i64>());
    let in_box: HashMap<Vec<i64>, Vec<i64>> = ks.iter().map(|k| (omega(k), k.clone())).collect();

    let rho2: Vec<i64> = vec![2; n];
    let mut mult: HashMap<Vec<i64>, i64> = HashMap::new();
    mult.insert(lambda.to_vec(), 1);
    for k in ks.iter().skip(1) {
        let mu = omega(k);
        if !in_box.contains_key(&dominant_conjugate(rs, &mu)) {
            continue;
        }
        let x: Vec<i64> = (0..n).map(|i| lambda[i] + mu[i] + rho2[i]).collect();
        let lhs = form(k, &x);
        assert!(lhs > 0, "Freudenthal denominator vanished at {mu:?}");
        let mut rhs = 0;
        for b in rs.positive_roots() {
            let bw = b.weight.coords();
            let mut j = 1;
            loop {
                let up = shift(&mu, bw, j);
                let Some(&m) = mult.get(&up) else { break };
                rhs += 2 * form(&b.root_coords, &up) * m;
                j += 1;
            }
        }
        assert_eq!(rhs % lhs, 0, "non-integral multiplicity at {mu:?}");
        if rhs != 0 {
            mult.insert(mu, rhs / lhs);
        }
    }
    mult.into_iter().collect()
}

pub fn dim(c: &Char) -> i64 {
    c.values().sum()
}
