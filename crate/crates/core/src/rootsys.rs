//! Cartan data, roots and weights for the finite crystallographic types.
//!
//! Weights live in the fundamental-weight basis: a weight `λ = Σ cᵢ ωᵢ` is
//! stored as `[c₁, …, cₙ]`, so the pairing with a simple coroot is a lookup.
//! Simple roots are numbered as in Bourbaki.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_RANK: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank > MAX_RANK {
            return Err(Error::RankTooLarge(rank));
        }
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InadmissibleType(format!(
                "{}{}",
                family.letter(),
                rank
            )))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// Dynkin edges (0-based) and squared root lengths `(αᵢ, αᵢ)`, normalized
    /// so that the short roots have length 1.
    fn dynkin(&self) -> (Vec<(usize, usize)>, Vec<i64>) {
        let n = self.rank;
        let path = |len: usize| (1..len).map(|i| (i - 1, i)).collect::<Vec<_>>();
        match self.family {
            Family::A => (path(n), vec![1; n]),
            Family::B => {
                let mut d = vec![2; n];
                d[n - 1] = 1;
                (path(n), d)
            }
            Family::C => {
                let mut d = vec![1; n];
                d[n - 1] = 2;
                (path(n), d)
            }
            Family::D => {
                let mut edges = path(n - 1);
                edges.push((n - 3, n - 1));
                (edges, vec![1; n])
            }
            Family::E => {
                // 1 - 3 - 4 - 5 - 6 (- 7 - 8), with 2 attached to 4
                let mut edges = vec![(0, 2), (1, 3), (2, 3)];
                edges.extend((3..n - 1).map(|i| (i, i + 1)));
                (edges, vec![1; n])
            }
            Family::F => (path(4), vec![2, 2, 1, 1]),
            Family::G => (path(2), vec![1, 3]),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::Parse(format!("unknown Cartan type '{s}'"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in Cartan type '{s}'")))?;
        CartanType::new(family, rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of the weight lattice `X(T)` in fundamental-weight coordinates.
///
/// Ordering is lexicographic on the coordinates; characters use it as their
/// canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        Weight(c)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `⟨λ, αᵢ∨⟩`.
    #[inline]
    pub fn coord(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// `self + k·other`, without intermediate allocation.
    pub fn add_scaled(&self, other: &Weight, k: i64) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + k * b)
                .collect(),
        )
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.add_scaled(rhs, 1)
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.add_scaled(rhs, -1)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl SubAssign<&Weight> for Weight {
    fn sub_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

impl Mul<i64> for &Weight {
    type Output = Weight;
    fn mul(self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Root {
    pub weight: Weight,
    /// Coordinates in the simple-root basis.
    pub root_coords: Vec<i64>,
    /// Coordinates of the coroot in the simple-coroot basis.
    pub coroot_coords: Vec<i64>,
    pub positive: bool,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.root_coords.iter().sum()
    }

    pub fn negated(&self) -> Root {
        Root {
            weight: -&self.weight,
            root_coords: self.root_coords.iter().map(|c| -c).collect(),
            coroot_coords: self.coroot_coords.iter().map(|c| -c).collect(),
            positive: !self.positive,
        }
    }

    /// Support in the simple-root basis.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.root_coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
    }
}

/// Immutable root datum for one Cartan type.
#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: CartanType,
    /// `cartan[i][j] = ⟨αⱼ, αᵢ∨⟩`; column `j` is `αⱼ` in ω-coordinates.
    cartan: Vec<Vec<i64>>,
    lengths: Vec<i64>,
    simple: Vec<Weight>,
    positive_roots: Vec<Root>,
    /// weight -> (index into positive_roots, is_positive)
    lookup: HashMap<Weight, (usize, bool)>,
    rho: Weight,
    highest: usize,
}

impl RootSystem {
    pub fn build(ty: CartanType) -> RootSystem {
        let n = ty.rank();
        let (edges, lengths) = ty.dynkin();
        let mut cartan = vec![vec![0i64; n]; n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j) in &edges {
            let m = lengths[i].max(lengths[j]);
            cartan[i][j] = -m / lengths[i];
            cartan[j][i] = -m / lengths[j];
        }
        let simple: Vec<Weight> = (0..n)
            .map(|j| Weight((0..n).map(|i| cartan[i][j]).collect()))
            .collect();

        // reflection closure in the root basis
        let weight_of = |k: &[i64]| -> Weight {
            Weight(
                (0..n)
                    .map(|i| (0..n).map(|j| cartan[i][j] * k[j]).sum())
                    .collect(),
            )
        };
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut roots: Vec<Vec<i64>> = Vec::new();
        let mut queue: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut k = vec![0; n];
                k[i] = 1;
                k
            })
            .collect();
        while let Some(k) = queue.pop() {
            if seen.insert(k.clone(), ()).is_some() {
                continue;
            }
            let w = weight_of(&k);
            for i in 0..n {
                let p = w.coord(i);
                let mut r = k.clone();
                r[i] -= p;
                if r.iter().all(|&c| c >= 0) && r.iter().any(|&c| c > 0) && !seen.contains_key(&r) {
                    queue.push(r);
                }
            }
            roots.push(k);
        }
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });

        let positive_roots: Vec<Root> = roots
            .into_iter()
            .map(|k| {
                let weight = weight_of(&k);
                // (β,β) doubled: Σ kᵢ ⟨β,αᵢ∨⟩ dᵢ
                let norm2: i64 = (0..n).map(|i| k[i] * weight.coord(i) * lengths[i]).sum();
                let coroot_coords = (0..n)
                    .map(|i| {
                        let num = 2 * k[i] * lengths[i];
                        debug_assert_eq!(num % norm2, 0);
                        num / norm2
                    })
                    .collect();
                Root {
                    weight,
                    root_coords: k,
                    coroot_coords,
                    positive: true,
                }
            })
            .collect();

        let mut lookup = HashMap::new();
        for (idx, r) in positive_roots.iter().enumerate() {
            lookup.insert(r.weight.clone(), (idx, true));
            lookup.insert(-&r.weight, (idx, false));
        }
        let highest = positive_roots
            .iter()
            .enumerate()
            .max_by_key(|(_, r)| r.height())
            .map(|(i, _)| i)
            .expect("root system has at least one root");
        debug_assert!(positive_roots.iter().all(|r| r
            .root_coords
            .iter()
            .zip(&positive_roots[highest].root_coords)
            .all(|(a, b)| a <= b)));

        RootSystem {
            ty,
            cartan,
            lengths,
            simple,
            positive_roots,
            lookup,
            rho: Weight(vec![1; n]),
            highest,
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Squared lengths of the simple roots, short roots normalized to 1.
    pub fn root_lengths(&self) -> &[i64] {
        &self.lengths
    }

    pub fn simple_root(&self, i: usize) -> &Weight {
        &self.simple[i]
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple
    }

    /// Positive roots, ordered by height; the first `rank` are the simple roots.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// All roots, positive ones first.
    pub fn roots(&self) -> impl Iterator<Item = Root> + '_ {
        self.positive_roots
            .iter()
            .cloned()
            .chain(self.positive_roots.iter().map(Root::negated))
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn highest_root(&self) -> &Root {
        &self.positive_roots[self.highest]
    }

    pub fn zero(&self) -> Weight {
        Weight::zero(self.rank())
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            })
        }
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: self.rank(),
                got: w.rank(),
            })
        }
    }

    /// Root with the given weight (positive or negative), if any.
    pub fn root_of(&self, w: &Weight) -> Option<Root> {
        self.lookup.get(w).map(|&(idx, pos)| {
            let r = &self.positive_roots[idx];
            if pos {
                r.clone()
            } else {
                r.negated()
            }
        })
    }

    /// `Some(true)` for positive roots, `Some(false)` for negative ones.
    pub fn root_sign(&self, w: &Weight) -> Option<bool> {
        self.lookup.get(w).map(|&(_, pos)| pos)
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.lookup.contains_key(w)
    }

    /// Weight with the given simple-root coordinates.
    pub fn from_root_coords(&self, k: &[i64]) -> Result<Weight> {
        if k.len() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: k.len(),
            });
        }
        let n = self.rank();
        Ok(Weight(
            (0..n)
                .map(|i| (0..n).map(|j| self.cartan[i][j] * k[j]).sum())
                .collect(),
        ))
    }

    /// Coordinates of `λ` in the simple-root basis (rational in general).
    pub fn root_basis_coords(&self, lambda: &Weight) -> Vec<Ratio<i64>> {
        let n = self.rank();
        // solve cartan · k = λ by Gauss-Jordan elimination over ℚ
        let mut m: Vec<Vec<Ratio<i64>>> = (0..n)
            .map(|i| {
                let mut row: Vec<Ratio<i64>> = self.cartan[i]
                    .iter()
                    .map(|&c| Ratio::from_integer(c))
                    .collect();
                row.push(Ratio::from_integer(lambda.coord(i)));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| m[r][col] != Ratio::from_integer(0))
                .expect("Cartan matrix is nonsingular");
            m.swap(col, pivot);
            let p = m[col][col];
            for x in m[col].iter_mut() {
                *x /= p;
            }
            for r in 0..n {
                if r != col && m[r][col] != Ratio::from_integer(0) {
                    let f = m[r][col];
                    let pivot_row = m[col].clone();
                    for (x, v) in m[r].iter_mut().zip(pivot_row) {
                        *x -= f * v;
                    }
                }
            }
        }
        m.into_iter().map(|row| row[n]).collect()
    }

    /// Integral simple-root coordinates, when `λ` lies in the root lattice.
    pub fn root_lattice_coords(&self, lambda: &Weight) -> Result<Vec<i64>> {
        self.root_basis_coords(lambda)
            .into_iter()
            .map(|r| {
                if r.is_integer() {
                    Ok(r.to_integer())
                } else {
                    Err(Error::NotInRootLattice(lambda.to_string()))
                }
            })
            .collect()
    }

    /// `⟨λ, β∨⟩`.
    pub fn pairing(&self, lambda: &Weight, beta: &Root) -> i64 {
        lambda
            .0
            .iter()
            .zip(&beta.coroot_coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// `sᵢ(λ) = λ − ⟨λ, αᵢ∨⟩ αᵢ`.
    pub fn reflect(&self, lambda: &Weight, i: usize) -> Weight {
        lambda.add_scaled(&self.simple[i], -lambda.coord(i))
    }

    pub fn is_singular(&self, lambda: &Weight) -> bool {
        self.positive_roots
            .iter()
            .any(|b| self.pairing(lambda, b) == 0)
    }

    /// Greedy ascent into the dominant chamber: returns the dominant
    /// representative of `W·λ` and the left-to-right word applied.
    pub fn dominant_representative(&self, lambda: &Weight) -> (Weight, Vec<usize>) {
        let mut mu = lambda.clone();
        let mut applied = Vec::new();
        while let Some(i) = mu.0.iter().position(|&c| c < 0) {
            mu = self.reflect(&mu, i);
            applied.push(i);
        }
        (mu, applied)
    }

    /// `min{ℓ(w) : w(λ) dominant}`, counted by greedy ascent.
    ///
    /// Defined for every weight; singular weights are not excluded.
    pub fn index(&self, lambda: &Weight) -> usize {
        self.dominant_representative(lambda).1.len()
    }

    /// `⟨αⱼ, αᵢ∨⟩ = 0`, which is symmetric in `i` and `j`.
    pub fn orthogonal(&self, i: usize, j: usize) -> bool {
        self.cartan[i][j] == 0
    }

    /// Positive roots of the subsystem generated by `subset`.
    pub fn positive_roots_in(&self, subset: &[usize]) -> impl Iterator<Item = &Root> + '_ {
        let mask: Vec<bool> = (0..self.rank()).map(|i| subset.contains(&i)).collect();
        self.positive_roots
            .iter()
            .filter(move |r| r.support().all(|i| mask[i]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(s.parse().unwrap())
    }

    #[test]
    fn admissible_types() {
        for bad in [
            "A0", "B1", "C1", "D2", "E5", "E9", "F3", "G3", "A9", "X2", "A",
        ] {
            assert!(bad.parse::<CartanType>().is_err(), "{bad}");
        }
        for good in ["A1", "B2", "C3", "D4", "E6", "E7", "E8", "F4", "G2", "A8"] {
            assert_eq!(good.parse::<CartanType>().unwrap().to_string(), good);
        }
        assert!("d4".parse::<CartanType>().unwrap().simply_laced());
        assert!(!"B3".parse::<CartanType>().unwrap().simply_laced());
    }

    #[test]
    fn b2_orientation() {
        let b2 = rs("B2");
        assert_eq!(b2.cartan_matrix(), &[vec![2, -1], vec![-2, 2]]);
        let a1 = b2.positive_roots()[0].clone();
        let a2 = b2.positive_roots()[1].clone();
        assert_eq!(a1.root_coords, vec![1, 0]);
        assert_eq!(a2.root_coords, vec![0, 1]);
        // ⟨α₁, α₂∨⟩ = −2, ⟨α₂, α₁∨⟩ = −1
        assert_eq!(b2.pairing(&a1.weight, &a2), -2);
        assert_eq!(b2.pairing(&a2.weight, &a1), -1);
    }

    #[test]
    fn small_root_systems() {
        let a1 = rs("A1");
        assert_eq!(a1.positive_roots().len(), 1);
        assert_eq!(a1.rho(), &Weight::new(vec![1]));

        let b2 = rs("B2");
        let mut coords: Vec<_> = b2
            .positive_roots()
            .iter()
            .map(|r| r.root_coords.clone())
            .collect();
        coords.sort();
        assert_eq!(coords, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]);
        assert_eq!(b2.highest_root().root_coords, vec![1, 2]);

        let a2 = rs("A2");
        assert_eq!(a2.highest_root().root_coords, vec![1, 1]);
    }

    #[test]
    fn root_counts() {
        for (t, n) in [
            ("A3", 6),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
        ] {
            assert_eq!(rs(t).positive_roots().len(), n, "{t}");
        }
    }

    #[test]
    fn rho_is_half_sum_and_roots_self_pair_to_two() {
        for t in [
            "A1", "A4", "B4", "C4", "D5", "E6", "E7", "E8", "F4", "G2", "A8", "B8",
        ] {
            let r = rs(t);
            let mut sum = r.zero();
            for b in r.positive_roots() {
                sum += &b.weight;
                assert_eq!(r.pairing(&b.weight, b), 2, "{t}");
                assert!(b.root_coords.iter().all(|&c| c >= 0));
                assert_eq!(r.from_root_coords(&b.root_coords).unwrap(), b.weight);
            }
            assert_eq!(sum, r.rho() * 2, "{t}");
            for i in 0..r.rank() {
                assert_eq!(r.pairing(r.rho(), &r.root_of(r.simple_root(i)).unwrap()), 1);
            }
        }
    }

    #[test]
    fn reflections_permute_roots() {
        for t in ["B3", "C3", "G2", "F4", "D4"] {
            let r = rs(t);
            for b in r.positive_roots() {
                for i in 0..r.rank() {
                    let img = r.reflect(&b.weight, i);
                    let sign = r.root_sign(&img).expect("reflection of a root is a root");
                    assert_eq!(sign, img != -r.simple_root(i));
                }
            }
        }
    }

    #[test]
    fn singular_and_index_examples() {
        let b2 = rs("B2");
        assert!(b2.is_singular(&b2.zero()));
        assert!(!b2.is_singular(b2.rho()));
        assert!(b2.is_singular(&Weight::fundamental(2, 0)));
        for t in ["A2", "B2", "G2", "D4", "F4"] {
            let r = rs(t);
            assert_eq!(r.index(r.rho()), 0);
            assert_eq!(r.index(&-r.rho()), r.positive_roots().len());
        }
        let a3 = rs("A3");
        for i in 0..3 {
            let beta = -a3.simple_root(i);
            assert_eq!(a3.index(&(&beta + a3.rho())), 1);
        }
    }

    #[test]
    fn root_basis_round_trip() {
        let b2 = rs("B2");
        let w = Weight::new(vec![1, 0]);
        assert_eq!(b2.root_lattice_coords(&w).unwrap(), vec![1, 1]);
        let g2 = rs("G2");
        for b in g2.roots() {
            assert_eq!(g2.root_lattice_coords(&b.weight).unwrap(), b.root_coords);
        }
        let a2 = rs("A2");
        assert!(a2.root_lattice_coords(&Weight::fundamental(2, 0)).is_err());
    }
}
