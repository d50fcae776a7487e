//! Weyl group elements, reduced words, Bruhat order and parabolic subgroups.
//!
//! An element is stored as its matrix on ω-coordinates together with one
//! cached reduced word. Equality is matrix equality.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};

pub const DEFAULT_ENUMERATION_GUARD: u128 = 1_000_000;
pub const DEFAULT_REDUCED_WORD_CAP: usize = 12;

/// A word in the simple reflections, letters 0-based.
///
/// Displayed and parsed 1-based and comma separated, e.g. `"1,2,1"`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" || s == "id" {
            return Ok(Word(Vec::new()));
        }
        s.split(',')
            .map(|tok| {
                let tok = tok.trim();
                match tok.parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(k - 1),
                    _ => Err(Error::Parse(format!("bad letter '{tok}' in word '{s}'"))),
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A word whose product has length equal to the number of letters.
///
/// Only obtainable through [`RootSystem::reduced_word`] or from a
/// [`WeylElt`], so reducedness is checked rather than assumed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ReducedWord(Word);

impl ReducedWord {
    pub fn letters(&self) -> &[usize] {
        self.0.letters()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn last(&self) -> Option<usize> {
        self.0 .0.last().copied()
    }

    /// The word with its last letter removed (still reduced).
    pub fn drop_last(&self) -> ReducedWord {
        let mut v = self.0 .0.clone();
        v.pop();
        ReducedWord(Word(v))
    }

    /// The prefix of length `k` (still reduced).
    pub fn prefix(&self, k: usize) -> ReducedWord {
        ReducedWord(Word(self.0 .0[..k].to_vec()))
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug)]
pub struct WeylElt {
    matrix: Vec<Vec<i64>>,
    word: ReducedWord,
}

impl PartialEq for WeylElt {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElt {}

impl Hash for WeylElt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl fmt::Display for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "e")
        } else {
            write!(f, "s[{}]", self.word)
        }
    }
}

impl WeylElt {
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// The cached reduced word.
    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn act(&self, lambda: &Weight) -> Weight {
        Weight::new(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(lambda.coords()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

impl RootSystem {
    fn reflection_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        let n = self.rank();
        let alpha = self.simple_root(i);
        (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| {
                        let id = i64::from(k == j);
                        if j == i {
                            id - alpha.coord(k)
                        } else {
                            id
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Builds an element from its matrix, recovering a reduced word from the
    /// image of `ρ`: a negative coordinate of `w(ρ)` is a left descent.
    fn element_from_matrix(&self, matrix: Vec<Vec<i64>>) -> WeylElt {
        let probe = WeylElt {
            matrix,
            word: ReducedWord::default(),
        };
        let mut v = probe.act(self.rho());
        let mut letters = Vec::new();
        while let Some(i) = v.coords().iter().position(|&c| c < 0) {
            letters.push(i);
            v = self.reflect(&v, i);
        }
        WeylElt {
            matrix: probe.matrix,
            word: ReducedWord(Word(letters)),
        }
    }

    pub fn identity(&self) -> WeylElt {
        let n = self.rank();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        WeylElt {
            matrix,
            word: ReducedWord::default(),
        }
    }

    pub fn simple_reflection(&self, i: usize) -> Result<WeylElt> {
        self.check_index(i)?;
        Ok(WeylElt {
            matrix: self.reflection_matrix(i),
            word: ReducedWord(Word(vec![i])),
        })
    }

    pub fn compose(&self, u: &WeylElt, v: &WeylElt) -> WeylElt {
        self.element_from_matrix(mat_mul(&u.matrix, &v.matrix))
    }

    /// `sᵢ · w`.
    pub fn left_multiply(&self, i: usize, w: &WeylElt) -> WeylElt {
        self.element_from_matrix(mat_mul(&self.reflection_matrix(i), &w.matrix))
    }

    pub fn inverse(&self, w: &WeylElt) -> WeylElt {
        let mut letters = w.word.letters().to_vec();
        letters.reverse();
        self.element_from_letters(&letters)
            .expect("letters of a valid element")
    }

    /// Product of the simple reflections in `letters`, which need not be reduced.
    pub fn element_from_letters(&self, letters: &[usize]) -> Result<WeylElt> {
        let mut m = self.identity().matrix;
        for &i in letters {
            self.check_index(i)?;
            m = mat_mul(&m, &self.reflection_matrix(i));
        }
        Ok(self.element_from_matrix(m))
    }

    pub fn element(&self, word: &Word) -> Result<WeylElt> {
        self.element_from_letters(word.letters())
    }

    /// Validates reducedness of `word`.
    pub fn reduced_word(&self, word: &Word) -> Result<ReducedWord> {
        let w = self.element(word)?;
        if w.length() == word.len() {
            Ok(ReducedWord(word.clone()))
        } else {
            Err(Error::NotReduced {
                word: word.to_string(),
                length: w.length(),
            })
        }
    }

    pub fn act(&self, w: &WeylElt, lambda: &Weight) -> Weight {
        w.act(lambda)
    }

    /// `w·λ = w(λ+ρ) − ρ`.
    pub fn dot_action(&self, w: &WeylElt, lambda: &Weight) -> Weight {
        &w.act(&(lambda + self.rho())) - self.rho()
    }

    /// `#{β > 0 : w(β) < 0}`.
    pub fn length(&self, w: &WeylElt) -> usize {
        self.positive_roots()
            .iter()
            .filter(|b| self.root_sign(&w.act(&b.weight)) == Some(false))
            .count()
    }

    /// `{αᵢ : ℓ(sᵢw) < ℓ(w)}`.
    pub fn left_descents(&self, w: &WeylElt) -> BTreeSet<usize> {
        let l = w.length();
        (0..self.rank())
            .filter(|&i| self.left_multiply(i, w).length() < l)
            .collect()
    }

    /// `{αᵢ : ℓ(w sᵢ) < ℓ(w)}`, i.e. `w(αᵢ) < 0`.
    pub fn right_descents(&self, w: &WeylElt) -> BTreeSet<usize> {
        (0..self.rank())
            .filter(|&i| self.root_sign(&w.act(self.simple_root(i))) == Some(false))
            .collect()
    }

    /// Longest element of `W_J` by greedy ascent.
    pub fn longest_element(&self, subset: &BTreeSet<usize>) -> WeylElt {
        let mut w = self.identity();
        'ascend: loop {
            for &i in subset {
                let next = self.left_multiply(i, &w);
                if next.length() > w.length() {
                    w = next;
                    continue 'ascend;
                }
            }
            return w;
        }
    }

    pub fn longest(&self) -> WeylElt {
        self.longest_element(&(0..self.rank()).collect())
    }

    /// A reduced word for the longest element `w₀`.
    pub fn longest_word(&self) -> ReducedWord {
        self.longest().word.clone()
    }

    /// `|W_J|` from the positive roots of the parabolic subsystem,
    /// `Π (ht β + 1) / ht β`.
    pub fn parabolic_order(&self, subset: &BTreeSet<usize>) -> u128 {
        let subset: Vec<usize> = subset.iter().copied().collect();
        let (mut num, mut den) = (1u128, 1u128);
        for b in self.positive_roots_in(&subset) {
            let h = b.height() as u128;
            num *= h + 1;
            den *= h;
            let g = num.gcd(&den);
            num /= g;
            den /= g;
        }
        debug_assert_eq!(den, 1);
        num
    }

    /// All elements of `W_J`, breadth first by length.
    pub fn enumerate(&self, subset: &BTreeSet<usize>, guard: u128) -> Result<Vec<WeylElt>> {
        let bound = self.parabolic_order(subset);
        if bound > guard {
            return Err(Error::GuardExceeded { bound, guard });
        }
        let rho = self.rho().clone();
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut out = vec![self.identity()];
        seen.insert(rho);
        let mut level_start = 0;
        while level_start < out.len() {
            let level_end = out.len();
            for k in level_start..level_end {
                for &i in subset {
                    let next = self.left_multiply(i, &out[k]);
                    if next.length() > out[k].length() && seen.insert(next.act(self.rho())) {
                        out.push(next);
                    }
                }
            }
            level_start = level_end;
        }
        Ok(out)
    }

    pub fn enumerate_all(&self) -> Result<Vec<WeylElt>> {
        self.enumerate(&(0..self.rank()).collect(), DEFAULT_ENUMERATION_GUARD)
    }

    /// Every reduced word of `w`, in lexicographic order.
    pub fn all_reduced_words(&self, w: &WeylElt, cap: usize) -> Result<Vec<ReducedWord>> {
        if w.length() > cap {
            return Err(Error::WordCapExceeded {
                length: w.length(),
                cap,
            });
        }
        let mut memo: HashMap<Weight, Vec<Vec<usize>>> = HashMap::new();
        let mut words = self.reduced_words_rec(w, &mut memo);
        words.sort();
        Ok(words.into_iter().map(|v| ReducedWord(Word(v))).collect())
    }

    fn reduced_words_rec(
        &self,
        w: &WeylElt,
        memo: &mut HashMap<Weight, Vec<Vec<usize>>>,
    ) -> Vec<Vec<usize>> {
        if w.is_identity() {
            return vec![Vec::new()];
        }
        let key = w.act(self.rho());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let mut out = Vec::new();
        for i in 0..self.rank() {
            if key.coord(i) < 0 {
                let shorter = self.left_multiply(i, w);
                for tail in self.reduced_words_rec(&shorter, memo) {
                    let mut word = Vec::with_capacity(tail.len() + 1);
                    word.push(i);
                    word.extend(tail);
                    out.push(word);
                }
            }
        }
        memo.insert(key, out.clone());
        out
    }

    /// Bruhat order by the subword property, recursing on the first letter
    /// of the cached reduced word of `w`.
    pub fn bruhat_leq(&self, u: &WeylElt, w: &WeylElt) -> bool {
        if u.length() > w.length() {
            return false;
        }
        match w.word.letters().first() {
            None => u.is_identity(),
            Some(&s) => {
                let sw = self.left_multiply(s, w);
                let su = self.left_multiply(s, u);
                if su.length() < u.length() {
                    self.bruhat_leq(&su, &sw)
                } else {
                    self.bruhat_leq(u, &sw)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(s.parse().unwrap())
    }

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn word_parsing() {
        assert_eq!(word("1,2,1").0, vec![0, 1, 0]);
        assert_eq!(word(" 3 , 1").to_string(), "3,1");
        assert!(word("").is_empty());
        assert!("1,0".parse::<Word>().is_err());
        assert!("1,x".parse::<Word>().is_err());
    }

    #[test]
    fn simple_reflection_action() {
        let b2 = rs("B2");
        let s1 = b2.simple_reflection(0).unwrap();
        let s2 = b2.simple_reflection(1).unwrap();
        assert_eq!(
            s1.act(&Weight::fundamental(2, 1)),
            Weight::fundamental(2, 1)
        );
        assert_eq!(
            s2.act(&Weight::fundamental(2, 0)),
            Weight::fundamental(2, 0)
        );
        // s₂(α₁) = α₁ + 2α₂
        let a1 = b2.simple_root(0).clone();
        assert_eq!(s2.act(&a1), b2.from_root_coords(&[1, 2]).unwrap());
        assert!(b2.simple_reflection(2).is_err());

        let a1s = rs("A1");
        let s = a1s.simple_reflection(0).unwrap();
        assert_eq!(s.act(a1s.simple_root(0)), -a1s.simple_root(0));
    }

    #[test]
    fn dot_action_examples() {
        let a1 = rs("A1");
        let s = a1.simple_reflection(0).unwrap();
        assert_eq!(a1.dot_action(&s, &a1.zero()), -a1.simple_root(0));
        let b2 = rs("B2");
        for w in b2.enumerate_all().unwrap() {
            assert_eq!(b2.dot_action(&w, &-b2.rho()), -b2.rho());
        }
        let s2 = b2.simple_reflection(1).unwrap();
        let a1w = b2.simple_root(0).clone();
        assert_eq!(
            b2.dot_action(&s2, &a1w),
            b2.from_root_coords(&[1, 1]).unwrap()
        );
    }

    #[test]
    fn lengths_and_longest() {
        let b2 = rs("B2");
        assert_eq!(b2.length(&b2.identity()), 0);
        let w0 = b2.longest();
        assert_eq!(b2.length(&w0), 4);
        assert_eq!(w0, b2.element(&word("1,2,1,2")).unwrap());
        for t in ["A3", "B3", "G2", "D4"] {
            let r = rs(t);
            let w0 = r.longest();
            for b in r.positive_roots() {
                assert_eq!(r.root_sign(&w0.act(&b.weight)), Some(false));
            }
        }
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(rs("A2").enumerate_all().unwrap().len(), 6);
        assert_eq!(rs("B2").enumerate_all().unwrap().len(), 8);
        assert_eq!(rs("G2").enumerate_all().unwrap().len(), 12);
        assert_eq!(rs("A3").enumerate_all().unwrap().len(), 24);
        assert_eq!(rs("D4").enumerate_all().unwrap().len(), 192);
        let b3 = rs("B3");
        assert_eq!(
            b3.enumerate(&BTreeSet::new(), 10).unwrap(),
            vec![b3.identity()]
        );
        assert_eq!(b3.enumerate(&[0, 1].into(), 100).unwrap().len(), 6);
        let e8 = rs("E8");
        match e8.enumerate_all() {
            Err(Error::GuardExceeded { bound, .. }) => assert_eq!(bound, 696_729_600),
            other => panic!("expected guard refusal, got {other:?}"),
        }
        assert_eq!(rs("F4").parabolic_order(&(0..4).collect()), 1152);
        assert_eq!(rs("E6").parabolic_order(&(0..6).collect()), 51840);
    }

    #[test]
    fn reduced_word_examples() {
        let a2 = rs("A2");
        let words: Vec<String> = a2
            .all_reduced_words(&a2.longest(), 12)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(words, vec!["1,2,1", "2,1,2"]);
        let b2 = rs("B2");
        let w = b2.element(&word("1,2,1")).unwrap();
        let words = b2.all_reduced_words(&w, 12).unwrap();
        assert_eq!(words.len(), 1);
        assert_eq!(words[0].to_string(), "1,2,1");
        let s = b2.simple_reflection(1).unwrap();
        assert_eq!(b2.all_reduced_words(&s, 12).unwrap()[0].to_string(), "2");
        let e8 = rs("E8");
        assert!(matches!(
            e8.all_reduced_words(&e8.longest(), 12),
            Err(Error::WordCapExceeded {
                length: 120,
                cap: 12
            })
        ));
    }

    #[test]
    fn reducedness_is_checked() {
        let b2 = rs("B2");
        assert!(b2.reduced_word(&word("1,2,1")).is_ok());
        assert!(matches!(
            b2.reduced_word(&word("1,1")),
            Err(Error::NotReduced { length: 0, .. })
        ));
        assert!(b2.reduced_word(&word("1,2,1,2,1")).is_err());
    }

    #[test]
    fn descents() {
        let b2 = rs("B2");
        assert_eq!(b2.left_descents(&b2.longest()), [0, 1].into());
        assert_eq!(
            b2.left_descents(&b2.simple_reflection(0).unwrap()),
            [0].into()
        );
        assert_eq!(
            b2.left_descents(&b2.element(&word("1,2,1")).unwrap()),
            [0].into()
        );
    }

    #[test]
    fn bruhat_examples() {
        let b2 = rs("B2");
        let w = b2.element(&word("1,2,1")).unwrap();
        let s2 = b2.simple_reflection(1).unwrap();
        assert!(b2.bruhat_leq(&s2, &w));
        assert!(!b2.bruhat_leq(&w, &s2));
        for u in b2.enumerate_all().unwrap() {
            assert!(b2.bruhat_leq(&b2.identity(), &u));
            assert!(b2.bruhat_leq(&u, &b2.longest()));
        }
    }
}
