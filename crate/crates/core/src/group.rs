//! Free products of cyclic groups with normal-form words.
//!
//! A factor of order `p >= 2` is `Z/p`; order 0 stands for `Z`. Each factor
//! has a lowercase letter; the uppercase letter is its inverse and `e` is
//! reserved for the identity. An element is stored as its alternating
//! syllable normal form, so equality of elements is equality of values.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Normal form: syllables `(letter, exponent)` with consecutive letters
/// distinct; exponents lie in `1..p` for `Z/p` and are nonzero for `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GroupElement {
    syllables: Vec<(char, i64)>,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement::default()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllables(&self) -> &[(char, i64)] {
        &self.syllables
    }

    /// Number of letters in the displayed word.
    pub fn word_len(&self) -> u64 {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    /// Letters from left to right, uppercase for negative exponents.
    pub fn letters(&self) -> impl Iterator<Item = char> + '_ {
        self.syllables.iter().flat_map(|&(c, e)| {
            let c = if e < 0 { c.to_ascii_uppercase() } else { c };
            std::iter::repeat_n(c, e.unsigned_abs() as usize)
        })
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "e");
        }
        for c in self.letters() {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Shorter words first, then lexicographic on the displayed letters.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word_len()
            .cmp(&other.word_len())
            .then_with(|| self.letters().cmp(other.letters()))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeProduct {
    factors: Vec<(char, u32)>,
}

impl FreeProduct {
    pub fn new(factors: &[(char, u32)]) -> Result<Self> {
        let mut seen = Vec::new();
        for &(c, p) in factors {
            if !c.is_ascii_lowercase() || c == 'e' {
                return Err(Error::input(format!("generator name {c:?} must be a lowercase letter other than e")));
            }
            if seen.contains(&c) {
                return Err(Error::input(format!("generator {c} declared twice")));
            }
            if p == 1 {
                return Err(Error::input(format!("generator {c} has order 1")));
            }
            seen.push(c);
        }
        Ok(FreeProduct {
            factors: factors.to_vec(),
        })
    }

    pub fn trivial() -> Self {
        FreeProduct { factors: Vec::new() }
    }

    /// `Z/p * Z/q` on letters `a` and `b`.
    pub fn cyclic_pair(p: u32, q: u32) -> Result<Self> {
        FreeProduct::new(&[('a', p), ('b', q)])
    }

    pub fn factors(&self) -> &[(char, u32)] {
        &self.factors
    }

    /// Order of the factor named `c`; 0 means infinite cyclic.
    pub fn factor_order(&self, c: char) -> Result<u32> {
        self.factors
            .iter()
            .find(|(d, _)| *d == c)
            .map(|&(_, p)| p)
            .ok_or_else(|| Error::input(format!("unknown generator {c}")))
    }

    /// The generators, in declaration order.
    pub fn generators(&self) -> Vec<GroupElement> {
        self.factors
            .iter()
            .map(|&(c, _)| GroupElement {
                syllables: vec![(c, 1)],
            })
            .collect()
    }

    fn reduce_exp(&self, c: char, e: i64) -> i64 {
        let p = self.factor_order(c).expect("validated letter") as i64;
        if p == 0 {
            e
        } else {
            e.rem_euclid(p)
        }
    }

    /// Appends one syllable to a normal form, merging and cancelling.
    fn push(&self, out: &mut Vec<(char, i64)>, c: char, e: i64) {
        let e = self.reduce_exp(c, e);
        if e == 0 {
            return;
        }
        match out.last_mut() {
            Some((d, f)) if *d == c => {
                let merged = self.reduce_exp(c, *f + e);
                if merged == 0 {
                    out.pop();
                } else {
                    *f = merged;
                }
            }
            _ => out.push((c, e)),
        }
    }

    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let mut out = x.syllables.clone();
        for &(c, e) in &y.syllables {
            self.push(&mut out, c, e);
        }
        GroupElement { syllables: out }
    }

    pub fn inv(&self, x: &GroupElement) -> GroupElement {
        let mut out = Vec::with_capacity(x.syllables.len());
        for &(c, e) in x.syllables.iter().rev() {
            self.push(&mut out, c, -e);
        }
        GroupElement { syllables: out }
    }

    pub fn pow(&self, x: &GroupElement, m: i64) -> GroupElement {
        let base = if m < 0 { self.inv(x) } else { x.clone() };
        let mut acc = GroupElement::identity();
        for _ in 0..m.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    /// Parses a word over the generator letters; `e` or the empty string is
    /// the identity.
    pub fn parse(&self, word: &str) -> Result<GroupElement> {
        let word = word.trim();
        if word == "e" || word.is_empty() {
            return Ok(GroupElement::identity());
        }
        let mut out = Vec::new();
        for ch in word.chars() {
            let lower = ch.to_ascii_lowercase();
            if lower == 'e' || self.factor_order(lower).is_err() {
                return Err(Error::input(format!("unknown letter {ch:?} in word {word:?}")));
            }
            self.push(&mut out, lower, if ch.is_ascii_uppercase() { -1 } else { 1 });
        }
        Ok(GroupElement { syllables: out })
    }

    /// Element order, `None` when infinite.
    pub fn order(&self, x: &GroupElement) -> Option<u64> {
        // Conjugate to a cyclically reduced form.
        let mut s: std::collections::VecDeque<(char, i64)> = x.syllables.iter().copied().collect();
        while s.len() >= 2 && s.front().map(|f| f.0) == s.back().map(|b| b.0) {
            let (c, e1) = s.pop_front().expect("len >= 2");
            let (_, e2) = s.pop_back().expect("len >= 2");
            let e = self.reduce_exp(c, e1 + e2);
            if e != 0 {
                s.push_back((c, e));
            }
        }
        match s.len() {
            0 => Some(1),
            1 => {
                let (c, e) = s[0];
                let p = self.factor_order(c).expect("validated letter") as i64;
                if p == 0 {
                    None
                } else {
                    Some((p / num_integer::gcd(p, e)) as u64)
                }
            }
            _ => None,
        }
    }

    /// All elements with `word_len <= radius`, in ascending element order.
    pub fn elements_up_to(&self, radius: u64) -> Vec<GroupElement> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.extend_words(&mut cur, radius, &mut out);
        out.sort();
        out
    }

    fn extend_words(&self, cur: &mut Vec<(char, i64)>, budget: u64, out: &mut Vec<GroupElement>) {
        out.push(GroupElement {
            syllables: cur.clone(),
        });
        for &(c, p) in &self.factors {
            if cur.last().map(|s| s.0) == Some(c) {
                continue;
            }
            let exps: Vec<i64> = if p == 0 {
                (1..=budget as i64).flat_map(|e| [e, -e]).collect()
            } else {
                (1..p as i64).filter(|&e| e as u64 <= budget).collect()
            };
            for e in exps {
                cur.push((c, e));
                self.extend_words(cur, budget - e.unsigned_abs(), out);
                cur.pop();
            }
        }
    }
}
