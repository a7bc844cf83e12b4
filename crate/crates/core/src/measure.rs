//! Finitely supported probability measures with exact rational weights.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A probability measure on a finite support. Weights are positive and sum
/// to exactly one; zero weights are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbMeasure<K: Ord> {
    weights: BTreeMap<K, Rational>,
}

impl<K: Ord + Clone> ProbMeasure<K> {
    pub fn point_mass(k: K) -> Self {
        let mut weights = BTreeMap::new();
        weights.insert(k, Rational::one());
        ProbMeasure { weights }
    }

    /// Uniform measure on a nonempty set; duplicates are ignored.
    pub fn uniform(support: impl IntoIterator<Item = K>) -> Result<Self> {
        let set: BTreeSet<K> = support.into_iter().collect();
        if set.is_empty() {
            return Err(Error::input("uniform measure on an empty set"));
        }
        let w = rat(1, set.len() as i64);
        Ok(ProbMeasure {
            weights: set.into_iter().map(|k| (k, w.clone())).collect(),
        })
    }

    /// Validates and normalizes an explicit weight table. Entries for equal
    /// keys are added; zero entries are dropped.
    pub fn from_weights(entries: impl IntoIterator<Item = (K, Rational)>) -> Result<Self> {
        let mut weights: BTreeMap<K, Rational> = BTreeMap::new();
        for (k, w) in entries {
            if w.is_negative() {
                return Err(Error::input("negative weight"));
            }
            *weights.entry(k).or_insert_with(Rational::zero) += w;
        }
        weights.retain(|_, w| !w.is_zero());
        let total: Rational = weights.values().sum();
        if !total.is_one() {
            return Err(Error::input(format!("weights sum to {total}, not 1")));
        }
        Ok(ProbMeasure { weights })
    }

    /// `sum_i c_i mu_i` for nonnegative coefficients summing to one.
    pub fn convex_combination<'a>(
        terms: impl IntoIterator<Item = (Rational, &'a ProbMeasure<K>)>,
    ) -> Result<Self>
    where
        K: 'a,
    {
        let mut entries = Vec::new();
        for (c, m) in terms {
            for (k, w) in &m.weights {
                entries.push((k.clone(), &c * w));
            }
        }
        Self::from_weights(entries)
    }

    pub fn weight(&self, k: &K) -> Rational {
        self.weights.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &K> {
        self.weights.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.weights.iter()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total_mass(&self) -> Rational {
        self.weights.values().sum()
    }

    /// Push-forward along `f`; keys with the same image merge.
    pub fn map_keys<J: Ord + Clone>(&self, mut f: impl FnMut(&K) -> J) -> ProbMeasure<J> {
        let mut weights: BTreeMap<J, Rational> = BTreeMap::new();
        for (k, w) in &self.weights {
            *weights.entry(f(k)).or_insert_with(Rational::zero) += w;
        }
        ProbMeasure { weights }
    }

    /// Fallible push-forward.
    pub fn try_map_keys<J: Ord + Clone>(
        &self,
        mut f: impl FnMut(&K) -> Result<J>,
    ) -> Result<ProbMeasure<J>> {
        let mut weights: BTreeMap<J, Rational> = BTreeMap::new();
        for (k, w) in &self.weights {
            *weights.entry(f(k)?).or_insert_with(Rational::zero) += w;
        }
        Ok(ProbMeasure { weights })
    }

    /// `sum_k |mu(k) - nu(k)|`.
    pub fn l1_distance(&self, other: &Self) -> Rational {
        let mut total = Rational::zero();
        let keys: BTreeSet<&K> = self.weights.keys().chain(other.weights.keys()).collect();
        for k in keys {
            total += (self.weight(k) - other.weight(k)).abs();
        }
        total
    }

    /// `max_k |mu(k) - nu(k)|`.
    pub fn sup_distance(&self, other: &Self) -> Rational {
        let keys: BTreeSet<&K> = self.weights.keys().chain(other.weights.keys()).collect();
        keys.into_iter()
            .map(|k| (self.weight(k) - other.weight(k)).abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl<K: Ord + Clone + fmt::Display> ProbMeasure<K> {
    /// Space-separated `key:num/den` entries in key order.
    pub fn serialize(&self) -> String {
        self.serialize_with(|k| k.to_string())
    }
}

impl<K: Ord + Clone> ProbMeasure<K> {
    pub fn serialize_with(&self, mut name: impl FnMut(&K) -> String) -> String {
        let parts: Vec<String> = self
            .weights
            .iter()
            .map(|(k, w)| format!("{}:{}/{}", name(k), w.numer(), w.denom()))
            .collect();
        parts.join(" ")
    }
}

/// Converts a finite nonnegative double to the exact rational it denotes.
pub fn rational_from_f64(x: f64) -> Rational {
    BigRational::from_float(x).unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_weights_are_exact() {
        let m = ProbMeasure::uniform(0..5usize).unwrap();
        assert!(m.iter().all(|(_, w)| *w == rat(1, 5)));
        assert!(m.total_mass().is_one());
        assert!(ProbMeasure::<usize>::uniform(std::iter::empty()).is_err());
        let p = ProbMeasure::uniform([7usize]).unwrap();
        assert_eq!(p, ProbMeasure::point_mass(7));
    }

    #[test]
    fn from_weights_validates() {
        assert!(ProbMeasure::from_weights([(1usize, rat(1, 2))]).is_err());
        assert!(ProbMeasure::from_weights([(1usize, rat(3, 2)), (2, rat(-1, 2))]).is_err());
        let m = ProbMeasure::from_weights([(1usize, rat(1, 2)), (1, rat(1, 2)), (2, rat(0, 1))]).unwrap();
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn distances_and_serialization() {
        let a = ProbMeasure::uniform([0usize, 1]).unwrap();
        let b = ProbMeasure::uniform([1usize, 2, 3]).unwrap();
        // |1/2| + |1/2 - 1/3| + 1/3 + 1/3
        assert_eq!(a.l1_distance(&b), rat(4, 3));
        assert_eq!(a.sup_distance(&b), rat(1, 2));
        assert_eq!(a.serialize(), "0:1/2 1:1/2");
        let c = ProbMeasure::convex_combination([(rat(1, 2), &a), (rat(1, 2), &b)]).unwrap();
        assert_eq!(c.weight(&1), rat(5, 12));
        assert_eq!(a.map_keys(|_| 0u8), ProbMeasure::point_mass(0u8));
    }
}
