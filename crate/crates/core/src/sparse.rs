//! Sparse vectors with exact coefficients over an ordered key set.
//!
//! Every algebraic object in the crate (elements of `U(d)`, tensors over it,
//! module vectors) is a `Sparse<K>` for a suitable key type. Zero coefficients
//! are never stored, so structural equality is mathematical equality.

use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sparse<K: Ord> {
    terms: BTreeMap<K, Q>,
}

impl<K: Ord> Default for Sparse<K> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Sparse<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(key: K, coeff: Q) -> Self {
        let mut s = Self::new();
        s.add_term(key, coeff);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, key: &K) -> Q {
        self.terms.get(key).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Q> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Q> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: K, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Re-keys every term; colliding images are summed.
    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> Sparse<K2> {
        let mut out = Sparse::new();
        for (k, v) in &self.terms {
            out.add_term(f(k), v.clone());
        }
        out
    }

    /// Keeps the terms whose key satisfies `pred`.
    pub fn filter(&self, mut pred: impl FnMut(&K) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| pred(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn into_terms(self) -> BTreeMap<K, Q> {
        self.terms
    }
}

impl<K: Ord + Clone> FromIterator<(K, Q)> for Sparse<K> {
    fn from_iter<I: IntoIterator<Item = (K, Q)>>(iter: I) -> Self {
        let mut s = Self::new();
        for (k, v) in iter {
            s.add_term(k, v);
        }
        s
    }
}

impl<'a, K: Ord> IntoIterator for &'a Sparse<K> {
    type Item = (&'a K, &'a Q);
    type IntoIter = btree_map::Iter<'a, K, Q>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + Clone> Add for &Sparse<K> {
    type Output = Sparse<K>;
    fn add(self, rhs: Self) -> Sparse<K> {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<K: Ord + Clone> Sub for &Sparse<K> {
    type Output = Sparse<K>;
    fn sub(self, rhs: Self) -> Sparse<K> {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), -v.clone());
        }
        out
    }
}

impl<K: Ord + Clone> Neg for &Sparse<K> {
    type Output = Sparse<K>;
    fn neg(self) -> Sparse<K> {
        Sparse {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v.clone())).collect(),
        }
    }
}
