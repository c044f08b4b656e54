//! Sparse rational vectors and an incremental row-echelon basis.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::Rational;

pub type SparseVec<K> = BTreeMap<K, Rational>;

pub fn add_scaled<K: Ord + Clone>(target: &mut SparseVec<K>, source: &SparseVec<K>, factor: &Rational) {
    if factor.is_zero() {
        return;
    }
    for (k, v) in source {
        add_entry(target, k.clone(), v * factor);
    }
}

pub fn add_entry<K: Ord>(target: &mut SparseVec<K>, key: K, value: Rational) {
    if value.is_zero() {
        return;
    }
    match target.entry(key) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += value;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(value);
        }
    }
}

/// Row-echelon basis of a subspace. Each row's pivot is its smallest key,
/// normalised to 1.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, key: &K) -> bool {
        self.rows.contains_key(key)
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.values()
    }

    /// Eliminates every pivot coordinate from `v`.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        if self.rows.is_empty() {
            return v;
        }
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.iter().find(|(k, _)| self.rows.contains_key(*k)),
                Some(c) => v
                    .range((std::ops::Bound::Excluded(c.clone()), std::ops::Bound::Unbounded))
                    .find(|(k, _)| self.rows.contains_key(*k)),
            };
            let Some((k, c)) = next.map(|(k, c)| (k.clone(), c.clone())) else {
                break;
            };
            let row = &self.rows[&k];
            add_scaled(&mut v, row, &-c);
            cursor = Some(k);
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let mut r = self.reduce(v);
        let Some((k, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        if !lead.is_one() {
            let inv = lead.recip();
            for c in r.values_mut() {
                *c *= &inv;
            }
        }
        self.rows.insert(k, r);
        true
    }

    /// Back-substitutes so every row is zero on the other pivots.
    pub fn into_reduced(mut self) -> Self {
        let keys: Vec<K> = self.rows.keys().rev().cloned().collect();
        for k in keys {
            let row = self.rows.remove(&k).unwrap();
            let lead = row[&k].clone();
            let mut rest = row;
            rest.remove(&k);
            let mut rest = self.reduce(rest);
            rest.insert(k.clone(), lead);
            self.rows.insert(k, rest);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, c)| (k, Rational::from_integer(c.into()))).collect()
    }

    #[test]
    fn rank_and_reduction() {
        let mut e = Echelon::new();
        assert!(e.insert(v(&[(0, 1), (1, 1)])));
        assert!(e.insert(v(&[(1, 1), (2, 1)])));
        assert!(!e.insert(v(&[(0, 1), (1, 2), (2, 1)])));
        assert_eq!(e.rank(), 2);
        let r = e.reduce(v(&[(0, 1)]));
        // x0 = -x1 = x2 modulo the span
        assert_eq!(r, v(&[(2, 1)]));
        let red = e.into_reduced();
        assert_eq!(red.rows().next().unwrap(), &v(&[(0, 1), (2, -1)]));
    }
}
