//! Sparse vectors over a fixed basis, keyed by basis index.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::scalar::{one, Q};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Vector(BTreeMap<usize, Q>);

impl Vector {
    pub fn new() -> Self {
        Vector(BTreeMap::new())
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, one())
    }

    pub fn term(i: usize, c: Q) -> Self {
        let mut v = Self::new();
        v.add_term(i, c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Q {
        self.0.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.0.iter().map(|(k, v)| (*k, v))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn add_term(&mut self, i: usize, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(i).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, other: &Vector, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (i, x) in other.iter() {
            self.add_term(i, x * c);
        }
    }

    pub fn add(&mut self, other: &Vector) {
        for (i, x) in other.iter() {
            self.add_term(i, x.clone());
        }
    }

    pub fn scaled(&self, c: &Q) -> Vector {
        let mut out = Vector::new();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|(k, v)| (*k, -v.clone())).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_scaled(other, &-one());
        out
    }

    /// Re-indexes through `f`; terms mapped to `None` are dropped.
    pub fn map_indices(&self, f: impl Fn(usize) -> Option<usize>) -> Vector {
        let mut out = Vector::new();
        for (i, c) in self.iter() {
            if let Some(j) = f(i) {
                out.add_term(j, c.clone());
            }
        }
        out
    }
}

impl FromIterator<(usize, Q)> for Vector {
    fn from_iter<T: IntoIterator<Item = (usize, Q)>>(iter: T) -> Self {
        let mut v = Vector::new();
        for (i, c) in iter {
            v.add_term(i, c);
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn cancellation_removes_terms() {
        let mut v = Vector::term(3, q(2));
        v.add_term(3, q(-2));
        assert!(v.is_zero());
        let w: Vector = [(1, q(1)), (2, q(3)), (1, q(-1))].into_iter().collect();
        assert_eq!(w, Vector::term(2, q(3)));
    }
}
