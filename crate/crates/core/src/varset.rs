//! Variable-index subsets of a ring with at most 64 variables.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VARS: usize = 64;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VarSet(u64);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VarSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VarSet(u64::MAX)
        } else {
            VarSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        VarSet(1 << i)
    }

    pub fn from_indices(it: impl IntoIterator<Item = usize>) -> Self {
        VarSet(it.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    /// Resolves variable names against `vars`.
    pub fn from_names<S: AsRef<str>>(vars: &[String], names: &[S]) -> Result<Self> {
        let mut set = VarSet::EMPTY;
        for name in names {
            let name = name.as_ref();
            let i = vars
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::Parse(format!("unknown variable '{name}'")))?;
            set.insert(i);
        }
        Ok(set)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: VarSet) -> VarSet {
        VarSet(self.0 | o.0)
    }

    pub fn intersection(self, o: VarSet) -> VarSet {
        VarSet(self.0 & o.0)
    }

    pub fn difference(self, o: VarSet) -> VarSet {
        VarSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: VarSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn names(self, vars: &[String]) -> Vec<String> {
        self.iter().map(|i| vars[i].clone()).collect()
    }

    /// Key for "cardinality, then lexicographic on sorted indices" ordering.
    pub fn size_lex_key(self) -> (usize, Vec<usize>) {
        (self.len(), self.to_vec())
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// All subsets of `universe`, by increasing cardinality then lexicographic
/// order of their sorted index lists.
pub fn subsets_by_size(universe: VarSet) -> Vec<VarSet> {
    let elems = universe.to_vec();
    let mut out = Vec::with_capacity(1 << elems.len());
    for k in 0..=elems.len() {
        combinations(&elems, k, &mut |c| out.push(VarSet::from_indices(c.iter().copied())));
    }
    out
}

/// Calls `f` on each `k`-subset of `elems` in lexicographic order.
pub fn combinations<T: Copy>(elems: &[T], k: usize, f: &mut dyn FnMut(&[T])) {
    fn rec<T: Copy>(elems: &[T], k: usize, start: usize, cur: &mut Vec<T>, f: &mut dyn FnMut(&[T])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let need = k - cur.len();
        for i in start..=elems.len().saturating_sub(need) {
            if elems.len() < need {
                break;
            }
            cur.push(elems[i]);
            rec(elems, k, i + 1, cur, f);
            cur.pop();
        }
    }
    if k > elems.len() {
        return;
    }
    rec(elems, k, 0, &mut Vec::with_capacity(k), f);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_ordered_by_size_then_lex() {
        let subs = subsets_by_size(VarSet::from_indices([0, 1, 2]));
        let lists: Vec<Vec<usize>> = subs.iter().map(|s| s.to_vec()).collect();
        assert_eq!(
            lists,
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![2],
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 1, 2]
            ]
        );
    }

    #[test]
    fn set_algebra() {
        let a = VarSet::from_indices([0, 2, 5]);
        let b = VarSet::from_indices([2, 3]);
        assert_eq!(a.intersection(b).to_vec(), vec![2]);
        assert_eq!(a.difference(b).to_vec(), vec![0, 5]);
        assert!(VarSet::from_indices([2]).is_subset(b));
        assert_eq!(a.first(), Some(0));
        assert_eq!(VarSet::full(3).len(), 3);
    }
}
