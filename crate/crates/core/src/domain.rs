//! Finite integer domains and variable handles.

use std::fmt;

/// Handle of a variable inside a [`ProblemState`](crate::engine::ProblemState).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarRef(pub usize);

impl VarRef {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VarRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A finite set of integers stored as a sorted vector without duplicates.
///
/// Removal never adds values, so the size of a domain only shrinks. An empty
/// domain marks failure of the state holding it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Domain {
    values: Vec<i64>,
}

impl Domain {
    pub fn new<I: IntoIterator<Item = i64>>(values: I) -> Self {
        let mut values: Vec<i64> = values.into_iter().collect();
        values.sort_unstable();
        values.dedup();
        Domain { values }
    }

    /// The interval `lo..=hi`; empty when `lo > hi`.
    pub fn range(lo: i64, hi: i64) -> Self {
        Domain {
            values: (lo..=hi).collect(),
        }
    }

    pub fn singleton(v: i64) -> Self {
        Domain { values: vec![v] }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn is_assigned(&self) -> bool {
        self.values.len() == 1
    }

    /// The value of an assigned domain.
    #[inline]
    pub fn value(&self) -> Option<i64> {
        if self.values.len() == 1 {
            Some(self.values[0])
        } else {
            None
        }
    }

    #[inline]
    pub fn min(&self) -> Option<i64> {
        self.values.first().copied()
    }

    #[inline]
    pub fn max(&self) -> Option<i64> {
        self.values.last().copied()
    }

    #[inline]
    pub fn contains(&self, v: i64) -> bool {
        self.values.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.values.iter().copied()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Removes `v`; returns whether the domain changed.
    pub fn remove(&mut self, v: i64) -> bool {
        match self.values.binary_search(&v) {
            Ok(pos) => {
                self.values.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    /// Narrows the domain to `{v}` (or to the empty set when `v` is absent).
    pub fn assign(&mut self, v: i64) -> bool {
        if self.values.is_empty() || (self.values.len() == 1 && self.values[0] == v) {
            return false;
        }
        let had = self.contains(v);
        self.values.clear();
        if had {
            self.values.push(v);
        }
        true
    }

    /// Keeps only values satisfying `keep`; returns whether the domain changed.
    pub fn retain<F: FnMut(i64) -> bool>(&mut self, mut keep: F) -> bool {
        let before = self.values.len();
        self.values.retain(|&v| keep(v));
        self.values.len() != before
    }

    /// Removes every value outside `lo..=hi`.
    pub fn restrict_to_range(&mut self, lo: i64, hi: i64) -> bool {
        match (self.min(), self.max()) {
            (Some(min), Some(max)) if min >= lo && max <= hi => false,
            (None, _) | (_, None) => false,
            _ => self.retain(|v| v >= lo && v <= hi),
        }
    }

    /// Whether the two domains share at least one value.
    pub fn intersects(&self, other: &Domain) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.values.len() && j < other.values.len() {
            match self.values[i].cmp(&other.values[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn is_subset_of(&self, other: &Domain) -> bool {
        self.values.iter().all(|&v| other.contains(v))
    }
}

impl FromIterator<i64> for Domain {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        Domain::new(iter)
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}
