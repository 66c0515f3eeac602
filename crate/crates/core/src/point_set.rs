//! Bitset over point indices `0..n`.
//!
//! Every set that occurs in this crate (domains, hulls, iterated domains,
//! invariant sets, pair components) is a subset of a fixed finite point space,
//! so a single machine word suffices and all set algebra is branch-free.

use std::fmt;

/// Hard cap on the number of points of a space: sets are stored in a `u64`.
pub const MAX_POINTS: usize = 64;

/// A set of point indices drawn from `{0, …, n-1}` for some ambient size
/// `n ≤ 64` carried by the owning system.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PointSet(u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    /// The full space `{0, …, n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_POINTS);
        if n == MAX_POINTS {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(x: usize) -> Self {
        assert!(x < MAX_POINTS);
        PointSet(1u64 << x)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        let mut s = PointSet::EMPTY;
        for &x in indices {
            s.insert(x);
        }
        s
    }

    pub fn from_bits(bits: u64) -> Self {
        PointSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn insert(&mut self, x: usize) {
        assert!(x < MAX_POINTS);
        self.0 |= 1u64 << x;
    }

    pub fn remove(&mut self, x: usize) {
        assert!(x < MAX_POINTS);
        self.0 &= !(1u64 << x);
    }

    pub fn contains(self, x: usize) -> bool {
        x < MAX_POINTS && self.0 & (1u64 << x) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    pub fn intersect(self, other: PointSet) -> PointSet {
        PointSet(self.0 & other.0)
    }

    pub fn minus(self, other: PointSet) -> PointSet {
        PointSet(self.0 & !other.0)
    }

    /// Complement inside the ambient space of size `n`.
    pub fn complement(self, n: usize) -> PointSet {
        PointSet::full(n).minus(self)
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Ascending iterator over members.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let x = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(x)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in ascending bit-pattern order.
    pub fn subsets(self) -> impl Iterator<Item = PointSet> {
        let mask = self.0;
        let mut sub: u64 = 0;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let current = PointSet(sub);
            if sub == mask {
                done = true;
            } else {
                sub = (sub.wrapping_sub(mask)) & mask;
            }
            Some(current)
        })
    }

    /// Sort key used for all deterministic enumeration orders:
    /// ascending cardinality, ties broken by numeric bit value.
    pub fn order_key(self) -> (usize, u64) {
        (self.len(), self.0)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = PointSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}
