//! Small candidate sets stored as bitmasks over candidate indices.

use std::fmt;

/// Upper bound on the size of a candidate universe.
pub const MAX_CANDIDATES: usize = 32;

/// A set of candidate indices `0..MAX_CANDIDATES`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandSet(u32);

impl CandSet {
    pub const EMPTY: CandSet = CandSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        CandSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_CANDIDATES);
        if n == MAX_CANDIDATES {
            CandSet(u32::MAX)
        } else {
            CandSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(c: usize) -> Self {
        CandSet(1 << c)
    }

    pub fn contains(self, c: usize) -> bool {
        c < MAX_CANDIDATES && self.0 & (1 << c) != 0
    }

    pub fn insert(&mut self, c: usize) {
        self.0 |= 1 << c;
    }

    pub fn remove(&mut self, c: usize) {
        self.0 &= !(1 << c);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: CandSet) -> CandSet {
        CandSet(self.0 | other.0)
    }

    pub fn intersection(self, other: CandSet) -> CandSet {
        CandSet(self.0 & other.0)
    }

    pub fn difference(self, other: CandSet) -> CandSet {
        CandSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: CandSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// The single element, if this is a singleton.
    pub fn only(self) -> Option<usize> {
        (self.len() == 1).then(|| self.0.trailing_zeros() as usize)
    }

    /// Elements in increasing index order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let c = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(c)
            }
        })
    }

    /// Spreads the low bits of `pattern` onto the members of `self`, in
    /// increasing index order. Bit `i` of `pattern` selects the `i`-th member.
    pub fn select(self, pattern: u32) -> CandSet {
        let mut out = 0u32;
        for (i, c) in self.iter().enumerate() {
            if pattern & (1 << i) != 0 {
                out |= 1 << c;
            }
        }
        CandSet(out)
    }
}

impl FromIterator<usize> for CandSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = CandSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl fmt::Debug for CandSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
