//! Dense membership sets over a frame's configuration enumeration.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// A set of joint configurations, stored as a bitset over `0..universe`.
///
/// Sets order by their membership mask read as an unsigned integer with
/// configuration `0` as the least significant bit, so `{0} < {1} < {0, 1}`.
/// For universes of at most 64 configurations this is exactly the order of
/// the dense lattice index used by [`crate::lattice`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FocalSet {
    universe: usize,
    words: Vec<u64>,
}

const BITS: usize = 64;

fn word_count(universe: usize) -> usize {
    universe.div_ceil(BITS)
}

impl FocalSet {
    pub fn empty(universe: usize) -> Self {
        Self { universe, words: vec![0; word_count(universe)] }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for w in set.words.iter_mut() {
            *w = u64::MAX;
        }
        set.trim();
        set
    }

    pub fn singleton(universe: usize, index: usize) -> Self {
        let mut set = Self::empty(universe);
        set.insert(index);
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut set = Self::empty(universe);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Builds a set from a lattice index. Panics if `universe > 64`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= BITS, "mask form needs a universe of at most 64");
        let mut set = Self::empty(universe);
        if universe > 0 {
            set.words[0] = mask;
            set.trim();
        }
        set
    }

    /// Lattice index of the set, when the universe fits in 64 bits.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn trim(&mut self) {
        let tail = self.universe % BITS;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, index: usize) {
        assert!(index < self.universe, "configuration {index} outside universe {}", self.universe);
        self.words[index / BITS] |= 1 << (index % BITS);
    }

    pub fn remove(&mut self, index: usize) {
        if index < self.universe {
            self.words[index / BITS] &= !(1 << (index % BITS));
        }
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.universe && self.words[index / BITS] & (1 << (index % BITS)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        let mut out = Self { universe: self.universe, words: self.words.iter().map(|w| !w).collect() };
        out.trim();
        out
    }

    pub fn union_with(&mut self, other: &Self) {
        assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &Self) -> bool {
        assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    fn zip(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.universe, other.universe, "sets over different universes");
        Self { universe: self.universe, words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect() }
    }

    /// Members in ascending configuration order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * BITS + bit)
            })
        })
    }
}

impl Ord for FocalSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe.cmp(&other.universe).then_with(|| {
            for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for FocalSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FocalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
