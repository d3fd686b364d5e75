//! Words over the generators, group elements in canonical form, and
//! generator subsets.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest supported rank; generator subsets are stored as a 64-bit mask.
pub const MAX_RANK: usize = 64;

/// A finite sequence of 0-based generator indices, not necessarily reduced.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_indices(letters: &[usize]) -> Self {
        Word(letters.iter().map(|&s| s as u8).collect())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// True if `self` occurs in `other` as a not necessarily contiguous
    /// subsequence.
    pub fn is_subword_of(&self, other: &Word) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|a| it.any(|b| a == b))
    }

    /// True if two equal letters sit next to each other.
    pub fn has_adjacent_pair(&self) -> bool {
        self.0.windows(2).any(|w| w[0] == w[1])
    }
}

impl Deref for Word {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl From<Vec<u8>> for Word {
    fn from(letters: Vec<u8>) -> Self {
        Word(letters)
    }
}

impl From<&[usize]> for Word {
    fn from(letters: &[usize]) -> Self {
        Word::from_indices(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A group element, stored as its ShortLex-minimal reduced word.
///
/// Elements are only produced by [`CoxeterSystem::normalize`] and friends,
/// so two elements are equal exactly when they are the same group element.
/// Elements order by length first, then lexicographically by word.
///
/// [`CoxeterSystem::normalize`]: crate::CoxeterSystem::normalize
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Element {
    canonical: Word,
}

impl Element {
    pub(crate) fn from_canonical(canonical: Word) -> Self {
        Element { canonical }
    }

    pub fn identity() -> Self {
        Element {
            canonical: Word::empty(),
        }
    }

    pub fn word(&self) -> &Word {
        &self.canonical
    }

    pub fn length(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_identity(&self) -> bool {
        self.canonical.is_empty()
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.canonical.cmp(&other.canonical))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.canonical, f)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.canonical, f)
    }
}

/// A subset J of the generators, as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorSet(u64);

impl GeneratorSet {
    pub const EMPTY: GeneratorSet = GeneratorSet(0);

    pub fn from_bits(bits: u64) -> Self {
        GeneratorSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// All generators of a system of the given rank.
    pub fn full(rank: usize) -> Self {
        if rank >= 64 {
            GeneratorSet(u64::MAX)
        } else {
            GeneratorSet((1u64 << rank) - 1)
        }
    }

    pub fn singleton(s: usize) -> Self {
        GeneratorSet(1 << s)
    }

    pub fn pair(s: usize, t: usize) -> Self {
        GeneratorSet((1 << s) | (1 << t))
    }

    pub fn contains(self, s: usize) -> bool {
        s < 64 && self.0 >> s & 1 == 1
    }

    pub fn insert(&mut self, s: usize) {
        self.0 |= 1 << s;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn intersection(self, other: GeneratorSet) -> GeneratorSet {
        GeneratorSet(self.0 & other.0)
    }

    pub fn union(self, other: GeneratorSet) -> GeneratorSet {
        GeneratorSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: GeneratorSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let s = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(s)
        })
    }

    /// Every subset of the generators of a system of this rank, in
    /// increasing bitmask order.
    pub fn all_subsets(rank: usize) -> impl Iterator<Item = GeneratorSet> {
        assert!(rank < 64, "subset enumeration needs rank < 64");
        (0..1u64 << rank).map(GeneratorSet)
    }
}

impl FromIterator<usize> for GeneratorSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = GeneratorSet::EMPTY;
        for s in iter {
            set.insert(s);
        }
        set
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for GeneratorSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for GeneratorSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = members.iter().find(|&&s| s >= MAX_RANK) {
            return Err(serde::de::Error::custom(format!(
                "generator index {bad} out of range"
            )));
        }
        Ok(members.into_iter().collect())
    }
}
