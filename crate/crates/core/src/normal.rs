//! The word problem: Tits rewriting by nil moves and braid moves.
//!
//! A word is reduced exactly when no word in its braid orbit contains an
//! adjacent pair `ss`, and any two reduced words for the same element are
//! connected by braid moves. The canonical form of an element is the
//! lexicographic minimum of the braid orbit of any of its reduced words.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::system::CoxeterSystem;
use crate::word::{Element, GeneratorSet, Word};

enum OrbitSearch {
    Reduced(HashSet<Vec<u8>>),
    /// A member with an adjacent pair, with that pair already deleted.
    Shortened(Vec<u8>),
}

impl CoxeterSystem {
    /// Solves the word problem, returning the element with its ShortLex
    /// canonical word.
    pub fn normalize(&self, word: &Word) -> Result<Element> {
        self.check_letters(word)?;
        if let Some(hit) = self.cached(word) {
            return Ok(hit);
        }
        let result = self.extend(Element::identity(), word)?;
        self.remember(word.clone(), &result);
        Ok(result)
    }

    pub fn normalize_letters(&self, letters: &[usize]) -> Result<Element> {
        if let Some(&bad) = letters.iter().find(|&&s| s >= self.rank()) {
            return Err(Error::LetterOutOfRange {
                letter: bad,
                rank: self.rank(),
            });
        }
        self.normalize(&Word::from_indices(letters))
    }

    pub fn identity(&self) -> Element {
        Element::identity()
    }

    pub fn generator(&self, s: usize) -> Result<Element> {
        self.normalize_letters(&[s])
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        if b.is_identity() {
            return Ok(a.clone());
        }
        let key = a.word().concat(b.word());
        if let Some(hit) = self.cached(&key) {
            return Ok(hit);
        }
        let result = self.extend(a.clone(), b.word())?;
        self.remember(key, &result);
        Ok(result)
    }

    /// `w * s` for a single generator.
    pub fn mul_gen(&self, w: &Element, s: usize) -> Result<Element> {
        self.check_letters(&Word::new(vec![s as u8]))?;
        self.step(w, s as u8)
    }

    /// `s * w` for a single generator.
    pub fn gen_mul(&self, s: usize, w: &Element) -> Result<Element> {
        let mut letters = Vec::with_capacity(w.length() + 1);
        letters.push(s as u8);
        letters.extend_from_slice(w.word());
        self.normalize(&Word::new(letters))
    }

    pub fn inverse(&self, a: &Element) -> Result<Element> {
        self.normalize(&a.word().reversed())
    }

    /// D_R(w) = {s : l(ws) < l(w)}.
    pub fn right_descents(&self, w: &Element) -> Result<GeneratorSet> {
        let mut set = GeneratorSet::EMPTY;
        for s in 0..self.rank() {
            if self.mul_gen(w, s)?.length() < w.length() {
                set.insert(s);
            }
        }
        Ok(set)
    }

    /// D_L(w) = {s : l(sw) < l(w)}.
    pub fn left_descents(&self, w: &Element) -> Result<GeneratorSet> {
        let mut set = GeneratorSet::EMPTY;
        for s in 0..self.rank() {
            if self.gen_mul(s, w)?.length() < w.length() {
                set.insert(s);
            }
        }
        Ok(set)
    }

    /// All reduced words of the element represented by a reduced `word`,
    /// as the closure of `word` under braid moves.
    pub fn braid_orbit(&self, word: &Word) -> Result<BTreeSet<Word>> {
        self.check_letters(word)?;
        if word.has_adjacent_pair() {
            return Err(Error::NotReduced);
        }
        match self.search_orbit(word.letters().to_vec())? {
            OrbitSearch::Reduced(orbit) => Ok(orbit.into_iter().map(Word::new).collect()),
            OrbitSearch::Shortened(_) => Err(Error::NotReduced),
        }
    }

    fn cached(&self, word: &Word) -> Option<Element> {
        self.cache.read().expect("cache poisoned").get(word).cloned()
    }

    fn remember(&self, word: Word, element: &Element) {
        self.cache
            .write()
            .expect("cache poisoned")
            .insert(word, element.clone());
    }

    /// Right-multiplies `start` by the letters of `word` one at a time.
    fn extend(&self, start: Element, word: &[u8]) -> Result<Element> {
        let mut current = start;
        for &s in word {
            current = self.step(&current, s)?;
        }
        Ok(current)
    }

    fn step(&self, w: &Element, s: u8) -> Result<Element> {
        let mut letters = Vec::with_capacity(w.length() + 1);
        letters.extend_from_slice(w.word());
        letters.push(s);
        let key = Word::new(letters);
        if let Some(hit) = self.cached(&key) {
            return Ok(hit);
        }
        let result = Element::from_canonical(Word::new(self.reduce(key.letters().to_vec())?));
        self.remember(key, &result);
        Ok(result)
    }

    /// Rewrites an arbitrary word to the canonical word of its element:
    /// delete adjacent pairs, search the braid orbit for a member with an
    /// adjacent pair and delete it, and repeat until the orbit is clean.
    fn reduce(&self, mut letters: Vec<u8>) -> Result<Vec<u8>> {
        loop {
            letters = delete_adjacent_pairs(letters);
            match self.search_orbit(letters)? {
                OrbitSearch::Shortened(shorter) => letters = shorter,
                OrbitSearch::Reduced(orbit) => {
                    return Ok(orbit.into_iter().min().unwrap_or_default());
                }
            }
        }
    }

    fn search_orbit(&self, start: Vec<u8>) -> Result<OrbitSearch> {
        let mut seen = HashSet::new();
        let mut queue = vec![start.clone()];
        seen.insert(start);
        while let Some(current) = queue.pop() {
            let mut found = None;
            self.for_each_braid_move(&current, |next| {
                if found.is_some() || seen.contains(next) {
                    return;
                }
                if let Some(i) = next.windows(2).position(|p| p[0] == p[1]) {
                    let mut shorter = next.to_vec();
                    shorter.drain(i..i + 2);
                    found = Some(shorter);
                    return;
                }
                seen.insert(next.to_vec());
                queue.push(next.to_vec());
            });
            if let Some(shorter) = found {
                return Ok(OrbitSearch::Shortened(shorter));
            }
            if seen.len() > self.orbit_budget() {
                return Err(Error::OrbitBudgetExceeded {
                    budget: self.orbit_budget(),
                });
            }
        }
        Ok(OrbitSearch::Reduced(seen))
    }

    /// Calls `f` on every word obtained from `word` by one braid move.
    fn for_each_braid_move(&self, word: &[u8], mut f: impl FnMut(&[u8])) {
        let mut buf = word.to_vec();
        for i in 0..word.len().saturating_sub(1) {
            let (s, t) = (word[i], word[i + 1]);
            if s == t {
                continue;
            }
            let Some(m) = self.m(s as usize, t as usize).finite() else {
                continue;
            };
            if i + m > word.len() {
                continue;
            }
            let window = &word[i..i + m];
            let alternates = window
                .iter()
                .enumerate()
                .all(|(k, &c)| c == if k % 2 == 0 { s } else { t });
            if !alternates {
                continue;
            }
            for (k, c) in buf[i..i + m].iter_mut().enumerate() {
                *c = if k % 2 == 0 { t } else { s };
            }
            f(&buf);
            buf[i..i + m].copy_from_slice(window);
        }
    }
}

fn delete_adjacent_pairs(letters: Vec<u8>) -> Vec<u8> {
    let mut out: Vec<u8> = Vec::with_capacity(letters.len());
    for s in letters {
        if out.last() == Some(&s) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    out
}
