//! Concrete realizations used as independent oracles: type A as
//! permutations, type B as signed permutations.

#![allow(dead_code)]

use coxeter::{CoxeterSystem, Word};

/// A (signed) permutation realization of a named finite type.
pub struct Realization {
    pub points: usize,
    pub signed: bool,
}

impl Realization {
    pub fn for_preset(name: &str) -> Realization {
        let (kind, n) = name.split_at(1);
        let n: usize = n.parse().unwrap();
        match kind {
            "A" => Realization { points: n + 1, signed: false },
            "B" => Realization { points: n, signed: true },
            _ => panic!("no realization for {name}"),
        }
    }

    /// Image of `1..=points` after applying the letters left to right.
    pub fn evaluate(&self, letters: &[u8]) -> Vec<i32> {
        let mut v: Vec<i32> = (1..=self.points as i32).collect();
        for &s in letters {
            let s = s as usize;
            if self.signed {
                if s == 0 {
                    v[0] = -v[0];
                } else {
                    v.swap(s - 1, s);
                }
            } else {
                v.swap(s, s + 1);
            }
        }
        v
    }
}

/// ShortLex-first word evaluating to `target`, by enumerating words of
/// increasing length in lexicographic order.
pub fn shortlex_first(real: &Realization, rank: usize, target: &[i32]) -> Vec<u8> {
    for len in 0..=16 {
        let mut word = vec![0u8; len];
        loop {
            if real.evaluate(&word) == target {
                return word;
            }
            if !advance(&mut word, rank) {
                break;
            }
        }
    }
    panic!("no word up to length 16");
}

/// Steps to the next word of the same length in lexicographic order.
pub fn advance(word: &mut [u8], rank: usize) -> bool {
    for k in (0..word.len()).rev() {
        if (word[k] as usize) + 1 < rank {
            word[k] += 1;
            for c in &mut word[k + 1..] {
                *c = 0;
            }
            return true;
        }
    }
    false
}

pub fn preset(name: &str) -> CoxeterSystem {
    CoxeterSystem::preset(name).unwrap()
}

pub fn word(letters: &[usize]) -> Word {
    Word::from_indices(letters)
}
