mod common;

use std::collections::{HashMap, HashSet};

use common::{advance, preset, shortlex_first, word, Realization};
use coxeter::{bruhat_leq, Ball, GeneratorSet, Word};

/// Every reduced word of the element realized by `target`, found by
/// enumerating all words of the minimal length.
fn reduced_words(real: &Realization, rank: usize, target: &[i32], len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut w = vec![0u8; len];
    loop {
        if real.evaluate(&w) == target {
            out.push(w.clone());
        }
        if !advance(&mut w, rank) {
            break;
        }
    }
    out
}

fn is_subsequence(small: &[u8], big: &[u8]) -> bool {
    let mut it = big.iter();
    small.iter().all(|a| it.any(|b| a == b))
}

#[test]
fn a2_derived_values() {
    let a2 = preset("A2");
    let real = Realization::for_preset("A2");
    let canon = |letters: &[u8]| shortlex_first(&real, 2, &real.evaluate(letters));

    assert_eq!(canon(&[0, 1, 0, 1]), vec![1, 0]);
    let w = a2.normalize(&word(&[0, 1, 0, 1])).unwrap();
    assert_eq!(w.word().letters(), &canon(&[0, 1, 0, 1])[..]);

    let x = a2.normalize(&word(&[0, 1])).unwrap();
    let xx = a2.multiply(&x, &x).unwrap();
    assert_eq!(xx.word().letters(), &canon(&[0, 1, 0, 1])[..]);

    // full descent set of the longest element
    let top = a2.normalize(&word(&[0, 1, 0])).unwrap();
    for s in 0..2u8 {
        let mut ws = top.word().letters().to_vec();
        ws.push(s);
        assert!(canon(&ws).len() < 3);
        let mut sw = vec![s];
        sw.extend_from_slice(top.word());
        assert!(canon(&sw).len() < 3);
    }
    assert_eq!(a2.right_descents(&top).unwrap(), GeneratorSet::full(2));
    assert_eq!(a2.left_descents(&top).unwrap(), GeneratorSet::full(2));
}

#[test]
fn canonical_words_match_shortlex_enumeration() {
    for (name, order) in [("A2", 6), ("B2", 8), ("A3", 24), ("B3", 48)] {
        let system = preset(name);
        let real = Realization::for_preset(name);
        let ball = Ball::new(&system, 20).unwrap();
        assert_eq!(ball.len(), order, "{name}");
        assert!(ball.is_whole_group());
        let perms: HashSet<Vec<i32>> = ball
            .elements()
            .iter()
            .map(|w| real.evaluate(w.word()))
            .collect();
        assert_eq!(perms.len(), order);
        for w in ball.elements() {
            let expected = shortlex_first(&real, system.rank(), &real.evaluate(w.word()));
            assert_eq!(w.word().letters(), &expected[..], "{name}");
        }
    }
}

#[test]
fn infinite_dihedral_ball_by_exhaustive_words() {
    let inf = preset("I2(inf)");
    let mut seen = HashSet::new();
    for len in 0..=4 {
        let mut w = vec![0u8; len];
        loop {
            seen.insert(inf.normalize(&Word::new(w.clone())).unwrap());
            if !advance(&mut w, 2) {
                break;
            }
        }
    }
    assert_eq!(seen.len(), 9);
    assert_eq!(Ball::new(&inf, 4).unwrap().len(), 9);
}

#[test]
fn bruhat_order_matches_subword_oracle() {
    for name in ["A2", "B2", "A3", "B3"] {
        let system = preset(name);
        let real = Realization::for_preset(name);
        let ball = Ball::new(&system, 20).unwrap();
        let all_reduced: Vec<Vec<Vec<u8>>> = ball
            .elements()
            .iter()
            .map(|w| reduced_words(&real, system.rank(), &real.evaluate(w.word()), w.length()))
            .collect();
        for u in 0..ball.len() {
            for w in 0..ball.len() {
                let oracle = all_reduced[u]
                    .iter()
                    .any(|r| is_subsequence(r, &all_reduced[w][0]));
                assert_eq!(ball.leq(u, w), oracle, "{name}: {} <= {}", ball.element(u), ball.element(w));
            }
        }
    }
}

#[test]
fn a2_interval_and_cover_values() {
    let a2 = preset("A2");
    let ball = Ball::new(&a2, 3).unwrap();
    let s0 = a2.normalize(&word(&[0])).unwrap();
    let s1 = a2.normalize(&word(&[1])).unwrap();
    let s1s0 = a2.normalize(&word(&[1, 0])).unwrap();
    let s0s1 = a2.normalize(&word(&[0, 1])).unwrap();
    assert!(!bruhat_leq(&a2, &s0, &s1).unwrap());
    assert!(bruhat_leq(&a2, &s0, &s1s0).unwrap());
    assert_eq!(ball.interval(&s0, &s0s1).unwrap().members, vec![s0.clone(), s0s1.clone()]);
    assert_eq!(ball.covers_of(&s0s1).unwrap(), vec![s0, s1]);

    // 8 covers: every pair u < w with lengths differing by one
    let mut covers = 0;
    for u in 0..ball.len() {
        for w in 0..ball.len() {
            if ball.length(w) == ball.length(u) + 1 && ball.leq(u, w) {
                covers += 1;
            }
        }
    }
    assert_eq!(covers, 8);
    assert_eq!(ball.hasse().covers.len(), 8);
}

#[test]
fn canonical_forms_factor_through_permutations() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for name in ["A3", "B3"] {
        let system = preset(name);
        let real = Realization::for_preset(name);
        let mut by_canon: HashMap<Word, Vec<i32>> = HashMap::new();
        let mut by_perm: HashMap<Vec<i32>, Word> = HashMap::new();
        for _ in 0..2000 {
            let len = rng.gen_range(0..=10);
            let letters: Vec<u8> = (0..len).map(|_| rng.gen_range(0..system.rank() as u8)).collect();
            let canon = system.normalize(&Word::new(letters.clone())).unwrap().word().clone();
            let perm = real.evaluate(&letters);
            assert_eq!(by_canon.entry(canon.clone()).or_insert(perm.clone()), &perm);
            assert_eq!(by_perm.entry(perm).or_insert(canon.clone()), &canon);
        }
    }
}
