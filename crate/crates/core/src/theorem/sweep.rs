use std::collections::BTreeMap;
use std::time::Instant;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::bruhat::Ball;
use crate::parabolic::{CosetPartition, Side};
use crate::word::{GeneratorSet, Word};

use super::report::{Check, Failure, VerificationReport};
use super::{maximals, minimals, spans_interval};

/// Per-worker tallies; failures carry a sort key of ball indices so the
/// final report does not depend on scheduling.
#[derive(Default)]
struct Tally {
    tested: u64,
    nonempty: u64,
    skipped: u64,
    failures: Vec<(Vec<usize>, Failure)>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.tested += other.tested;
        self.nonempty += other.nonempty;
        self.skipped += other.skipped;
        self.failures.extend(other.failures);
        self
    }

    fn fail(&mut self, key: Vec<usize>, failure: Failure) {
        self.failures.push((key, failure));
    }
}

fn finish(ball: &Ball, check: Check, tally: Tally, started: Instant) -> VerificationReport {
    let mut failures = tally.failures;
    failures.sort_by(|a, b| a.0.cmp(&b.0));
    let failures: Vec<Failure> = failures.into_iter().map(|(_, f)| f).collect();
    VerificationReport {
        check,
        system: ball.system().name().to_string(),
        bound: ball.bound(),
        tested: tally.tested,
        nonempty: tally.nonempty,
        skipped: tally.skipped,
        verified: failures.is_empty(),
        failures,
        elapsed_ms: started.elapsed().as_millis() as u64,
    }
}

fn parallel_over_ball(ball: &Ball, f: impl Fn(usize, &mut Tally) + Sync) -> Tally {
    (0..ball.len())
        .into_par_iter()
        .map(|x| {
            let mut tally = Tally::default();
            f(x, &mut tally);
            tally
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

fn word(ball: &Ball, i: usize) -> Word {
    ball.element(i).word().clone()
}

pub fn run_check(ball: &Ball, check: Check) -> VerificationReport {
    match check {
        Check::Theorem => verify_theorem(ball),
        Check::UniqueMax => verify_unique_max(ball),
        Check::MinRecursion => verify_min_recursion(ball),
        Check::DihedralChain => verify_dihedral_chain(ball),
        Check::DescentPairs => verify_descent_pairs(ball),
    }
}

/// For every `x <= y` in the ball, every `J` and every coset of `W_J` on
/// either side: a nonempty intersection with `[x, y]` has a unique minimum
/// and a unique maximum, and equals the interval between them.
///
/// Right cosets are handled by inversion: `[x, y] ∩ W_J u` is the inverse
/// of `[x^-1, y^-1] ∩ u^-1 W_J`.
pub fn verify_theorem(ball: &Ball) -> VerificationReport {
    intersection_sweep(ball, Check::Theorem)
}

/// The unique-maximum half of [`verify_theorem`] on its own.
pub fn verify_unique_max(ball: &Ball) -> VerificationReport {
    intersection_sweep(ball, Check::UniqueMax)
}

fn intersection_sweep(ball: &Ball, check: Check) -> VerificationReport {
    let started = Instant::now();
    let rank = ball.system().rank();
    let partitions: Vec<CosetPartition> = GeneratorSet::all_subsets(rank)
        .map(|j| CosetPartition::new(ball, j, Side::Left))
        .collect();

    let tally = parallel_over_ball(ball, |x, tally| {
        for side in [Side::Left, Side::Right] {
            for y in ball.above(x).ones() {
                let (xl, yl) = match side {
                    Side::Left => (x, y),
                    Side::Right => (ball.inverse(x), ball.inverse(y)),
                };
                let interval = ball.interval_set(xl, yl);
                for p in &partitions {
                    tally.tested += p.reps.len() as u64;
                    let mut groups: BTreeMap<usize, FixedBitSet> = BTreeMap::new();
                    for z in interval.ones() {
                        groups
                            .entry(p.rep_of[z])
                            .or_insert_with(|| FixedBitSet::with_capacity(ball.len()))
                            .insert(z);
                    }
                    for (rep, members) in groups {
                        tally.nonempty += 1;
                        let u = match side {
                            Side::Left => rep,
                            Side::Right => ball.inverse(rep),
                        };
                        let mins = minimals(ball, &members);
                        let maxs = maximals(ball, &members);
                        let reason = match check {
                            Check::UniqueMax if maxs.len() != 1 => {
                                Some(format!("{} maximal elements", maxs.len()))
                            }
                            Check::UniqueMax => None,
                            _ if mins.len() != 1 => Some(format!("{} minimal elements", mins.len())),
                            _ if maxs.len() != 1 => Some(format!("{} maximal elements", maxs.len())),
                            _ if !spans_interval(ball, &members, &mins, &maxs) => {
                                Some("intersection is not the interval between its extrema".into())
                            }
                            _ => None,
                        };
                        if let Some(reason) = reason {
                            let mut f = Failure::new(word(ball, x), reason);
                            f.side = Some(side);
                            f.y = Some(word(ball, y));
                            f.u = Some(word(ball, u));
                            f.j = Some(p.j);
                            tally.fail(vec![side as usize, x, y, u, p.j.bits() as usize], f);
                        }
                    }
                }
            }
        }
    });
    finish(ball, check, tally, started)
}

/// The induction step behind the unique minimum of `W_{>=x} ∩ u W_J`.
///
/// For every `x`, `J` and complete left coset `u W_J` meeting `W_{>=x}`,
/// with `m` the minimum: every `s` in `D_R(m) ∩ J` is a right descent of
/// `x`, and `min(W_{>=xs} ∩ u W_J) * s = m`. Cosets not contained in the
/// ball are skipped.
pub fn verify_min_recursion(ball: &Ball) -> VerificationReport {
    let started = Instant::now();
    let rank = ball.system().rank();
    let partitions: Vec<CosetPartition> = GeneratorSet::all_subsets(rank)
        .map(|j| CosetPartition::new(ball, j, Side::Left))
        .collect();

    let tally = parallel_over_ball(ball, |x, tally| {
        for p in &partitions {
            for (k, &u) in p.reps.iter().enumerate() {
                if !p.complete[k] {
                    tally.skipped += 1;
                    continue;
                }
                tally.tested += 1;
                let key = |extra: usize| vec![x, u, p.j.bits() as usize, extra];
                let failure = |reason: String| {
                    let mut f = Failure::new(word(ball, x), reason);
                    f.side = Some(Side::Left);
                    f.u = Some(word(ball, u));
                    f.j = Some(p.j);
                    f
                };
                let mut above_x = ball.above(x).clone();
                above_x.intersect_with(&p.members[k]);
                if above_x.is_clear() {
                    continue;
                }
                tally.nonempty += 1;
                let mins = minimals(ball, &above_x);
                let [m] = mins[..] else {
                    tally.fail(key(0), failure(format!("{} minimal elements", mins.len())));
                    continue;
                };
                if m == u {
                    if !ball.right_descents(m).intersection(p.j).is_empty() {
                        tally.fail(key(0), failure("representative has a descent in J".into()));
                    }
                    continue;
                }
                for s in ball.right_descents(m).intersection(p.j).iter() {
                    if !ball.right_descents(x).contains(s) {
                        tally.fail(
                            key(s + 1),
                            failure(format!("x*s{s} does not lie below x for descent s{s} of the minimum")),
                        );
                        continue;
                    }
                    let xs = ball.right_mul(x, s).expect("descent stays in ball");
                    let mut above_xs = ball.above(xs).clone();
                    above_xs.intersect_with(&p.members[k]);
                    let inner = minimals(ball, &above_xs);
                    let [m_inner] = inner[..] else {
                        tally.fail(
                            key(s + 1),
                            failure(format!("{} minimal elements above x*s{s}", inner.len())),
                        );
                        continue;
                    };
                    if ball.right_mul(m_inner, s) != Some(m) {
                        tally.fail(
                            key(s + 1),
                            failure(format!(
                                "min above x*s{s} is {}, whose product with s{s} is not the minimum {}",
                                ball.element(m_inner),
                                ball.element(m)
                            )),
                        );
                    }
                }
            }
        }
    });
    finish(ball, Check::MinRecursion, tally, started)
}

/// The dihedral transfer of the proof's final step.
///
/// For `x` with distinct right descents `s1, s2`, every `w` in
/// `W^{s1,s2}`, each ordering `(s_i, s_j)` of the pair and each
/// `h <= m(s1, s2)`, the statements
/// `w * (.. s_j s_i)[h - k letters] >= x * (s_i s_j ..)[k letters]`
/// have the same truth value for all `k` in `0..=h`. Configurations whose
/// extension of `w` leaves the ball are skipped.
pub fn verify_dihedral_chain(ball: &Ball) -> VerificationReport {
    let started = Instant::now();
    let system = ball.system();

    let tally = parallel_over_ball(ball, |x, tally| {
        let descents: Vec<usize> = ball.right_descents(x).iter().collect();
        for (a, &s1) in descents.iter().enumerate() {
            for &s2 in &descents[a + 1..] {
                let base = |reason: String| {
                    let mut f = Failure::new(word(ball, x), reason);
                    f.pair = Some([s1, s2]);
                    f
                };
                let Some(m) = system.m(s1, s2).finite() else {
                    tally.fail(vec![x, s1, s2], base("descent pair has infinite order".into()));
                    continue;
                };
                let pair = GeneratorSet::pair(s1, s2);
                for w in 0..ball.len() {
                    if !ball.right_descents(w).intersection(pair).is_empty() {
                        continue;
                    }
                    for (i, (si, sj)) in [(s1, s2), (s2, s1)].into_iter().enumerate() {
                        for h in 0..=m {
                            let alt = |k: usize| if k.is_multiple_of(2) { si } else { sj };
                            let with_h = |mut f: Failure| {
                                f.w = Some(word(ball, w));
                                f.h = Some(h);
                                f
                            };
                            let key = vec![x, s1, s2, w, i, h];
                            // w * (letters ending in s_i), one prefix per stage
                            let mut w_side = vec![w];
                            let mut left_ball = false;
                            for k in 0..h {
                                let prev = *w_side.last().unwrap();
                                match ball.right_mul(prev, alt(h - 1 - k)) {
                                    Some(next) if ball.length(next) > ball.length(prev) => {
                                        w_side.push(next)
                                    }
                                    Some(_) => {
                                        tally.fail(
                                            key.clone(),
                                            with_h(base("w is not minimal in its dihedral coset".into())),
                                        );
                                        left_ball = true;
                                        break;
                                    }
                                    None => {
                                        tally.skipped += 1;
                                        left_ball = true;
                                        break;
                                    }
                                }
                            }
                            if left_ball {
                                continue;
                            }
                            // x * (letters starting with s_i)
                            let mut x_side = vec![x];
                            let mut broken = false;
                            for k in 0..h {
                                let prev = *x_side.last().unwrap();
                                let next = ball.right_mul(prev, alt(k)).expect("shorter or outside");
                                if ball.length(next) > ball.length(prev) {
                                    broken = true;
                                    break;
                                }
                                x_side.push(next);
                            }
                            if broken {
                                tally.fail(
                                    key,
                                    with_h(base("x is not the top of its dihedral coset".into())),
                                );
                                continue;
                            }
                            tally.tested += 1;
                            let truth: Vec<bool> =
                                (0..=h).map(|k| ball.leq(x_side[k], w_side[h - k])).collect();
                            if truth[0] {
                                tally.nonempty += 1;
                            }
                            if truth.iter().any(|&t| t != truth[0]) {
                                tally.fail(
                                    key,
                                    with_h(base(format!(
                                        "chain of comparisons (ordering {}) is not constant: {truth:?}",
                                        if i == 0 { "s1 first" } else { "s2 first" }
                                    ))),
                                );
                            }
                        }
                    }
                }
            }
        }
    });
    finish(ball, Check::DihedralChain, tally, started)
}

/// Every pair of distinct right descents of every element has finite
/// order `m(s1, s2)`.
pub fn verify_descent_pairs(ball: &Ball) -> VerificationReport {
    let started = Instant::now();
    let system = ball.system();
    let tally = parallel_over_ball(ball, |x, tally| {
        let descents: Vec<usize> = ball.right_descents(x).iter().collect();
        if descents.len() >= 2 {
            tally.nonempty += 1;
        }
        for (a, &s1) in descents.iter().enumerate() {
            for &s2 in &descents[a + 1..] {
                tally.tested += 1;
                if !system.m(s1, s2).is_finite() {
                    let mut f = Failure::new(word(ball, x), "descent pair has infinite order");
                    f.pair = Some([s1, s2]);
                    tally.fail(vec![x, s1, s2], f);
                }
            }
        }
    });
    finish(ball, Check::DescentPairs, tally, started)
}
