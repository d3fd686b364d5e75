//! Intersections of Bruhat intervals with parabolic cosets, and exhaustive
//! sweeps checking that every such nonempty intersection is an interval,
//! together with the intermediate claims used to prove it.
//!
//! Extrema are found by brute force over the enumerated intersection; the
//! sweeps never construct the minimum by the inductive argument, they only
//! check its steps.

mod converse;
mod report;
mod sweep;

pub use converse::{find_converse_counterexample, CounterexampleWitness, ExtremumKind};
pub use report::{Check, Failure, VerificationReport};
pub use sweep::{
    run_check, verify_descent_pairs, verify_dihedral_chain, verify_min_recursion, verify_theorem,
    verify_unique_max,
};

use fixedbitset::FixedBitSet;

use crate::bruhat::Ball;
use crate::error::Result;
use crate::parabolic::{ball_coset, CosetHandle, Side};
use crate::word::{Element, GeneratorSet};

/// `[x, y] ∩ u W_J` (or `W_J u`) with its minimal and maximal elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionResult {
    pub members: Vec<Element>,
    pub minimals: Vec<Element>,
    pub maximals: Vec<Element>,
    /// Both extrema are unique and `members` is exactly `[min, max]`.
    pub is_interval: bool,
}

/// `[x, y] ∩ u W_J` for a left coset.
pub fn intersect(
    ball: &Ball,
    x: &Element,
    y: &Element,
    u: &Element,
    j: GeneratorSet,
) -> Result<IntersectionResult> {
    intersect_on(ball, x, y, u, j, Side::Left)
}

/// Intersection with the coset of `u` on the given side, computed directly
/// on that side.
pub fn intersect_on(
    ball: &Ball,
    x: &Element,
    y: &Element,
    u: &Element,
    j: GeneratorSet,
    side: Side,
) -> Result<IntersectionResult> {
    let (xi, yi) = ball.interval_indices(x, y)?;
    let handle = CosetHandle::new(ball.system(), u.clone(), j, side)?;
    let ui = ball.require(&handle.rep)?;
    let mut members = ball.interval_set(xi, yi);
    members.intersect_with(&ball_coset(ball, ui, j, side).0);
    Ok(describe(ball, &members))
}

/// `[x, y] ∩ W_J u`, computed as the inverse image of
/// `[x^-1, y^-1] ∩ u^-1 W_J`; inversion is a Bruhat order automorphism
/// exchanging left and right cosets.
pub fn intersect_right_mirrored(
    ball: &Ball,
    x: &Element,
    y: &Element,
    u: &Element,
    j: GeneratorSet,
) -> Result<IntersectionResult> {
    let (xi, yi) = ball.interval_indices(x, y)?;
    CosetHandle::new(ball.system(), u.clone(), j, Side::Right)?;
    let ui = ball.require(u)?;
    let (xm, ym, um) = (ball.inverse(xi), ball.inverse(yi), ball.inverse(ui));
    let mut mirrored = ball.interval_set(xm, ym);
    mirrored.intersect_with(&ball_coset(ball, um, j, Side::Left).0);
    let mut members = FixedBitSet::with_capacity(ball.len());
    for z in mirrored.ones() {
        members.insert(ball.inverse(z));
    }
    Ok(describe(ball, &members))
}

fn describe(ball: &Ball, members: &FixedBitSet) -> IntersectionResult {
    let mins = minimals(ball, members);
    let maxs = maximals(ball, members);
    let is_interval = spans_interval(ball, members, &mins, &maxs);
    let to_elements = |v: Vec<usize>| v.into_iter().map(|i| ball.element(i).clone()).collect();
    IntersectionResult {
        members: to_elements(members.ones().collect()),
        minimals: to_elements(mins),
        maximals: to_elements(maxs),
        is_interval,
    }
}

pub(crate) fn minimals(ball: &Ball, set: &FixedBitSet) -> Vec<usize> {
    set.ones()
        .filter(|&z| ball.below(z).intersection_count(set) == 1)
        .collect()
}

pub(crate) fn maximals(ball: &Ball, set: &FixedBitSet) -> Vec<usize> {
    set.ones()
        .filter(|&z| ball.above(z).intersection_count(set) == 1)
        .collect()
}

pub(crate) fn spans_interval(ball: &Ball, set: &FixedBitSet, mins: &[usize], maxs: &[usize]) -> bool {
    match (mins, maxs) {
        ([m], [top]) => &ball.interval_set(*m, *top) == set,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::parabolic::project;
    use crate::system::CoxeterSystem;

    fn el(sys: &CoxeterSystem, letters: &[usize]) -> Element {
        sys.normalize_letters(letters).unwrap()
    }

    fn set(v: &[usize]) -> GeneratorSet {
        v.iter().copied().collect()
    }

    #[test]
    fn intersect_examples() {
        let a2 = CoxeterSystem::preset("A2").unwrap();
        let ball = Ball::new(&a2, 3).unwrap();
        let e = a2.identity();
        let top = el(&a2, &[0, 1, 0]);

        let r = intersect(&ball, &e, &top, &e, set(&[0])).unwrap();
        assert_eq!(r.members, vec![e.clone(), el(&a2, &[0])]);
        assert_eq!(r.minimals, vec![e.clone()]);
        assert_eq!(r.maximals, vec![el(&a2, &[0])]);
        assert!(r.is_interval);

        let r = intersect(&ball, &el(&a2, &[0]), &top, &el(&a2, &[1]), set(&[0])).unwrap();
        assert_eq!(r.members, vec![el(&a2, &[1, 0])]);
        assert!(r.is_interval);

        let r = intersect(&ball, &el(&a2, &[1]), &el(&a2, &[0, 1]), &e, set(&[0])).unwrap();
        assert!(r.members.is_empty() && r.minimals.is_empty() && r.maximals.is_empty());
        assert!(!r.is_interval);
    }

    #[test]
    fn intersect_errors() {
        let a2 = CoxeterSystem::preset("A2").unwrap();
        let ball = Ball::new(&a2, 3).unwrap();
        let e = a2.identity();
        let s0 = el(&a2, &[0]);
        let s1 = el(&a2, &[1]);
        assert_eq!(intersect(&ball, &s0, &s1, &e, set(&[0])).unwrap_err(), Error::NotComparable);
        assert_eq!(
            intersect(&ball, &e, &s1, &s0, set(&[0])).unwrap_err(),
            Error::RepNotMinimal
        );
        let small = Ball::new(&a2, 1).unwrap();
        assert!(matches!(
            intersect(&small, &e, &el(&a2, &[0, 1]), &e, set(&[0])),
            Err(Error::TopOutOfBall { .. })
        ));
    }

    #[test]
    fn mirror_matches_direct_right_cosets() {
        let a2 = CoxeterSystem::preset("A2").unwrap();
        let ball = Ball::new(&a2, 3).unwrap();
        for j in GeneratorSet::all_subsets(2) {
            for x in ball.elements() {
                for y in ball.elements() {
                    if ball.interval(x, y).is_err() {
                        continue;
                    }
                    for u in ball.elements() {
                        let direct = intersect_on(&ball, x, y, u, j, Side::Right);
                        let mirrored = intersect_right_mirrored(&ball, x, y, u, j);
                        assert_eq!(direct, mirrored);
                    }
                }
            }
        }
    }

    #[test]
    fn extrema_project_to_rep_and_respect_bounds() {
        let b3 = CoxeterSystem::preset("B3").unwrap();
        let ball = Ball::new(&b3, 9).unwrap();
        let j = set(&[1, 2]);
        let reps: Vec<&Element> = ball
            .elements()
            .iter()
            .filter(|w| b3.right_descents(w).unwrap().intersection(j).is_empty())
            .collect();
        assert_eq!(reps.len(), 48 / 6);
        for (xi, x) in ball.elements().iter().enumerate().step_by(5) {
            for y in ball.above(xi).ones().map(|i| ball.element(i)) {
                for &u in &reps {
                    let r = intersect(&ball, x, y, u, j).unwrap();
                    if r.members.is_empty() {
                        continue;
                    }
                    let (m, top) = (&r.minimals[0], &r.maximals[0]);
                    assert!(r.is_interval);
                    assert_eq!(&project(&b3, m, j).unwrap(), u);
                    assert_eq!(&project(&b3, top, j).unwrap(), u);
                    assert!(ball.leq(xi, ball.index_of(m).unwrap()));
                    assert!(ball.leq(ball.index_of(top).unwrap(), ball.index_of(y).unwrap()));
                }
            }
        }
    }
}
