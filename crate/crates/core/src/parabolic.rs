//! Parabolic subgroups W_J, the factorization w = w^J w_J, minimal coset
//! representatives and cosets inside a ball.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::bruhat::Ball;
use crate::error::{Error, Result};
use crate::system::{CoxeterSystem, RelationOrder};
use crate::word::{Element, GeneratorSet, Word};

/// Which side the parabolic subgroup acts on: `Left` is the left coset
/// `u W_J`, `Right` is the right coset `W_J u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A parabolic coset named by its minimal-length representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetHandle {
    pub rep: Element,
    pub j: GeneratorSet,
    pub side: Side,
}

impl CosetHandle {
    /// Fails with `RepNotMinimal` unless `rep` has no descent in `j` on the
    /// side where `W_J` acts.
    pub fn new(system: &CoxeterSystem, rep: Element, j: GeneratorSet, side: Side) -> Result<Self> {
        let descents = match side {
            Side::Left => system.right_descents(&rep)?,
            Side::Right => system.left_descents(&rep)?,
        };
        if !descents.intersection(j).is_empty() {
            return Err(Error::RepNotMinimal);
        }
        Ok(CosetHandle { rep, j, side })
    }
}

/// Members of a coset that lie in a ball, and whether that is all of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetMembers {
    pub members: Vec<Element>,
    pub complete: bool,
}

/// `w = w^J * w_J` with `w^J` in `W^J` and `w_J` in `W_J`, returned as
/// `(w^J, w_J)`. Right descents in `J` are peeled smallest index first.
pub fn decompose_right(
    system: &CoxeterSystem,
    w: &Element,
    j: GeneratorSet,
) -> Result<(Element, Element)> {
    let mut quotient = w.clone();
    let mut peeled = Vec::new();
    while let Some(s) = system.right_descents(&quotient)?.intersection(j).first() {
        quotient = system.mul_gen(&quotient, s)?;
        peeled.push(s as u8);
    }
    peeled.reverse();
    let sub = system.normalize(&Word::new(peeled))?;
    Ok((quotient, sub))
}

/// `w = w_J * ^J w`, returned as `(w_J, ^J w)`.
pub fn decompose_left(
    system: &CoxeterSystem,
    w: &Element,
    j: GeneratorSet,
) -> Result<(Element, Element)> {
    let mut quotient = w.clone();
    let mut peeled = Vec::new();
    while let Some(s) = system.left_descents(&quotient)?.intersection(j).first() {
        quotient = system.gen_mul(s, &quotient)?;
        peeled.push(s as u8);
    }
    let sub = system.normalize(&Word::new(peeled))?;
    Ok((sub, quotient))
}

/// The minimal representative `w^J` of the left coset `w W_J`.
pub fn min_coset_rep(system: &CoxeterSystem, w: &Element, j: GeneratorSet) -> Result<Element> {
    Ok(decompose_right(system, w, j)?.0)
}

/// The projection `w -> w^J`, which is monotone for the Bruhat order.
pub fn project(system: &CoxeterSystem, w: &Element, j: GeneratorSet) -> Result<Element> {
    min_coset_rep(system, w, j)
}

/// Mirror of [`project`] for right cosets: `w -> ^J w`.
pub fn project_left(system: &CoxeterSystem, w: &Element, j: GeneratorSet) -> Result<Element> {
    Ok(decompose_left(system, w, j)?.1)
}

/// Orders `m(s1, s2)` for each pair `s1 < s2` of right descents of `x`.
pub fn descent_pair_order(
    system: &CoxeterSystem,
    x: &Element,
) -> Result<Vec<(usize, usize, RelationOrder)>> {
    let descents: Vec<usize> = system.right_descents(x)?.iter().collect();
    let mut pairs = Vec::new();
    for (k, &s1) in descents.iter().enumerate() {
        for &s2 in &descents[k + 1..] {
            pairs.push((s1, s2, system.m(s1, s2)));
        }
    }
    Ok(pairs)
}

/// `{u v : v in W_J}` (or `{v u}` for right cosets) intersected with the
/// ball, flagged complete when the whole coset fits inside the ball.
pub fn coset_members(ball: &Ball, u: &Element, j: GeneratorSet) -> Result<CosetMembers> {
    coset_members_on(ball, u, j, Side::Left)
}

pub fn coset_members_on(
    ball: &Ball,
    u: &Element,
    j: GeneratorSet,
    side: Side,
) -> Result<CosetMembers> {
    let ui = ball.require(u)?;
    let descents = match side {
        Side::Left => ball.right_descents(ui),
        Side::Right => ball.left_descents(ui),
    };
    if !descents.intersection(j).is_empty() {
        return Err(Error::RepNotMinimal);
    }
    let (set, complete) = ball_coset(ball, ui, j, side);
    Ok(CosetMembers {
        members: set.ones().map(|i| ball.element(i).clone()).collect(),
        complete,
    })
}

fn act(ball: &Ball, i: usize, s: usize, side: Side) -> Option<usize> {
    match side {
        Side::Left => ball.right_mul(i, s),
        Side::Right => ball.left_mul(s, i),
    }
}

fn descents_on(ball: &Ball, i: usize, side: Side) -> GeneratorSet {
    match side {
        Side::Left => ball.right_descents(i),
        Side::Right => ball.left_descents(i),
    }
}

/// Closure of `{start}` under the `J` action inside the ball, and whether
/// the action never left the ball.
pub(crate) fn ball_coset(ball: &Ball, start: usize, j: GeneratorSet, side: Side) -> (FixedBitSet, bool) {
    let mut set = FixedBitSet::with_capacity(ball.len());
    let mut stack = vec![start];
    set.insert(start);
    let mut complete = true;
    while let Some(z) = stack.pop() {
        for s in j.iter() {
            match act(ball, z, s, side) {
                Some(next) => {
                    if !set.put(next) {
                        stack.push(next);
                    }
                }
                None => complete = false,
            }
        }
    }
    (set, complete)
}

/// Ball index of the minimal representative of the coset of `i`.
pub fn ball_project(ball: &Ball, i: usize, j: GeneratorSet, side: Side) -> usize {
    let mut current = i;
    while let Some(s) = descents_on(ball, current, side).intersection(j).first() {
        current = act(ball, current, s, side).expect("descent stays in ball");
    }
    current
}

/// All cosets of `W_J` on one side that meet a ball.
pub struct CosetPartition {
    pub j: GeneratorSet,
    pub side: Side,
    /// Ball index of the coset representative of each element.
    pub rep_of: Vec<usize>,
    /// Representatives in increasing ball index order.
    pub reps: Vec<usize>,
    /// Members within the ball, parallel to `reps`.
    pub members: Vec<FixedBitSet>,
    /// Whether the whole coset lies in the ball, parallel to `reps`.
    pub complete: Vec<bool>,
}

impl CosetPartition {
    pub fn new(ball: &Ball, j: GeneratorSet, side: Side) -> Self {
        let n = ball.len();
        let rep_of: Vec<usize> = (0..n).map(|i| ball_project(ball, i, j, side)).collect();
        let reps: Vec<usize> = (0..n).filter(|&i| rep_of[i] == i).collect();
        let mut members = Vec::with_capacity(reps.len());
        let mut complete = Vec::with_capacity(reps.len());
        for &u in &reps {
            let (set, whole) = ball_coset(ball, u, j, side);
            members.push(set);
            complete.push(whole);
        }
        CosetPartition {
            j,
            side,
            rep_of,
            reps,
            members,
            complete,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(name: &str) -> CoxeterSystem {
        CoxeterSystem::preset(name).unwrap()
    }

    fn el(sys: &CoxeterSystem, letters: &[usize]) -> Element {
        sys.normalize_letters(letters).unwrap()
    }

    fn set(v: &[usize]) -> GeneratorSet {
        v.iter().copied().collect()
    }

    #[test]
    fn decompose_right_examples() {
        let a2 = sys("A2");
        let w = el(&a2, &[0, 1]);
        assert_eq!(decompose_right(&a2, &w, GeneratorSet::EMPTY).unwrap(), (w.clone(), a2.identity()));
        assert_eq!(
            decompose_right(&a2, &w, set(&[1])).unwrap(),
            (el(&a2, &[0]), el(&a2, &[1]))
        );
        let top = el(&a2, &[0, 1, 0]);
        assert_eq!(
            decompose_right(&a2, &top, set(&[1])).unwrap(),
            (el(&a2, &[1, 0]), el(&a2, &[1]))
        );
    }

    #[test]
    fn decompose_left_examples() {
        let a2 = sys("A2");
        let w = el(&a2, &[0, 1]);
        assert_eq!(decompose_left(&a2, &w, GeneratorSet::EMPTY).unwrap(), (a2.identity(), w.clone()));
        assert_eq!(
            decompose_left(&a2, &w, set(&[0])).unwrap(),
            (el(&a2, &[0]), el(&a2, &[1]))
        );
        let top = el(&a2, &[0, 1, 0]);
        assert_eq!(
            decompose_left(&a2, &top, set(&[0])).unwrap(),
            (el(&a2, &[0]), el(&a2, &[1, 0]))
        );
    }

    #[test]
    fn min_coset_rep_examples() {
        let a2 = sys("A2");
        let u = el(&a2, &[1, 0]);
        assert_eq!(min_coset_rep(&a2, &u, set(&[1])).unwrap(), u);
        assert_eq!(min_coset_rep(&a2, &el(&a2, &[0, 1]), set(&[1])).unwrap(), el(&a2, &[0]));
        assert!(min_coset_rep(&a2, &el(&a2, &[0, 1, 0]), set(&[0, 1])).unwrap().is_identity());
        assert_eq!(project(&a2, &el(&a2, &[0, 1]), set(&[1])).unwrap(), el(&a2, &[0]));
    }

    #[test]
    fn coset_member_examples() {
        let a2 = sys("A2");
        let ball = Ball::new(&a2, 3).unwrap();
        let trivial = coset_members(&ball, &a2.identity(), GeneratorSet::EMPTY).unwrap();
        assert_eq!(trivial, CosetMembers { members: vec![a2.identity()], complete: true });
        let c = coset_members(&ball, &el(&a2, &[0]), set(&[1])).unwrap();
        assert_eq!(c.members, vec![el(&a2, &[0]), el(&a2, &[0, 1])]);
        assert!(c.complete);
        assert_eq!(
            coset_members(&ball, &el(&a2, &[0, 1]), set(&[1])).unwrap_err(),
            Error::RepNotMinimal
        );

        let inf = sys("I2(inf)");
        let ball = Ball::new(&inf, 3).unwrap();
        let c = coset_members(&ball, &inf.identity(), set(&[0])).unwrap();
        assert_eq!(c.members, vec![inf.identity(), el(&inf, &[0])]);
        assert!(c.complete);
        let c = coset_members(&ball, &inf.identity(), set(&[0, 1])).unwrap();
        assert_eq!(c.members.len(), ball.len());
        assert!(!c.complete);
    }

    #[test]
    fn right_coset_members() {
        let a2 = sys("A2");
        let ball = Ball::new(&a2, 3).unwrap();
        let c = coset_members_on(&ball, &el(&a2, &[0]), set(&[1]), Side::Right).unwrap();
        assert_eq!(c.members, vec![el(&a2, &[0]), el(&a2, &[1, 0])]);
        assert!(CosetHandle::new(&a2, el(&a2, &[1, 0]), set(&[1]), Side::Right).is_err());
        assert!(CosetHandle::new(&a2, el(&a2, &[1, 0]), set(&[1]), Side::Left).is_ok());
    }

    #[test]
    fn descent_pairs() {
        let a2 = sys("A2");
        assert!(descent_pair_order(&a2, &el(&a2, &[0, 1])).unwrap().is_empty());
        assert_eq!(
            descent_pair_order(&a2, &el(&a2, &[0, 1, 0])).unwrap(),
            vec![(0, 1, RelationOrder::Finite(3))]
        );
        let aff = sys("affine-A2");
        let ball = Ball::new(&aff, 6).unwrap();
        for x in ball.elements() {
            for (_, _, m) in descent_pair_order(&aff, x).unwrap() {
                assert_eq!(m, RelationOrder::Finite(3));
            }
        }
    }

    #[test]
    fn partition_covers_ball() {
        let ball = Ball::new(&sys("B3"), 9).unwrap();
        for j in GeneratorSet::all_subsets(3) {
            for side in [Side::Left, Side::Right] {
                let p = CosetPartition::new(&ball, j, side);
                let mut seen = FixedBitSet::with_capacity(ball.len());
                for (k, set) in p.members.iter().enumerate() {
                    assert!(p.complete[k]);
                    assert!(seen.is_disjoint(set));
                    seen.union_with(set);
                    for z in set.ones() {
                        assert_eq!(p.rep_of[z], p.reps[k]);
                    }
                }
                assert_eq!(seen.count_ones(..), ball.len());
            }
        }
    }

    #[test]
    fn ball_projection_matches_decomposition() {
        let aff = sys("affine-A2");
        let ball = Ball::new(&aff, 5).unwrap();
        for j in GeneratorSet::all_subsets(3) {
            for (i, w) in ball.elements().iter().enumerate() {
                let rep = ball.element(ball_project(&ball, i, j, Side::Left));
                assert_eq!(rep, &project(&aff, w, j).unwrap());
                let rep = ball.element(ball_project(&ball, i, j, Side::Right));
                assert_eq!(rep, &project_left(&aff, w, j).unwrap());
            }
        }
    }
}
