//! Search for the failure of the converse of projection monotonicity:
//! `u1 <= u2` in `W^J` does not force
//! `min(W_{>=x} ∩ u1 W_J) <= min(W_{>=x} ∩ u2 W_J)`, nor the same for the
//! maxima.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bruhat::{bruhat_leq, Ball};
use crate::error::Result;
use crate::parabolic::{CosetPartition, Side};
use crate::system::CoxeterSystem;
use crate::word::{Element, GeneratorSet};

use super::{maximals, minimals};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremumKind {
    Min,
    Max,
}

/// `u1 <= u2` in `W^J`, yet the chosen extremum of `W_{>=x} ∩ u1 W_J` is
/// not below that of `W_{>=x} ∩ u2 W_J`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleWitness {
    pub x: Element,
    pub u1: Element,
    pub u2: Element,
    #[serde(rename = "J")]
    pub j: GeneratorSet,
    pub kind: ExtremumKind,
    /// Extremum for `u1`.
    pub first: Element,
    /// Extremum for `u2`, not above `first`.
    pub second: Element,
}

/// First witness in sweep order (`x`, then `u1`, then `u2`, minima before
/// maxima), considering only cosets that lie entirely in the ball.
pub fn find_converse_counterexample(ball: &Ball, j: GeneratorSet) -> Option<CounterexampleWitness> {
    let partition = CosetPartition::new(ball, j, Side::Left);
    let cosets: Vec<usize> = (0..partition.reps.len())
        .filter(|&k| partition.complete[k])
        .collect();
    for x in 0..ball.len() {
        let extrema: Vec<Option<(usize, usize)>> = cosets
            .iter()
            .map(|&k| {
                let mut set = ball.above(x).clone();
                set.intersect_with(&partition.members[k]);
                match (&minimals(ball, &set)[..], &maximals(ball, &set)[..]) {
                    ([lo], [hi]) => Some((*lo, *hi)),
                    _ => None,
                }
            })
            .collect();
        for (a, &k1) in cosets.iter().enumerate() {
            for (b, &k2) in cosets.iter().enumerate() {
                let (u1, u2) = (partition.reps[k1], partition.reps[k2]);
                if u1 == u2 || !ball.leq(u1, u2) {
                    continue;
                }
                let (Some((min1, max1)), Some((min2, max2))) = (extrema[a], extrema[b]) else {
                    continue;
                };
                let found = if !ball.leq(min1, min2) {
                    Some((ExtremumKind::Min, min1, min2))
                } else if !ball.leq(max1, max2) {
                    Some((ExtremumKind::Max, max1, max2))
                } else {
                    None
                };
                if let Some((kind, first, second)) = found {
                    return Some(CounterexampleWitness {
                        x: ball.element(x).clone(),
                        u1: ball.element(u1).clone(),
                        u2: ball.element(u2).clone(),
                        j,
                        kind,
                        first: ball.element(first).clone(),
                        second: ball.element(second).clone(),
                    });
                }
            }
        }
    }
    None
}

impl CounterexampleWitness {
    /// Re-derives both extrema without any ball: enumerates each coset by
    /// multiplying out `W_J`, filters by [`bruhat_leq`], and checks that the
    /// recorded extrema are the true ones and violate the implication.
    pub fn revalidate(&self, system: &CoxeterSystem) -> Result<bool> {
        for u in [&self.u1, &self.u2] {
            if !system.right_descents(u)?.intersection(self.j).is_empty() {
                return Ok(false);
            }
        }
        if self.u1 == self.u2 || !bruhat_leq(system, &self.u1, &self.u2)? {
            return Ok(false);
        }
        let first = extremum(system, &self.x, &self.u1, self.j, self.kind)?;
        let second = extremum(system, &self.x, &self.u2, self.j, self.kind)?;
        Ok(first.as_ref() == Some(&self.first)
            && second.as_ref() == Some(&self.second)
            && !bruhat_leq(system, &self.first, &self.second)?)
    }
}

fn extremum(
    system: &CoxeterSystem,
    x: &Element,
    u: &Element,
    j: GeneratorSet,
    kind: ExtremumKind,
) -> Result<Option<Element>> {
    let mut coset = BTreeSet::from([u.clone()]);
    let mut frontier = vec![u.clone()];
    while let Some(z) = frontier.pop() {
        for s in j.iter() {
            let next = system.mul_gen(&z, s)?;
            if coset.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let mut members = Vec::new();
    for z in coset {
        if bruhat_leq(system, x, &z)? {
            members.push(z);
        }
    }
    let mut found = Vec::new();
    for z in &members {
        let mut extreme = true;
        for other in &members {
            if other == z {
                continue;
            }
            let beaten = match kind {
                ExtremumKind::Min => bruhat_leq(system, other, z)?,
                ExtremumKind::Max => bruhat_leq(system, z, other)?,
            };
            if beaten {
                extreme = false;
                break;
            }
        }
        if extreme {
            found.push(z.clone());
        }
    }
    Ok(match &found[..] {
        [one] => Some(one.clone()),
        _ => None,
    })
}
