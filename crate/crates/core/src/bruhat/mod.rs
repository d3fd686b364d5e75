//! Bruhat order: two independent comparison routines, balls of bounded
//! length with their cover relations, intervals, and Hasse diagrams.

mod ball;
mod hasse;

pub use ball::{Ball, Interval, DEFAULT_BALL_BUDGET};
pub use hasse::HasseDiagram;

use crate::error::Result;
use crate::system::CoxeterSystem;
use crate::word::{Element, GeneratorSet};

/// `u <= w` in Bruhat order, by the left-descent recursion that the lifting
/// property licenses. Always peels the smallest-index left descent of `w`.
pub fn bruhat_leq(system: &CoxeterSystem, u: &Element, w: &Element) -> Result<bool> {
    bruhat_leq_choosing(system, u, w, |descents| {
        descents.first().expect("nonidentity has a descent")
    })
}

/// Same recursion as [`bruhat_leq`], with the descent used at each step
/// picked by `choose` from the (nonempty) left descent set of the current
/// top element. The answer does not depend on the choice.
pub fn bruhat_leq_choosing(
    system: &CoxeterSystem,
    u: &Element,
    w: &Element,
    mut choose: impl FnMut(GeneratorSet) -> usize,
) -> Result<bool> {
    let mut u = u.clone();
    let mut w = w.clone();
    loop {
        if w.is_identity() {
            return Ok(u.is_identity());
        }
        if u.length() > w.length() {
            return Ok(false);
        }
        let s = choose(system.left_descents(&w)?);
        w = system.gen_mul(s, &w)?;
        let su = system.gen_mul(s, &u)?;
        if su.length() < u.length() {
            u = su;
        }
    }
}

/// `u <= w` by the subword property: some reduced word of `u` is a
/// subsequence of the canonical word of `w`.
pub fn bruhat_leq_subword(system: &CoxeterSystem, u: &Element, w: &Element) -> Result<bool> {
    if u.length() > w.length() {
        return Ok(false);
    }
    if u.is_identity() {
        return Ok(true);
    }
    let orbit = system.braid_orbit(u.word())?;
    Ok(orbit.iter().any(|v| v.is_subword_of(w.word())))
}
