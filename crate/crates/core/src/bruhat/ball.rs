use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::system::CoxeterSystem;
use crate::word::{Element, GeneratorSet, Word};

use super::hasse::HasseDiagram;

pub const DEFAULT_BALL_BUDGET: usize = 500_000;

const OUTSIDE: u32 = u32::MAX;

/// All elements of length at most `bound`, indexed in ShortLex order, with
/// left and right multiplication tables and (built on first use) the full
/// Bruhat order restricted to the ball.
///
/// A ball is downward closed, so every interval `[x, y]` with `y` in the
/// ball lies entirely inside it. Balls are immutable and `Sync`.
pub struct Ball {
    system: CoxeterSystem,
    bound: usize,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    /// First index of each length, plus a final sentinel.
    level_start: Vec<usize>,
    right: Vec<u32>,
    left: Vec<u32>,
    right_desc: Vec<GeneratorSet>,
    left_desc: Vec<GeneratorSet>,
    inverse: Vec<usize>,
    order: OnceLock<Order>,
}

struct Order {
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
    covers: Vec<Vec<usize>>,
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ball")
            .field("system", &self.system.name())
            .field("bound", &self.bound)
            .field("len", &self.len())
            .finish()
    }
}

/// A Bruhat interval `[bottom, top]`; members sorted in ShortLex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub bottom: Element,
    pub top: Element,
    pub members: Vec<Element>,
}

impl Ball {
    pub fn new(system: &CoxeterSystem, bound: usize) -> Result<Ball> {
        Self::with_budget(system, bound, DEFAULT_BALL_BUDGET)
    }

    /// The whole of a finite group, with the bound set to the length of the
    /// longest element. Infinite groups run into `budget`.
    pub fn whole_group(system: &CoxeterSystem, budget: usize) -> Result<Ball> {
        let mut ball = Self::with_budget(system, usize::MAX, budget)?;
        ball.bound = ball.elements.last().map_or(0, Element::length);
        Ok(ball)
    }

    /// Enumerates the ball by breadth-first search from the identity,
    /// failing once more than `budget` elements have been found.
    pub fn with_budget(system: &CoxeterSystem, bound: usize, budget: usize) -> Result<Ball> {
        let rank = system.rank();
        let mut elements = vec![Element::identity()];
        let mut level_start = vec![0];
        let mut level = vec![Element::identity()];
        for length in 1..=bound {
            let mut next = BTreeSet::new();
            for w in &level {
                for s in 0..rank {
                    let ws = system.mul_gen(w, s)?;
                    if ws.length() == length {
                        next.insert(ws);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            level_start.push(elements.len());
            if elements.len() + next.len() > budget {
                return Err(Error::BallBudgetExceeded { budget });
            }
            level = next.into_iter().collect();
            elements.extend(level.iter().cloned());
        }
        let n = elements.len();
        level_start.push(n);
        let index: HashMap<Element, usize> =
            elements.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();

        let mut right = vec![OUTSIDE; n * rank];
        let mut right_desc = vec![GeneratorSet::EMPTY; n];
        for (i, w) in elements.iter().enumerate() {
            for s in 0..rank {
                let ws = system.mul_gen(w, s)?;
                if ws.length() < w.length() {
                    right_desc[i].insert(s);
                }
                if let Some(&j) = index.get(&ws) {
                    right[i * rank + s] = j as u32;
                }
            }
        }

        // With w = w' t (canonical words are prefix closed): s w = (s w') t
        // and w^-1 = t w'^-1.
        let mut left = vec![OUTSIDE; n * rank];
        let mut left_desc = vec![GeneratorSet::EMPTY; n];
        let mut inverse = vec![0usize; n];
        left[..rank].copy_from_slice(&right[..rank]);
        for (i, w) in elements.iter().enumerate().skip(1) {
            let (&t, prefix) = w.word().split_last().expect("nonidentity");
            let t = t as usize;
            let prefix = index[&Element::from_canonical(Word::new(prefix.to_vec()))];
            for s in 0..rank {
                let sp = left[prefix * rank + s];
                debug_assert_ne!(sp, OUTSIDE);
                left[i * rank + s] = right[sp as usize * rank + t];
            }
            inverse[i] = left[inverse[prefix] * rank + t] as usize;
        }
        for i in 0..n {
            for s in 0..rank {
                let j = left[i * rank + s];
                if j != OUTSIDE && elements[j as usize].length() < elements[i].length() {
                    left_desc[i].insert(s);
                }
            }
        }

        Ok(Ball {
            system: system.clone(),
            bound,
            elements,
            index,
            level_start,
            right,
            left,
            right_desc,
            left_desc,
            inverse,
            order: OnceLock::new(),
        })
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True if the ball is closed under multiplication, i.e. it is the
    /// whole (finite) group.
    pub fn is_whole_group(&self) -> bool {
        !self.right.contains(&OUTSIDE)
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn length(&self, i: usize) -> usize {
        self.elements[i].length()
    }

    pub fn index_of(&self, w: &Element) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn require(&self, w: &Element) -> Result<usize> {
        self.index_of(w)
            .ok_or_else(|| Error::NotInBall(w.word().letters().to_vec()))
    }

    /// Indices of the elements of the given length.
    pub fn level(&self, length: usize) -> std::ops::Range<usize> {
        match (self.level_start.get(length), self.level_start.get(length + 1)) {
            (Some(&a), Some(&b)) => a..b,
            _ => self.len()..self.len(),
        }
    }

    /// Index of `w * s`, if it lies in the ball.
    pub fn right_mul(&self, i: usize, s: usize) -> Option<usize> {
        let j = self.right[i * self.system.rank() + s];
        (j != OUTSIDE).then_some(j as usize)
    }

    /// Index of `s * w`, if it lies in the ball.
    pub fn left_mul(&self, s: usize, i: usize) -> Option<usize> {
        let j = self.left[i * self.system.rank() + s];
        (j != OUTSIDE).then_some(j as usize)
    }

    pub fn right_descents(&self, i: usize) -> GeneratorSet {
        self.right_desc[i]
    }

    pub fn left_descents(&self, i: usize) -> GeneratorSet {
        self.left_desc[i]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    fn order(&self) -> &Order {
        self.order.get_or_init(|| self.build_order())
    }

    /// Rows of the order matrix follow the same left-descent recursion as
    /// [`super::bruhat_leq`], reading earlier rows instead of recursing.
    fn build_order(&self) -> Order {
        let n = self.len();
        let mut below: Vec<FixedBitSet> = Vec::with_capacity(n);
        for w in 0..n {
            let mut row = FixedBitSet::with_capacity(n);
            if w == 0 {
                row.insert(0);
            } else {
                let s = self.left_desc[w].first().expect("nonidentity has a descent");
                let sw = self.left_mul(s, w).expect("descent stays in ball");
                let prev = &below[sw];
                for u in 0..self.level(self.length(w)).end {
                    let hit = if self.left_desc[u].contains(s) {
                        prev.contains(self.left_mul(s, u).expect("descent stays in ball"))
                    } else {
                        prev.contains(u)
                    };
                    if hit {
                        row.insert(u);
                    }
                }
            }
            below.push(row);
        }
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        let mut covers = vec![Vec::new(); n];
        for (w, row) in below.iter().enumerate() {
            for u in row.ones() {
                above[u].insert(w);
                if self.length(u) + 1 == self.length(w) {
                    covers[w].push(u);
                }
            }
        }
        Order {
            below,
            above,
            covers,
        }
    }

    /// `u <= w` for ball indices.
    pub fn leq(&self, u: usize, w: usize) -> bool {
        self.order().below[w].contains(u)
    }

    /// `{u : u <= w}` as a bit set over ball indices.
    pub fn below(&self, w: usize) -> &FixedBitSet {
        &self.order().below[w]
    }

    /// `{w in ball : w >= x}` as a bit set over ball indices.
    pub fn above(&self, x: usize) -> &FixedBitSet {
        &self.order().above[x]
    }

    /// Indices of the elements covered by `w`.
    pub fn covers(&self, w: usize) -> &[usize] {
        &self.order().covers[w]
    }

    /// Members of `[x, y]` as a bit set (empty if `x` is not below `y`).
    pub fn interval_set(&self, x: usize, y: usize) -> FixedBitSet {
        let mut set = self.above(x).clone();
        set.intersect_with(self.below(y));
        set
    }

    /// Checks `x <= y` and that `y` lies in the ball, returning indices.
    pub fn interval_indices(&self, x: &Element, y: &Element) -> Result<(usize, usize)> {
        if y.length() > self.bound {
            return Err(Error::TopOutOfBall {
                length: y.length(),
                bound: self.bound,
            });
        }
        let yi = self.require(y)?;
        let xi = self.index_of(x).ok_or(Error::NotComparable)?;
        if !self.leq(xi, yi) {
            return Err(Error::NotComparable);
        }
        Ok((xi, yi))
    }

    pub fn interval(&self, x: &Element, y: &Element) -> Result<Interval> {
        let (xi, yi) = self.interval_indices(x, y)?;
        Ok(Interval {
            bottom: x.clone(),
            top: y.clone(),
            members: self
                .interval_set(xi, yi)
                .ones()
                .map(|i| self.elements[i].clone())
                .collect(),
        })
    }

    /// All `x` with `x` covered by `w`.
    pub fn covers_of(&self, w: &Element) -> Result<Vec<Element>> {
        let wi = self.require(w)?;
        Ok(self
            .covers(wi)
            .iter()
            .map(|&i| self.elements[i].clone())
            .collect())
    }

    pub fn hasse(&self) -> HasseDiagram {
        let all: Vec<usize> = (0..self.len()).collect();
        HasseDiagram::from_ball(self, &all)
    }

    pub fn interval_hasse(&self, x: &Element, y: &Element) -> Result<HasseDiagram> {
        let (xi, yi) = self.interval_indices(x, y)?;
        let members: Vec<usize> = self.interval_set(xi, yi).ones().collect();
        Ok(HasseDiagram::from_ball(self, &members))
    }
}
