use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Word;

use super::ball::Ball;

/// Hasse diagram of a finite piece of the Bruhat order.
///
/// `elements` are sorted by length, then lexicographically; each cover is a
/// pair `[lower, upper]` of indices into `elements`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseDiagram {
    pub elements: Vec<Word>,
    pub covers: Vec<[usize; 2]>,
}

impl HasseDiagram {
    /// Restricts the ball's cover relation to `members` (sorted ball
    /// indices).
    pub(crate) fn from_ball(ball: &Ball, members: &[usize]) -> HasseDiagram {
        let mut position = vec![usize::MAX; ball.len()];
        for (k, &i) in members.iter().enumerate() {
            position[i] = k;
        }
        let mut covers = Vec::new();
        for (k, &i) in members.iter().enumerate() {
            for &x in ball.covers(i) {
                if position[x] != usize::MAX {
                    covers.push([position[x], k]);
                }
            }
        }
        covers.sort_unstable();
        HasseDiagram {
            elements: members.iter().map(|&i| ball.element(i).word().clone()).collect(),
            covers,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serializes")
    }

    pub fn from_json(json: &str) -> Result<HasseDiagram> {
        let diagram: HasseDiagram =
            serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        let n = diagram.elements.len();
        if let Some(bad) = diagram.covers.iter().find(|[a, b]| *a >= n || *b >= n) {
            return Err(Error::Parse(format!("cover {bad:?} out of range")));
        }
        Ok(diagram)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph bruhat {\n  rankdir=BT;\n");
        for (i, w) in self.elements.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{w}\"];");
        }
        for [a, b] in &self.covers {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}
