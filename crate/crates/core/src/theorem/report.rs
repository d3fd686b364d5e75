use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::parabolic::Side;
use crate::word::{GeneratorSet, Word};

/// The individual sweeps a ball can be put through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Every nonempty interval-coset intersection is an interval.
    Theorem,
    /// Every nonempty interval-coset intersection has a unique maximum.
    UniqueMax,
    /// The induction step for the minimum of `W_{>=x} ∩ u W_J`.
    MinRecursion,
    /// The transfer `w * (.. s_i) >= x  <=>  w >= x * (s_i ..)` along a
    /// dihedral parabolic subgroup.
    DihedralChain,
    /// Any two right descents generate a finite dihedral subgroup.
    DescentPairs,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::Theorem,
        Check::UniqueMax,
        Check::MinRecursion,
        Check::DihedralChain,
        Check::DescentPairs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Theorem => "theorem",
            Check::UniqueMax => "unique-max",
            Check::MinRecursion => "min-recursion",
            Check::DihedralChain => "dihedral-chain",
            Check::DescentPairs => "descent-pairs",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "theorem" => Ok(Check::Theorem),
            "unique-max" => Ok(Check::UniqueMax),
            "min-recursion" => Ok(Check::MinRecursion),
            "dihedral-chain" => Ok(Check::DihedralChain),
            "descent-pairs" | "prop3" => Ok(Check::DescentPairs),
            _ => Err(format!("unknown check `{s}`")),
        }
    }
}

/// A configuration on which a check failed. Fields that do not apply to a
/// given check are omitted from the JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
    pub x: Word,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Word>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<Word>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<Word>,
    #[serde(rename = "J", skip_serializing_if = "Option::is_none")]
    pub j: Option<GeneratorSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
    pub reason: String,
}

impl Failure {
    pub(crate) fn new(x: Word, reason: impl Into<String>) -> Self {
        Failure {
            side: None,
            x,
            y: None,
            u: None,
            w: None,
            j: None,
            pair: None,
            h: None,
            reason: reason.into(),
        }
    }
}

/// Outcome of one exhaustive sweep over a ball.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: Check,
    pub system: String,
    #[serde(rename = "L")]
    pub bound: usize,
    pub tested: u64,
    pub nonempty: u64,
    pub skipped: u64,
    pub verified: bool,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn is_verified(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// JSON with the timing zeroed, for comparing runs.
    pub fn to_json_untimed(&self) -> String {
        let mut copy = self.clone();
        copy.elapsed_ms = 0;
        copy.to_json()
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{:<15} {:<10} L={:<3} tested={:<10} nonempty={:<10} skipped={:<8} failures={:<4} {} ms\n",
            self.check.name(),
            self.system,
            self.bound,
            self.tested,
            self.nonempty,
            self.skipped,
            self.failures.len(),
            self.elapsed_ms
        );
        for f in &self.failures {
            out.push_str("  ");
            out.push_str(&serde_json::to_string(f).expect("failure serializes"));
            out.push('\n');
        }
        out
    }
}
