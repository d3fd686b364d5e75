//! Coxeter group combinatorics: the word problem, Bruhat order, parabolic
//! quotients, and exhaustive checks that the intersection of a Bruhat
//! interval with a parabolic coset is again a Bruhat interval.
//!
//! Generators are 0-based indices everywhere. Group elements are stored by
//! their ShortLex-minimal reduced word.

pub mod bruhat;
pub mod error;
mod normal;
pub mod parabolic;
pub mod system;
pub mod theorem;
pub mod word;

pub use bruhat::{bruhat_leq, bruhat_leq_subword, Ball, HasseDiagram, Interval};
pub use error::{Error, Result};
pub use system::{CoxeterSystem, MatrixFile, RelationOrder};
pub use word::{Element, GeneratorSet, Word};
pub use parabolic::{
    decompose_left, decompose_right, descent_pair_order, min_coset_rep, project, CosetHandle,
    CosetMembers, Side,
};
pub use theorem::{
    find_converse_counterexample, intersect, run_check, Check, CounterexampleWitness,
    IntersectionResult, VerificationReport,
};
