use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be at least 1")]
    BadRank,
    #[error("rank {rank} exceeds the supported maximum of {max}")]
    RankTooLarge { rank: usize, max: usize },
    #[error("matrix must be {rank}x{rank}")]
    BadShape { rank: usize },
    #[error("matrix is not symmetric at ({i}, {j})")]
    NonSymmetric { i: usize, j: usize },
    #[error("diagonal entry ({i}, {i}) must be 1")]
    BadDiagonal { i: usize },
    #[error("off-diagonal entry ({i}, {j}) must be at least 2 (or 0 for infinity)")]
    BadOffDiagonal { i: usize, j: usize },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("malformed input: {0}")]
    Parse(String),

    #[error("letter {letter} out of range for rank {rank}")]
    LetterOutOfRange { letter: usize, rank: usize },
    #[error("braid orbit exceeded budget of {budget} words")]
    OrbitBudgetExceeded { budget: usize },
    #[error("word is not reduced")]
    NotReduced,

    #[error("ball exceeded budget of {budget} elements")]
    BallBudgetExceeded { budget: usize },
    #[error("element {0:?} is not in the ball")]
    NotInBall(Vec<u8>),
    #[error("bottom is not below top in Bruhat order")]
    NotComparable,
    #[error("interval top has length {length}, beyond ball bound {bound}")]
    TopOutOfBall { length: usize, bound: usize },

    #[error("coset representative is not minimal for the given generator set")]
    RepNotMinimal,
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::OrbitBudgetExceeded { .. } | Error::BallBudgetExceeded { .. }
        )
    }
}
