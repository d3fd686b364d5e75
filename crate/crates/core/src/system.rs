//! Coxeter matrices: validation, named presets and the JSON matrix file.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Element, Word, MAX_RANK};

pub const DEFAULT_ORBIT_BUDGET: usize = 200_000;

/// Order m(s, t) of the product of two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationOrder {
    Finite(u32),
    Infinite,
}

impl RelationOrder {
    /// Decodes the external encoding, where 0 stands for infinity.
    pub fn from_code(code: u32) -> Self {
        if code == 0 {
            RelationOrder::Infinite
        } else {
            RelationOrder::Finite(code)
        }
    }

    pub fn code(self) -> u32 {
        match self {
            RelationOrder::Finite(m) => m,
            RelationOrder::Infinite => 0,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            RelationOrder::Finite(m) => Some(m as usize),
            RelationOrder::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, RelationOrder::Finite(_))
    }
}

impl fmt::Display for RelationOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationOrder::Finite(m) => write!(f, "{m}"),
            RelationOrder::Infinite => write!(f, "inf"),
        }
    }
}

/// On-disk form of a Coxeter matrix: `{"rank": n, "m": [[...], ...]}`,
/// with 0 meaning infinity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rank: usize,
    pub m: Vec<Vec<u32>>,
}

/// A validated Coxeter system (W, S) with S = {0, ..., rank - 1}.
///
/// The system is immutable after construction. It carries a memo of
/// normalized words which is shared by all callers; concurrent fills always
/// write the same value, so it is safe to use from many threads.
pub struct CoxeterSystem {
    name: String,
    rank: usize,
    matrix: Vec<RelationOrder>,
    orbit_budget: usize,
    pub(crate) cache: RwLock<HashMap<Word, Element>>,
}

impl Clone for CoxeterSystem {
    fn clone(&self) -> Self {
        CoxeterSystem {
            name: self.name.clone(),
            rank: self.rank,
            matrix: self.matrix.clone(),
            orbit_budget: self.orbit_budget,
            cache: RwLock::new(self.cache.read().expect("cache poisoned").clone()),
        }
    }
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("name", &self.name)
            .field("rank", &self.rank)
            .field("matrix", &self.matrix_codes())
            .finish()
    }
}

impl PartialEq for CoxeterSystem {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.matrix == other.matrix
    }
}

impl CoxeterSystem {
    /// Validates a Coxeter matrix.
    pub fn new(rank: usize, matrix: Vec<Vec<RelationOrder>>) -> Result<Self> {
        if rank < 1 {
            return Err(Error::BadRank);
        }
        if rank > MAX_RANK {
            return Err(Error::RankTooLarge {
                rank,
                max: MAX_RANK,
            });
        }
        if matrix.len() != rank || matrix.iter().any(|row| row.len() != rank) {
            return Err(Error::BadShape { rank });
        }
        for (i, row) in matrix.iter().enumerate() {
            if row[i] != RelationOrder::Finite(1) {
                return Err(Error::BadDiagonal { i });
            }
        }
        for (i, row) in matrix.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if m != matrix[j][i] {
                    return Err(Error::NonSymmetric { i, j });
                }
                if matches!(m, RelationOrder::Finite(k) if k < 2) {
                    return Err(Error::BadOffDiagonal { i, j });
                }
            }
        }
        Ok(CoxeterSystem {
            name: String::from("custom"),
            rank,
            matrix: matrix.into_iter().flatten().collect(),
            orbit_budget: DEFAULT_ORBIT_BUDGET,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Validates a matrix in the external integer encoding (0 = infinity).
    pub fn from_codes(rank: usize, codes: &[Vec<u32>]) -> Result<Self> {
        let matrix = codes
            .iter()
            .map(|row| row.iter().map(|&c| RelationOrder::from_code(c)).collect())
            .collect();
        Self::new(rank, matrix)
    }

    pub fn from_matrix_file(file: &MatrixFile) -> Result<Self> {
        Self::from_codes(file.rank, &file.m)
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let file: MatrixFile =
            serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_matrix_file(&file)
    }

    pub fn to_matrix_file(&self) -> MatrixFile {
        MatrixFile {
            rank: self.rank,
            m: self.matrix_codes(),
        }
    }

    /// Resolves a named preset: `A<n>`, `B<n>`, `H3`, `H4`, `I2(m)`,
    /// `I2(inf)` or `affine-A2`.
    pub fn preset(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownPreset(name.to_string());
        let codes = match name {
            "H3" => linear(3, &[5, 3]),
            "H4" => linear(4, &[5, 3, 3]),
            "affine-A2" => vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]],
            _ => {
                if let Some(arg) = name.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
                    let m = match arg {
                        "inf" | "∞" => 0,
                        _ => match arg.parse::<u32>() {
                            Ok(m) if m >= 2 => m,
                            _ => return Err(unknown()),
                        },
                    };
                    linear(2, &[m])
                } else if let Some(n) = name.strip_prefix('A') {
                    let n: usize = n.parse().map_err(|_| unknown())?;
                    if n < 1 {
                        return Err(unknown());
                    }
                    linear(n, &vec![3; n - 1])
                } else if let Some(n) = name.strip_prefix('B') {
                    let n: usize = n.parse().map_err(|_| unknown())?;
                    if n < 2 {
                        return Err(unknown());
                    }
                    let mut bonds = vec![3; n - 1];
                    bonds[0] = 4;
                    linear(n, &bonds)
                } else {
                    return Err(unknown());
                }
            }
        };
        let rank = codes.len();
        Ok(Self::from_codes(rank, &codes)?.with_name(name))
    }

    /// A preset name, or else a path to a JSON matrix file.
    pub fn resolve(source: &str) -> Result<Self> {
        match Self::preset(source) {
            Ok(system) => Ok(system),
            Err(Error::UnknownPreset(_)) if Path::new(source).is_file() => {
                let json = std::fs::read_to_string(source)
                    .map_err(|e| Error::Parse(format!("{source}: {e}")))?;
                Ok(Self::from_json(&json)?.with_name(source))
            }
            Err(e) => Err(e),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_orbit_budget(mut self, budget: usize) -> Self {
        self.orbit_budget = budget.max(1);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn orbit_budget(&self) -> usize {
        self.orbit_budget
    }

    pub fn m(&self, s: usize, t: usize) -> RelationOrder {
        self.matrix[s * self.rank + t]
    }

    pub fn matrix_codes(&self) -> Vec<Vec<u32>> {
        self.matrix
            .chunks(self.rank)
            .map(|row| row.iter().map(|m| m.code()).collect())
            .collect()
    }

    /// Whether W is finite, decided by positive definiteness of the cosine
    /// form B(s, t) = -cos(pi / m(s, t)).
    pub fn is_finite(&self) -> bool {
        let n = self.rank;
        let mut a = vec![0.0f64; n * n];
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] = match self.m(i, j) {
                    RelationOrder::Finite(m) => -(std::f64::consts::PI / m as f64).cos(),
                    RelationOrder::Infinite => -1.0,
                };
            }
        }
        // Cholesky; fails exactly when the form is not positive definite.
        for j in 0..n {
            let mut d = a[j * n + j];
            for k in 0..j {
                d -= a[j * n + k] * a[j * n + k];
            }
            if d <= 1e-9 {
                return false;
            }
            let d = d.sqrt();
            a[j * n + j] = d;
            for i in j + 1..n {
                let mut v = a[i * n + j];
                for k in 0..j {
                    v -= a[i * n + k] * a[j * n + k];
                }
                a[i * n + j] = v / d;
            }
        }
        true
    }

    pub(crate) fn check_letters(&self, word: &Word) -> Result<()> {
        match word.iter().find(|&&s| s as usize >= self.rank) {
            Some(&s) => Err(Error::LetterOutOfRange {
                letter: s as usize,
                rank: self.rank,
            }),
            None => Ok(()),
        }
    }
}

/// Codes for a string diagram 0 - 1 - ... - (n-1) with the given bonds.
fn linear(n: usize, bonds: &[u32]) -> Vec<Vec<u32>> {
    let mut codes = vec![vec![2; n]; n];
    for (i, row) in codes.iter_mut().enumerate() {
        row[i] = 1;
    }
    for (i, &m) in bonds.iter().enumerate() {
        codes[i][i + 1] = m;
        codes[i + 1][i] = m;
    }
    codes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_a2() {
        let sys = CoxeterSystem::from_codes(2, &[vec![1, 3], vec![3, 1]]).unwrap();
        assert_eq!(sys.m(0, 1), RelationOrder::Finite(3));
    }

    #[test]
    fn infinite_dihedral_is_valid() {
        let sys = CoxeterSystem::from_codes(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(sys.m(1, 0), RelationOrder::Infinite);
        assert!(!sys.is_finite());
    }

    #[test]
    fn rejects_bad_matrices() {
        assert_eq!(
            CoxeterSystem::from_codes(2, &[vec![1, 2], vec![3, 1]]).unwrap_err(),
            Error::NonSymmetric { i: 0, j: 1 }
        );
        assert_eq!(
            CoxeterSystem::from_codes(2, &[vec![2, 3], vec![3, 1]]).unwrap_err(),
            Error::BadDiagonal { i: 0 }
        );
        assert_eq!(
            CoxeterSystem::from_codes(2, &[vec![1, 1], vec![1, 1]]).unwrap_err(),
            Error::BadOffDiagonal { i: 0, j: 1 }
        );
        assert_eq!(CoxeterSystem::from_codes(0, &[]).unwrap_err(), Error::BadRank);
        assert_eq!(
            CoxeterSystem::from_codes(2, &[vec![1, 3]]).unwrap_err(),
            Error::BadShape { rank: 2 }
        );
    }

    #[test]
    fn presets() {
        for (name, rank, finite) in [
            ("A2", 2, true),
            ("A3", 3, true),
            ("B2", 2, true),
            ("B3", 3, true),
            ("H3", 3, true),
            ("H4", 4, true),
            ("I2(7)", 2, true),
            ("I2(inf)", 2, false),
            ("affine-A2", 3, false),
        ] {
            let sys = CoxeterSystem::preset(name).unwrap();
            assert_eq!(sys.rank(), rank, "{name}");
            assert_eq!(sys.is_finite(), finite, "{name}");
            assert_eq!(sys.name(), name);
        }
        assert_eq!(CoxeterSystem::preset("B3").unwrap().m(0, 1), RelationOrder::Finite(4));
        assert_eq!(CoxeterSystem::preset("H3").unwrap().m(0, 2), RelationOrder::Finite(2));
        assert!(matches!(CoxeterSystem::preset("I2(1)"), Err(Error::UnknownPreset(_))));
        assert!(matches!(CoxeterSystem::preset("E9"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn matrix_file_round_trip() {
        let sys = CoxeterSystem::preset("affine-A2").unwrap();
        let json = serde_json::to_string(&sys.to_matrix_file()).unwrap();
        assert_eq!(json, r#"{"rank":3,"m":[[1,3,3],[3,1,3],[3,3,1]]}"#);
        assert_eq!(CoxeterSystem::from_json(&json).unwrap(), sys);
        let inf = CoxeterSystem::from_json(r#"{"rank":2,"m":[[1,0],[0,1]]}"#).unwrap();
        assert_eq!(inf, CoxeterSystem::preset("I2(inf)").unwrap());
    }
}
