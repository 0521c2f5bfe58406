use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Tower data is not strictly lower-indexed; carries the offending
    /// 1-based stage index.
    MalformedTower {
        stage: usize,
        expected: usize,
        found: usize,
    },
    /// The tower is taller than the monomial encoding supports.
    TowerTooTall { n: usize },
    /// Two operands live over different towers.
    TowerMismatch,
    /// A generator index outside `1..=n`.
    IndexOutOfRange { index: usize, n: usize },
    /// A class was required to be homogeneous of the given degree.
    NotHomogeneous { expected_degree: usize },
    /// Stage count out of range for `restrict_stage`.
    StageOutOfRange { k: usize, n: usize },
    /// Two towers of different heights were compared.
    HeightMismatch { left: usize, right: usize },
    /// Matrix or vector dimensions do not fit together.
    DimensionMismatch { expected: usize, found: usize },
    /// A pair handed to the Lemma-form decomposition does not multiply to zero.
    NotVanishing,
    /// A witness shift lives above its allowed filtration level.
    FiltrationViolation { stage: usize, level: usize },
    /// Witness vectors have the wrong length.
    MalformedWitness(String),
    /// The two classification algorithms disagree, or a witness escaped the
    /// oracle's search box. The message carries the counterexample dump.
    CrossValidation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MalformedTower {
                stage,
                expected,
                found,
            } => write!(
                f,
                "malformed tower: stage {stage} has {found} coefficients, expected {expected}"
            ),
            Error::TowerTooTall { n } => {
                write!(f, "tower height {n} exceeds the supported maximum of 32")
            }
            Error::TowerMismatch => f.write_str("classes live over different towers"),
            Error::IndexOutOfRange { index, n } => {
                write!(f, "generator index {index} out of range 1..={n}")
            }
            Error::NotHomogeneous { expected_degree } => {
                write!(f, "class is not homogeneous of degree {expected_degree}")
            }
            Error::StageOutOfRange { k, n } => write!(f, "stage {k} out of range 0..={n}"),
            Error::HeightMismatch { left, right } => {
                write!(f, "towers have different heights ({left} vs {right})")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotVanishing => f.write_str("pair does not multiply to zero"),
            Error::FiltrationViolation { stage, level } => write!(
                f,
                "shift at stage {stage} has filtration level {level}, must be below {stage}"
            ),
            Error::MalformedWitness(msg) => write!(f, "malformed witness: {msg}"),
            Error::CrossValidation(msg) => write!(f, "cross-validation failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
