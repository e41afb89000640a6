use thiserror::Error;

/// Which codimension-one hypothesis failed for a local scheme computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    NotAFace,
    NotEmptySimplex,
    NotCodimensionOne,
    NotSmooth,
    NoValidApex,
    NotIsolated,
    NoSecondHeightOnePoint,
}

impl std::fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Hypothesis::NotAFace => "sigma is not a face of the configuration",
            Hypothesis::NotEmptySimplex => "sigma is not an empty simplex",
            Hypothesis::NotCodimensionOne => "sigma is not a facet (dim sigma != dim A - 1)",
            Hypothesis::NotSmooth => "configuration is not smooth at sigma",
            Hypothesis::NoValidApex => "no point w gives a nonnegative unique height expansion",
            Hypothesis::NotIsolated => "the fixed point is not isolated",
            Hypothesis::NoSecondHeightOnePoint => "no height-one point other than w",
        };
        f.write_str(s)
    }
}

impl Hypothesis {
    pub fn code(&self) -> &'static str {
        match self {
            Hypothesis::NotAFace => "not_a_face",
            Hypothesis::NotEmptySimplex => "not_empty_simplex",
            Hypothesis::NotCodimensionOne => "not_codimension_one",
            Hypothesis::NotSmooth => "not_smooth",
            Hypothesis::NoValidApex => "no_valid_apex",
            Hypothesis::NotIsolated => "not_isolated",
            Hypothesis::NoSecondHeightOnePoint => "no_second_height_one_point",
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("point configuration is empty")]
    EmptyConfiguration,
    #[error("point {index} has dimension {found}, expected {expected}")]
    RaggedPoints {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("point index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("index set is not a face of the configuration")]
    NotAFace,
    #[error("face is not an empty simplex")]
    NotEmptySimplex,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("k must be at least 1")]
    InvalidK,
    #[error("k = {k} exceeds l = {l}")]
    KExceedsL { k: usize, l: usize },
    #[error("invalid chart data: {0}")]
    InvalidChart(String),
    #[error("face has {0} points, brute force is capped at 10")]
    FaceTooLarge(usize),
    #[error("hypothesis violated: {0}")]
    Hypothesis(Hypothesis),
    #[error("local computation needs {0} monomials, more than the cap of {cap}", cap = crate::local::MONOMIAL_CAP)]
    TooManyMonomials(usize),
    #[error("integer coordinate does not fit in 64 bits")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
