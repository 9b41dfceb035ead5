use thiserror::Error;

/// Errors produced anywhere in the pipeline.
///
/// Variants fall in two families: input problems (bad generators, files,
/// group specs) and internal consistency guards that should be unreachable
/// on valid input. The CLI maps the first family to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a bijection{}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    NotABijection { line: Option<usize> },

    #[error("group too large: closure exceeds the element cap of {cap}")]
    GroupTooLarge { cap: usize },

    #[error("element is not in the group")]
    NotInGroup,

    #[error("not a subgroup")]
    NotSubgroup,

    #[error("not normal")]
    NotNormal,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("galois index {k} is not coprime to {n}")]
    GaloisIndex { k: u64, n: u32 },

    #[error("not in subfield: element of Q(zeta_{from}) does not lie in Q(zeta_{to})")]
    NotInSubfield { from: u32, to: u32 },

    #[error("p-singular field element")]
    PSingular,

    #[error("non p-integral (p = {p})")]
    NonPIntegral { p: u64 },

    #[error("residue field F_{p}^{f} is too large for table arithmetic")]
    FieldTooLarge { p: u64, f: u32 },

    #[error("table inconsistent: {0}")]
    TableInconsistent(String),

    #[error("integrality violation: {0}")]
    IntegralityViolation(String),

    #[error("not a character: {0}")]
    NotACharacter(String),

    #[error("partition failure: block {block} cannot reach rank {rank}")]
    PartitionFailure { block: usize, rank: usize },

    #[error("defect mismatch in block {block}: block defect {expected}, maximal class defect {found}")]
    DefectMismatch { block: usize, expected: u32, found: u32 },

    #[error("B does not cover b")]
    NotCovering,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("{0}")]
    Validation(String),

    #[error("unknown group '{0}'")]
    UnknownGroup(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by bad user input rather than a failed
    /// mathematical check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::DegreeMismatch { .. }
                | Error::NotABijection { .. }
                | Error::GroupTooLarge { .. }
                | Error::NotInGroup
                | Error::NotSubgroup
                | Error::NotNormal
                | Error::NotPrime(_)
                | Error::Parse { .. }
                | Error::Validation(_)
                | Error::UnknownGroup(_)
                | Error::Io(_)
                | Error::Json(_)
                | Error::FieldTooLarge { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
