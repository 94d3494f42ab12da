use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{name}` has degree {degree}; degrees must be >= 1")]
    InvalidDegree { name: String, degree: i64 },
    #[error("elements live over different generator sets")]
    MismatchedGenerators,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("d∘d is nonzero from degree {degree} (construction bug upstream)")]
    NonzeroSquare { degree: i32 },
    #[error("degree of d {generator} must be {expected}, got {got}")]
    DifferentialDegree { generator: String, expected: i32, got: i32 },
    #[error("value assigned to `{generator}` must be homogeneous of degree {expected}")]
    Inhomogeneous { generator: String, expected: i32 },
    #[error("d² {generator} = {value} is nonzero")]
    DSquareNonzero { generator: String, value: String },
    #[error("value attached to `{generator}` is not a cocycle")]
    NotACocycle { generator: String },
    #[error("algebra is not minimal: {0}")]
    NotMinimal(String),
    #[error("algebra is not simply connected: {0}")]
    NotSimplyConnected(String),
    #[error("assignment does not commute with the differentials at `{generator}`")]
    NotAMorphism { generator: String },
    #[error("map is not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("operator is not nilpotent on `{generator}` within {bound} steps")]
    NotNilpotent { generator: String, bound: usize },
    #[error("target module is unbounded above; supply a top degree")]
    UnboundedModule,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),
    #[error("window {lo}:{hi} is invalid: {reason}")]
    InvalidWindow { lo: i32, hi: i32, reason: String },
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{line}:{column}: {message}")]
    Semantic { line: usize, column: usize, message: String },
    #[error("routes disagree at degree {degree}: derivation {der}, harrison {harrison}")]
    RouteDisagreement { degree: i32, der: usize, harrison: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
