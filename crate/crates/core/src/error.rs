use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("edge {edge} has color {color} outside 1..={k}")]
    ColorOutOfRange { edge: String, color: usize, k: usize },
    #[error("presentation failed validation: {0}")]
    Invalid(String),
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error("degree out of range: {0}")]
    DegreeOutOfRange(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("no square recorded for the pair ({0}, {1})")]
    MissingSquare(String, String),
    #[error("cocycle is not functorial on square {0}")]
    NonFunctorialCocycle(String),
    #[error("not a skew product: {0}")]
    NotASkewProduct(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("automorphisms do not commute: {0}")]
    AutomorphismsDontCommute(String),
    #[error("not a bijection: {0}")]
    NotABijection(String),
    #[error("not a Yang-Baxter map: fails at {0:?}")]
    NotYangBaxter((usize, usize, usize)),
    #[error("unknown catalog name {0}")]
    UnknownName(String),
    #[error("presentation is disconnected: {0}")]
    Disconnected(String),
    #[error("lazy graph cannot answer within radius {0}")]
    WindowExhausted(usize),
    #[error("streams are shift equivalent (shift {p} vs {q})")]
    ShiftEquivalentDetected { p: usize, q: usize },
    #[error("graph is not singly connected: {0}")]
    NotSinglyConnected(String),
    #[error("no grading function exists: {0}")]
    NoGrading(String),
    #[error("unsupported plane order {0}")]
    UnsupportedOrder(usize),
    #[error("plane axiom violated: {0}")]
    PlaneAxiomViolation(String),
    #[error("triella axiom {axiom} violated at {witness}")]
    TriellaAxiomViolation { axiom: String, witness: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("shape too small: {0}")]
    ShapeTooSmall(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::MalformedInput(e.to_string())
    }
}
