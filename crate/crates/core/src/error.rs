use thiserror::Error;

use crate::om::AxiomViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sign vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("ground set of size {0} exceeds the supported maximum of {1}")]
    GroundSetTooLarge(usize, usize),
    #[error("invalid sign character {0:?}")]
    InvalidSign(char),
    #[error("empty input")]
    EmptyInput,
    #[error("covector axioms violated: {0}")]
    AxiomFailure(AxiomViolation),
    #[error("covector poset is not graded: {0}")]
    NotGraded(String),
    #[error("normal vector {0} is zero")]
    ZeroNormal(usize),
    #[error("arrangement is not essential: normals span rank {rank} < dimension {dim}")]
    NotEssential { rank: usize, dim: usize },
    #[error("chirotope is identically zero")]
    DegenerateChirotope,
    #[error("chirotope is not alternating: {0}")]
    NotAlternating(String),
    #[error("isomorphism search limited to n <= {limit}, got n = {n}")]
    SearchBudgetExceeded { n: usize, limit: usize },
    #[error("relation is not antisymmetric: {0} and {1} are mutually related")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("relation is not reflexive at element {0}")]
    NotReflexive(usize),
    #[error("invalid Salvetti cell: {0}")]
    InvalidCell(String),
    #[error("{0} is not a tope")]
    NotATope(String),
    #[error("1-skeleton is disconnected: vertices {0} and {1} lie in different components")]
    Disconnected(usize, usize),
    #[error("invalid cell complex: {0}")]
    InvalidComplex(String),
    #[error("consistency check failed: {0}")]
    ConsistencyFailure(String),
    #[error("simplicial/lattice equivalence violated: {0}")]
    EquivalenceViolation(String),
    #[error("homology and Orlik-Solomon ranks differ in degree {degree}: H = {homology}, nbc = {nbc}")]
    ComparisonFailure {
        degree: usize,
        homology: String,
        nbc: String,
    },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("oriented matroid is not simple: {0}")]
    NotSimple(String),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
