use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("wall {wall} leaves points {missing:?} uncovered")]
    CoverageViolation { wall: usize, missing: Vec<usize> },

    #[error("walls {0} and {1} are the same genuine partition")]
    DuplicateGenuinePartition(usize, usize),

    #[error("unknown point {0}")]
    UnknownPoint(String),

    #[error("wall index {index} out of range ({count} walls)")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("wall {0} was given twice where two distinct walls are required")]
    SameWall(usize),

    #[error("wall subgraph {0} is not connected")]
    NotConnected(usize),

    #[error("removing wall subgraph {wall} leaves {count} components instead of 2")]
    WrongComponentCount { wall: usize, count: usize },

    #[error("parent walls {0} and {1} induce the same genuine partition")]
    DuplicateInducedPartition(usize, usize),

    #[error("operation requires a metric")]
    MetricRequired,

    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("orientation has no side for walls {0:?}")]
    IncompleteOrientation(Vec<usize>),

    #[error("orientation is not a valid 0-cube")]
    InvalidZeroCube,

    #[error("{what} cap of {limit} exceeded")]
    StateSpaceCap { what: String, limit: usize },

    #[error("cube is not in the complex")]
    NotInComplex,

    #[error("walls {0} and {1} are not transverse")]
    NotTransverse(usize, usize),

    #[error("conflicting orientations forced on wall {0}")]
    OrientationConflict(usize),

    #[error("loop contraction stuck at position {position}")]
    StuckLoop { position: usize },

    #[error("not a closed edge path: {0}")]
    NotALoop(String),

    #[error("walls {0:?} retain neither halfspace")]
    NotAHemiwallspace(Vec<usize>),

    #[error("fixed orientations admit no 0-cube")]
    EmptySubcomplex,

    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),

    #[error("element {element} breaks invariance at {witness}")]
    InvarianceViolation { element: String, witness: String },

    #[error("unknown generator {0}")]
    UnknownGenerator(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn cap(what: impl Into<String>, limit: usize) -> Self {
        Error::StateSpaceCap {
            what: what.into(),
            limit,
        }
    }
}
