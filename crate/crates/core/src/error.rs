use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The CLI maps `Precondition`-like variants to exit status 2 and
/// `Budget`/`Unstable` to exit status 3.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-hyperbolic signature (genus {genus}, boundary {boundary}): Euler characteristic must be negative")]
    NonHyperbolic { genus: u32, boundary: u32 },

    #[error("word engine requires boundary (closed surfaces have no free fundamental group)")]
    ClosedSurface,

    #[error("malformed word {word:?}: {reason}")]
    MalformedWord { word: String, reason: String },

    #[error("word {0:?} reduces to the empty word")]
    TrivialWord(String),

    #[error("malformed current {text:?}: {reason}")]
    MalformedCurrent { text: String, reason: String },

    #[error("invalid half-edge order: {0}")]
    InvalidHalfEdgeOrder(String),

    #[error("cyclic order needs three distinct boundary rays")]
    EqualRays,

    #[error("nonpositive parameter {name} = {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("inconsistent pants data: {0}")]
    InconsistentPants(String),

    #[error("unsupported signature (genus {genus}, boundary {boundary}) for {what}")]
    UnsupportedSignature {
        genus: u32,
        boundary: u32,
        what: &'static str,
    },

    #[error("class {0} is not simple")]
    NotSimple(String),

    #[error("classes {0} and {1} intersect")]
    NotDisjoint(String, String),

    #[error("vector has dimension {got}, expected {expected}")]
    WrongDimension { got: usize, expected: usize },

    #[error("vector {0:?} violates the parity/triangle constraints")]
    Inadmissible(Vec<u64>),

    #[error("negative length bound {0}")]
    NegativeBound(f64),

    #[error("measure is not locally finite: homogeneity d = {d} must exceed N = {n}")]
    NotLocallyFinite { d: f64, n: u32 },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("current must be nonzero")]
    ZeroCurrent,

    #[error("current has peripheral components where an internal current is required")]
    NotInternal,

    #[error("current is not binding")]
    NotBinding,

    #[error("current is not scc-free: {0} is a simple summand disjoint from the rest")]
    NotSccFree(String),

    #[error("subsurface and current do not form a pair: {0}")]
    NotAPair(String),

    #[error("search budget of {0} nodes exhausted")]
    Budget(usize),

    #[error("orbit ball did not stabilize up to slack {0}")]
    Unstable(f64),

    #[error("systole check failed: found length {found} below {required}")]
    Systole { found: f64, required: f64 },

    #[error("grid must be nonempty and strictly increasing")]
    BadGrid,

    #[error("mapping class is not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("class {0} is not contained in a single complementary piece")]
    Containment(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status for the CLI: 3 for budget or stability failures,
    /// 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Budget(_) | Error::Unstable(_) => 3,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
