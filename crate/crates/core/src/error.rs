use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("permutation degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("{r} is not a unit modulo {n}")]
    NotAUnit { r: u64, n: u64 },

    #[error("{k} does not divide {p} - 1")]
    OrderNotDividing { k: u64, p: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("gcd({a}, {b}) != 1")]
    NotCoprime { a: u64, b: u64 },

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("connection set is not closed under negation/inversion: {0}")]
    Asymmetric(String),

    #[error("permutation is not semiregular")]
    NotSemiregular,

    #[error("permutation is not an automorphism")]
    NotAutomorphism,

    #[error("invalid Hamilton cycle: {0}")]
    InvalidCycle(String),

    #[error("net voltage {voltage} does not generate Z_{k}")]
    NonGeneratingVoltage { voltage: usize, k: usize },

    #[error("graph is not cubic")]
    NotCubic,

    #[error("graph is disconnected")]
    Disconnected,
}

pub type Result<T> = std::result::Result<T, Error>;
