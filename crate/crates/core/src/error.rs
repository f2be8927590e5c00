use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("p must be prime (got {0})")]
    NotPrime(u64),

    #[error("mismatched field characteristics: p={left} vs p={right}")]
    FieldMismatch { left: u32, right: u32 },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,

    #[error("{op} requires a polynomial of degree >= {min}, got {got}")]
    DegreeTooSmall {
        op: &'static str,
        min: usize,
        got: String,
    },

    #[error("{op} requires a monic polynomial")]
    NotMonic { op: &'static str },

    #[error("{0}")]
    OutOfRange(String),

    #[error("{poly} is not in S_{n} over GF({p})")]
    NotInSn { poly: String, p: u32, n: usize },

    #[error("irreducible index covers degrees <= {available}, degree {requested} requested")]
    DegreeNotIndexed { requested: usize, available: usize },

    #[error("{0} is only defined over GF(2)")]
    NotBinary(&'static str),

    #[error("family is not a member of M_{n}^{d}")]
    NotMember { n: usize, d: usize },

    #[error("|S_n| = {vertices} exceeds the oracle cap of {cap} vertices; lower n or raise GCDFAM_MAX_VERTICES")]
    OracleCapExceeded { vertices: u128, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("family file line {line}: {msg}")]
    FamilyFile { line: usize, msg: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
