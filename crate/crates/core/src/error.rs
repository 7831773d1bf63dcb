use thiserror::Error;

use crate::checks::BoundsRecord;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("cannot parse {input:?} as a real number")]
    Parse { input: String },

    #[error("precision of {bits} bits is below the minimum of {min} bits")]
    Precision { bits: u32, min: u32 },

    #[error("division by zero while computing {0}")]
    DivisionByZero(&'static str),

    #[error("degenerate parameter: (q^(delta+1); q)_k vanishes for shifted delta = {0}")]
    DegenerateParameter(String),

    #[error("parameters outside the required regime: {0}")]
    Regime(String),

    #[error("{what} requires degree n >= {min}, got {n}")]
    InvalidDegree {
        what: &'static str,
        n: usize,
        min: usize,
    },

    #[error("{0} did not converge within its iteration budget")]
    NonConvergence(&'static str),

    #[error("no sign change across presumed bracket for zero #{index}: ({lo}, {hi})")]
    BracketFailure {
        index: usize,
        lo: String,
        hi: String,
    },

    #[error("zero #{index} at {value} could not be certified by a sign change")]
    Uncertified { index: usize, value: String },

    #[error("zeros #{index} and #{} are not separated at working precision", index + 1)]
    Cluster { index: usize },

    #[error(
        "no sign change on the delta bracket: f(lo) has sign {lo_sign}, f(hi) has sign {hi_sign}"
    )]
    NoSignChange { lo_sign: i32, hi_sign: i32 },

    #[error("truncated Jackson sum tail bound {bound} exceeds tolerance {tolerance}")]
    TruncationInsufficient { bound: String, tolerance: String },

    #[error("bound chain violated: {0}")]
    ChainViolation(Box<BoundsRecord>),

    #[error("unknown relation id {0:?}")]
    UnknownRelation(String),

    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
}
