use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DerhamError {
    #[error("monomial exponent {exponent:?} leaves the degree window [{lo}, {hi}]")]
    WindowOverflow {
        exponent: Vec<i64>,
        lo: i64,
        hi: i64,
    },
    #[error("exact division failed in {context}")]
    NotDivisible { context: &'static str },
    #[error("operators {s} and {t} fail to commute")]
    NonCommuting { s: usize, t: usize },
    #[error(
        "specializing q to a p-th root of unity needs root depth 0 \
         (or root-free coefficients); root depth is {root_depth}"
    )]
    RootDepthUnsupported { root_depth: u32 },
    #[error("requested precision {requested} exceeds the base precision {available}")]
    Precision { requested: u32, available: u32 },
    #[error("no stable core between the two windows: {context}")]
    Unstable { context: String },
    #[error("comparison mismatch: {context}")]
    Mismatch { context: String },
    #[error("invalid framing: {reason}")]
    InvalidFraming { reason: String },
}
