use thiserror::Error;

use crate::chow::Geometry;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("geometry mismatch: {left} vs {right}")]
    GeometryMismatch { left: Geometry, right: Geometry },

    #[error("{0} carries no Chow ring arithmetic")]
    NoChowRing(Geometry),

    #[error("class is not concentrated in degree 3")]
    NotTopDegree,

    #[error("Riemann-Roch produced the non-integral value {0}")]
    NonIntegral(String),

    #[error("rank must be positive")]
    ZeroRank,

    #[error("inadmissible invariants: {}", .0.join(", "))]
    Inadmissible(Vec<String>),

    #[error("unsupported sheaf term {term} on {geometry}")]
    UnsupportedSheaf { term: String, geometry: Geometry },

    #[error("monad has alternating rank {0}, expected 2")]
    MonadRank(i64),

    #[error("monad cohomology must have rank 2 and c1 = 0")]
    NotSelfDual,

    #[error("invariants {alpha},{beta} are not minimal (2α+β = {pairing})")]
    NotMinimal { alpha: i64, beta: i64, pairing: i64 },

    #[error("minimal charge {alpha}ξ²+{beta}f² is not realised by an instanton (minimal instantons are earnest)")]
    MinimalNotRealized { alpha: i64, beta: i64 },

    #[error("λ must be non-zero")]
    ZeroLambda,

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
