//! Exact-arithmetic certificates for determinantal degenerations of the
//! generic symmetric matrix.
//!
//! The library constructs two structured specializations of the `m x m`
//! generic symmetric matrix — corner cloning (the trailing diagonal entry
//! replaced by its neighbor) and triangular sparsing (zeros below a fixed
//! anti-diagonal) — and mechanically verifies the algebra attached to their
//! determinants: cofactor identities, gradient ideals, linear syzygies,
//! Hessian ranks, initial-ideal codimension certificates, and the ladder
//! systems cutting out dual and polar varieties. All computation is exact
//! over the rationals; random sampling is used only where a rank over a
//! function field is certified from below, and every draw derives from an
//! explicit seed.

pub mod calculus;
pub mod certificates;
pub mod cli;
pub mod duality;
pub mod linalg;
pub mod matrix;
pub mod report;
pub mod ring;
pub mod sampling;
pub mod syzygy;

use thiserror::Error as ThisError;

/// Crate-wide error type.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("operands belong to different variable universes")]
    MismatchedRings,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("invalid degeneration: {0}")]
    InvalidDegeneration(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("sampling failed: {0}")]
    SamplingFailed(String),
    #[error("certificate rejected: {0}")]
    CertificateRejected(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Default seed for every randomized check.
pub const DEFAULT_SEED: u64 = 7919;

/// Default number of random evaluation points for rank estimates.
pub const DEFAULT_TRIALS: u32 = 8;
