use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

/// Every failure the numerical core can report.
///
/// Variants split into two families: usage errors (bad indices, mismatched
/// grids, out-of-range parameters) and numerical hypothesis violations
/// ([`Error::RootCollision`], [`Error::NegativeImaginary`],
/// [`Error::PhaseViolation`]). [`Error::is_numerical`] tells them apart.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("unsupported dimension {0}: only d = 1 and d = 2 are supported")]
    UnsupportedDimension(usize),
    #[error("grid size {0} is not a power of two >= 8")]
    InvalidGridSize(usize),
    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("dyadic block {j} out of range 0..={j_max}")]
    BlockOutOfRange { j: usize, j_max: usize },
    #[error("partition of unity residual {0:e} exceeds 1e-12")]
    PartitionResidual(f64),
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("phase violates `{bullet}`: {detail}")]
    PhaseViolation { bullet: &'static str, detail: String },
    #[error("characteristic roots collide at k = {k:?}: gap {gap:e} < {threshold:e}")]
    RootCollision { k: [f64; 2], gap: f64, threshold: f64 },
    #[error("characteristic root with negative imaginary part {im:e} at k = {k:?}")]
    NegativeImaginary { k: [f64; 2], im: f64 },
    #[error("backward evolution requested: t1 = {t1} < t0 = {t0}")]
    BackwardTime { t0: f64, t1: f64 },
    #[error("test family reaches frequency {max_freq} beyond the headroom limit {limit}")]
    NyquistHeadroom { max_freq: usize, limit: usize },
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::UnsupportedDimension(_) => "UnsupportedDimension",
            Error::InvalidGridSize(_) => "InvalidGridSize",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NonFinite(_) => "NonFinite",
            Error::GridMismatch(_) => "GridMismatch",
            Error::BlockOutOfRange { .. } => "BlockOutOfRange",
            Error::PartitionResidual(_) => "PartitionResidual",
            Error::InvalidIndex(_) => "InvalidIndex",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::PhaseViolation { .. } => "PhaseViolation",
            Error::RootCollision { .. } => "RootCollision",
            Error::NegativeImaginary { .. } => "NegativeImaginary",
            Error::BackwardTime { .. } => "BackwardTime",
            Error::NyquistHeadroom { .. } => "NyquistHeadroom",
        }
    }

    /// True for violations of a numerical hypothesis (as opposed to usage errors).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::PartitionResidual(_)
                | Error::PhaseViolation { .. }
                | Error::RootCollision { .. }
                | Error::NegativeImaginary { .. }
        )
    }
}
