use thiserror::Error;

/// Errors raised by seed validation and the class-group machinery.
///
/// Index payloads are 0-based, matching the library API.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClusterError {
    #[error("expected a {rows}x{cols} matrix, found {found}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        found: String,
    },

    #[error("entries b[{i}][{j}] and b[{j}][{i}] violate sign-skew-symmetry")]
    NotSignSkewSymmetric { i: usize, j: usize },

    #[error("principal part is not skew-symmetrizable (inconsistent cycle {cycle:?})")]
    NotSkewSymmetrizable { cycle: Vec<usize> },

    #[error("index {index} is not exchangeable (n = {n})")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("seed has {size} vertices, canonicalization guard is {guard}")]
    TooLargeForCanonicalization { size: usize, guard: usize },

    #[error("index {index} is isolated; isolated indices must be frozen over a field")]
    IsolatedIndexOverField { index: usize },

    #[error("factor does not divide any exchange polynomial of the seed")]
    UnknownLabel,

    #[error("seed is not acyclic; the class-group formulas require an acyclic seed")]
    NotAcyclic,

    #[error("relation matrix has non-unit invariant factors {factors:?}")]
    TorsionDetected { factors: Vec<String> },

    #[error("formula rank {formula} differs from relation-matrix rank {snf}")]
    RankMismatch { formula: u64, snf: u64 },

    #[error("factoriality criteria disagree (criterion: {criterion}, rank: {rank})")]
    FactorialityMismatch { criterion: bool, rank: u64 },

    #[error("index {index} is not frozen")]
    IndexNotFrozen { index: usize },

    #[error("unsupported parameters for family {family}: {reason}")]
    UnsupportedFamilyParameter { family: String, reason: String },

    #[error("partner set of size {size} exceeds the enumeration limit {limit}")]
    PartnerSetTooLarge { size: usize, limit: usize },

    #[error("column gcd of index {index} does not fit in 64 bits")]
    GcdTooLarge { index: usize },

    #[error("class-group rank overflows 64 bits")]
    RankOverflow,

    #[error("invalid base ring '{0}'")]
    InvalidRing(String),

    #[error("malformed seed JSON: {0}")]
    MalformedSeed(String),
}

impl ClusterError {
    /// Stable machine-readable identifier for the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            ClusterError::ShapeMismatch { .. } => "shape_mismatch",
            ClusterError::NotSignSkewSymmetric { .. } => "not_sign_skew_symmetric",
            ClusterError::NotSkewSymmetrizable { .. } => "not_skew_symmetrizable",
            ClusterError::IndexOutOfRange { .. } => "index_out_of_range",
            ClusterError::TooLargeForCanonicalization { .. } => "too_large_for_canonicalization",
            ClusterError::IsolatedIndexOverField { .. } => "isolated_index_over_field",
            ClusterError::UnknownLabel => "unknown_label",
            ClusterError::NotAcyclic => "not_acyclic",
            ClusterError::TorsionDetected { .. } => "torsion_detected",
            ClusterError::RankMismatch { .. } => "rank_mismatch",
            ClusterError::FactorialityMismatch { .. } => "factoriality_mismatch",
            ClusterError::IndexNotFrozen { .. } => "index_not_frozen",
            ClusterError::UnsupportedFamilyParameter { .. } => "unsupported_family_parameter",
            ClusterError::PartnerSetTooLarge { .. } => "partner_set_too_large",
            ClusterError::GcdTooLarge { .. } => "gcd_too_large",
            ClusterError::RankOverflow => "rank_overflow",
            ClusterError::InvalidRing(_) => "invalid_ring",
            ClusterError::MalformedSeed(_) => "malformed_seed",
        }
    }
}

pub type Result<T> = std::result::Result<T, ClusterError>;
