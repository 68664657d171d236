use thiserror::Error;

use crate::lattice::Separation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("invalid momentum grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Stable-regime quantity requested at or beyond the critical hopping,
    /// where the mode sums carry a non-integrable 1/omega^2 weight.
    #[error(
        "unstable regime: J = {j} is at or beyond the critical hopping J_c = {j_critical} \
         (gap closes at k = 0); stable-regime quantities are undefined here"
    )]
    UnstableRegime { j: f64, j_critical: f64 },

    /// The effective-temperature inversion only makes sense for equilibrium
    /// depletion strictly inside (0, 1/2).
    #[error("equilibrium depletion {0} outside (0, 1/2): no effective temperature")]
    DepletionOutOfRange(f64),

    #[error("on-site separation d = 0 is not a two-site correlation")]
    OnSiteSeparation,

    /// Bipartite bookkeeping: same-sublattice correlators need an even
    /// coordinate sum, mixed ones an odd coordinate sum.
    #[error(
        "separation {separation} connects the wrong sublattice pair for the \
         {kind} correlator (coordinate sum must be {expected})"
    )]
    SublatticeMismatch {
        kind: &'static str,
        separation: Separation,
        expected: &'static str,
    },

    #[error("Hilbert-space dimension {dimension} exceeds the cap {cap}")]
    DimensionCap { dimension: usize, cap: usize },

    #[error("diagonalization failed: {0}")]
    Diagonalization(String),
}
