//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("not invertible as a power series (zero constant term)")]
    NotInvertible,

    #[error("not invertible under composition (need c_0 = 0 and c_1 != 0)")]
    NotReversible,

    #[error("inner series of a composition must have zero constant term")]
    InnerConstantTerm,

    #[error("series is not divisible by z^{0}")]
    NotDivisibleByZ(usize),

    #[error("bivariate series is not divisible by (z - v)")]
    NotDivisibleByZMinusV,

    #[error("cannot parse rational value {0:?}")]
    BadRational(String),

    #[error("moment sequence must start with m_0 = 1")]
    NotProbability,

    #[error("not a moment sequence of a positive measure (negative squared norm at level {0})")]
    NotPositiveMeasure(usize),

    #[error("insufficient moments: need m_0..m_{need}, have m_0..m_{have}")]
    InsufficientMoments { need: usize, have: usize },

    #[error("omega parameters of a Jacobi sequence must be nonnegative")]
    NegativeOmega,

    #[error("free Meixner parameter b must satisfy b >= -1")]
    MeixnerBOutOfRange,

    #[error("semicircle parameters do not define a measure (variance < 0)")]
    NotASemicircleMeasure,

    #[error("representation requires b >= 0; use verify_negative_b for -1 <= b < 0")]
    UseNegativeBRepresentation,

    #[error("representation requires -1 <= b < 0")]
    NegativeBOutOfRange,

    #[error("not a standard measure (need alpha_0 = 0 and omega_1 = 1); standardize first")]
    NotStandard,

    #[error("not enough Jacobi data to classify (need alpha_n for some n >= 1 and omega_n for some n >= 2)")]
    InsufficientJacobiData,

    #[error("not a generating function; a_n undefined (deg Q_{0} < {0})")]
    DegenerateQ(usize),

    #[error("numeric evaluation on the support of the measure")]
    OnSupport,
}
