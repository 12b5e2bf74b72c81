//! Exact-arithmetic toolkit for the free Meixner family.
//!
//! Everything symbolic runs over arbitrary-precision rationals: truncated
//! formal power series in one and two variables ([`series`], [`bivariate`]),
//! Jacobi-Szego parameters, moment sequences and monic orthogonal
//! polynomials ([`jacobi`]), the Cauchy/R-transform calculus ([`transforms`]),
//! the free Meixner family itself ([`meixner`]), and the multiplicative
//! renormalization machinery for Cauchy-Stieltjes generating functions
//! ([`renorm`]). A small floating-point layer ([`meixner::numeric`])
//! evaluates Cauchy transforms and spectral densities from the closed
//! continued-fraction form.
//!
//! Series "at infinity" are always handled through the substitution
//! `w = 1/z`, so every object in sight is an ordinary truncated power
//! series; see [`transforms`] for the convention.

pub mod bivariate;
pub mod error;
pub mod jacobi;
pub mod meixner;
pub mod poly;
pub mod rational;
pub mod renorm;
pub mod series;
pub mod transforms;

pub use bivariate::BiTruncSeries;
pub use error::{Error, Result};
pub use jacobi::{JacobiParams, JacobiRecovery, MomentSeq, OrthoBasis};
pub use meixner::{MeixnerParams, SemicircleParams};
pub use poly::Poly;
pub use rational::Rational;
pub use renorm::RenormGf;
pub use series::TruncSeries;
pub use transforms::{CauchyAtInfinity, CumulantSeries};

/// Default truncation order used when a caller does not pick one.
pub const DEFAULT_ORDER: usize = 16;
