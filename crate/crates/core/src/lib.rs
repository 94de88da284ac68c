//! Exact-arithmetic machinery for Laurent-polynomial Landau-Ginzburg models of
//! the seventeen rank-one Fano threefolds.
//!
//! Everything here runs over arbitrary-precision rationals; there is no
//! floating point anywhere. The main layers, bottom up:
//!
//! - [`matrix`], [`lp`]: exact linear algebra and an exact simplex solver;
//! - [`polytope`]: convex hulls, dual polytopes, reflexivity, lattice points
//!   in rank <= 4;
//! - [`laurent`], [`series`]: Laurent-polynomial arithmetic and constant-term
//!   period series;
//! - [`d3`]: type-D3 differential operators and exact operator fitting;
//! - [`semigroup`]: the graded semigroups of a rational polytope,
//!   very-ampleness certificates, Ehrhart counts;
//! - [`cidegen`]: Q-nef partitions, Hori-Vafa polynomials, and the Altmann
//!   complete-intersection embedding;
//! - [`triangulation`]: regular unimodular boundary triangulations of
//!   reflexive 3-polytopes;
//! - [`elliptic`], [`nslattice`]: Weierstrass models over Q(t), Kodaira fiber
//!   classification, and Neron-Severi lattice assembly;
//! - [`catalog`]: the embedded 17-row table with per-row verification routes.

pub mod catalog;
pub mod cidegen;
pub mod d3;
pub mod elliptic;
pub mod laurent;
pub mod lp;
pub mod matrix;
pub mod nslattice;
pub mod parse;
pub mod polytope;
pub mod report;
pub mod semigroup;
pub mod series;
pub mod triangulation;
pub mod unipoly;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Exact scalar used throughout the crate.
pub type Rat = BigRational;

use num_traits::{One, Zero};

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction `n/d`.
pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn rat_zero() -> Rat {
    Rat::zero()
}

pub(crate) fn rat_one() -> Rat {
    Rat::one()
}

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected rank {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polytope is not dualizable: {0}")]
    NotDualizable(String),
    #[error("degenerate slice: {0}")]
    DegenerateSlice(String),
    #[error("zero polynomial has no Newton polytope")]
    ZeroPolynomial,
    #[error("exact division failed: {0}")]
    InexactDivision(String),
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(String),
    #[error("series order {got} too small, need at least {need}")]
    OrderTooSmall { need: usize, got: usize },
    #[error("operator fit is ambiguous: solution space has dimension {0}; raise the series order")]
    AmbiguousFit(usize),
    #[error("no Q-nef partition exists for this input")]
    InfeasiblePartition,
    #[error("Altmann embedding construction inconsistency: {0}")]
    ConstructionInconsistency(String),
    #[error("model is not elliptic: discriminant vanishes identically")]
    NotElliptic,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
