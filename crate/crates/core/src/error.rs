//! Crate-wide error type.
//!
//! Every fallible operation in this crate returns [`Result`].  The variants
//! are grouped by the layer that raises them: shape mismatches from the
//! multilinear algebra, algebraic preconditions (unit vectors, orthonormal
//! frames), group/torus preconditions, and parse/configuration problems.
//! Nothing in the crate panics on bad input; panics are reserved for internal
//! invariant violations.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Operand shapes disagree (vector length, matrix dimensions, form
    /// dimension or degree, argument arity).
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A text payload (rational, vector, form, config file) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// A vector required to be a unit vector is not.
    #[error("vector is not a unit vector (|v|^2 = {norm_sq})")]
    NotUnit { norm_sq: String },

    /// A frame required to be exactly orthonormal is not.
    #[error("vectors are not an exact orthonormal frame: {0}")]
    NotOrthonormal(String),

    /// A rational orthonormalization was requested but does not exist over
    /// the rationals (a norm is not a perfect rational square).  No silent
    /// floating-point normalization is performed.
    #[error("no rational orthonormalization: {0}")]
    NotRationallyNormalizable(String),

    /// A vector was required to lie in a given subspace but does not.
    #[error("membership failure: {0}")]
    Membership(String),

    /// Group generation exceeded the element cap.
    #[error("group generation exceeded cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    /// An affine torus map violates a structural precondition
    /// (non-unimodular linear part, wrong block structure for a projection,
    /// non-involution where one is required, and so on).
    #[error("torus map precondition failed: {0}")]
    TorusMap(String),

    /// A named group element was not found.
    #[error("unknown group element: {0}")]
    UnknownElement(String),

    /// A map fed to the pillowcase detector is not of pillowcase type
    /// (linear part must be minus the identity on the 2-torus).
    #[error("not a pillowcase-type involution: {0}")]
    NotPillowcase(String),

    /// A census or verification pipeline found data inconsistent with its
    /// own cross-checks.  This is how "fail loudly" surfaces.
    #[error("verification failed: {0}")]
    Verification(String),

    /// Euler-characteristic bookkeeping produced a non-integral
    /// intermediate value.
    #[error("non-integral Euler bookkeeping: {0}")]
    NonIntegralEuler(String),

    /// Hodge-number arithmetic produced a negative dimension.
    #[error("negative Hodge number: {0}")]
    NegativeHodge(String),

    /// Configuration file problems beyond raw syntax (bad lengths, signs
    /// that are not +-1, dimensions out of range).
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
