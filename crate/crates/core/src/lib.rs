//! Exact-arithmetic calibrated geometry on flat 7-space.
//!
//! Everything here computes over arbitrary-precision rationals: wedge
//! products, Hodge duals, cross products, fixed-point loci of finite group
//! actions on tori, and the cohomological bookkeeping built on top of
//! them.  There are no floating-point tolerances anywhere; every check is
//! an exact identity that either holds or does not.
//!
//! The crate is layered:
//!
//! * [`scalar`], [`mat`], [`exterior`] — a multilinear algebra kernel,
//!   generic over the coefficient [`scalar::Scalar`];
//! * [`snf`], [`congruence`] — integer lattice normal forms and the exact
//!   solver for affine congruence systems on `(Q/Z)^n`;
//! * [`g2`], [`cy`] — the flat cross-product structure, its calibration
//!   forms, and the complex-geometry data induced on unit-vector
//!   hyperplanes;
//! * [`torus`], [`joyce`] — finite groups of affine torus maps, their
//!   fixed-set censuses, and the specific orbifold group this crate was
//!   built to analyze;
//! * [`hodge`], [`mirror`] — Betti/Hodge/Euler bookkeeping for quotients
//!   and resolutions, and the fibration comparison report;
//! * [`report`], [`config`], [`suite`] — check records, group
//!   configuration files, and the named verification suites exposed by the
//!   command-line interface.
//!
//! The type aliases at the crate root fix the exact instantiation used by
//! all the geometry: coefficients in [`Rational`], lattice data in
//! [`Int`].

pub mod config;
pub mod congruence;
pub mod cy;
pub mod error;
pub mod exterior;
pub mod g2;
pub mod hodge;
pub mod joyce;
pub mod mat;
pub mod mirror;
pub mod report;
pub mod scalar;
pub mod snf;
pub mod suite;
pub mod torus;

pub use error::{Error, Result};
pub use scalar::{Int, Rational};

/// Exact `k`-form on flat space with rational coefficients.
pub type Form = exterior::KForm<Rational>;

/// Exact complex-valued `k`-form (real and imaginary rational parts).
pub type ComplexForm = exterior::ComplexKForm<Rational>;

/// Vector with rational coordinates.
pub type Vector = exterior::Vector<Rational>;

/// Dense matrix with rational entries.
pub type RationalMatrix = mat::Matrix<Rational>;

/// Dense matrix with arbitrary-precision integer entries.
pub type IntMatrix = mat::Matrix<Int>;
