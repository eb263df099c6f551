//! Scalar abstraction and exact-rational helpers.
//!
//! The multilinear layer ([`crate::exterior`], [`crate::mat`]) is generic
//! over any signed commutative scalar via the [`Scalar`] trait alias, so the
//! same wedge/contraction/star code runs over `f64` for quick numerics and
//! over [`Rational`] for the exact verification work this crate exists for.
//! Everything downstream of the congruence solver is deliberately concrete:
//! reduction mod 1 and Smith normal form only make sense over the integers
//! and rationals.
//!
//! [`Rational`] is `num_rational::BigRational`, which maintains the
//! invariants this crate relies on: values are always stored reduced and the
//! denominator is always positive.  The tests re-assert both.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// Arbitrary-precision integer used throughout the lattice layer.
pub type Int = BigInt;

/// Exact rational scalar: always reduced, denominator always positive.
pub type Rational = num_rational::BigRational;

/// Bound for coefficients of the generic multilinear layer.
///
/// `Num + Signed` covers exact addition, multiplication, negation and
/// equality; `FromPrimitive` admits small integer literals as
/// coefficients; `Clone + Debug + Display` lets forms be duplicated and
/// rendered.  Both `Rational` and `f64` satisfy the bound.
pub trait Scalar:
    Num + Signed + FromPrimitive + Clone + PartialEq + fmt::Debug + fmt::Display
{
}

impl<T> Scalar for T where
    T: Num + Signed + FromPrimitive + Clone + PartialEq + fmt::Debug + fmt::Display
{
}

/// Shorthand rational constructor for small literals.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Parse a rational written as `a/b` or as a plain integer `a`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let trimmed = s.trim();
    trimmed
        .parse::<Rational>()
        .map_err(|e| Error::parse(format!("bad rational {trimmed:?}: {e}")))
}

/// Reduce a rational into the fundamental domain `[0, 1)` of `Q/Z`.
pub fn mod1(x: &Rational) -> Rational {
    x - x.floor()
}

/// Exact square root of a rational, if it exists in the rationals.
///
/// Returns the nonnegative root when numerator and denominator are both
/// perfect squares, `None` otherwise.  Negative inputs have no rational
/// root.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(Rational::zero());
    }
    let num_root = x.numer().sqrt();
    let den_root = x.denom().sqrt();
    if &(&num_root * &num_root) == x.numer() && &(&den_root * &den_root) == x.denom() {
        Some(Rational::new(num_root, den_root))
    } else {
        None
    }
}

/// Least common multiple of the denominators of a set of rationals
/// (at least 1).
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Int {
    let mut acc = Int::one();
    for v in values {
        acc = acc.lcm(v.denom());
    }
    acc
}
