//! Exact scalars and integer linear algebra.
//!
//! The submodules provide the arithmetic substrate for the whole crate:
//! arbitrary-precision rationals (re-exported from `num-rational`), the
//! Eisenstein field Q(w), dense integer matrices with Hermite/Smith normal
//! forms and saturated kernels, invariants of symmetric bilinear forms, and
//! small dense matrices over a generic exact field.
//!
//! Everything is dense and pivot-based; the matrices in this crate stay below
//! roughly 120x120, where asymptotically clever algorithms would only add
//! surface area.

pub mod cyclotomic;
pub mod fmat;
pub mod forms;
pub mod matrix;

pub use cyclotomic::Cyclotomic;
pub use forms::{sym_invariants, FormError, SymFormInvariants};
pub use matrix::IntMatrix;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Exact rational scalar: always reduced, denominator always positive.
/// Both invariants are maintained by `num-rational` itself.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` with optional sign.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| format!("invalid rational {s:?}: {e}"))
}

/// Extracts an integer from a rational, failing on non-integral input.
pub fn rational_to_int(r: &Rational) -> Option<BigInt> {
    if r.denom().is_one() {
        Some(r.numer().clone())
    } else {
        None
    }
}

/// An exact field of scalars, of finite degree over the rationals.
///
/// Implemented by [`Rational`] (degree 1) and [`Cyclotomic`] (degree 2).
/// The `Ord` bound is a structural ordering used for canonical map keys and
/// deterministic output; it is not compatible with the field operations.
pub trait Field:
    Clone
    + Eq
    + Ord
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
{
    /// Degree of the field over the rationals.
    const DEGREE: usize;

    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_int(n: i64) -> Self;

    fn from_rational(r: &Rational) -> Self;

    /// Coordinates in the power basis of the field over Q
    /// (`[a]` for rationals, `[a, b]` for `a + b*w`).
    fn coords(&self) -> Vec<Rational>;

    /// Inverse of [`Field::coords`]; `None` if the slice has the wrong
    /// length or carries components the field cannot represent.
    fn from_coords(c: &[Rational]) -> Option<Self>;

    /// Matrix of multiplication by `self` on the power basis, row-major,
    /// `DEGREE x DEGREE`. Realifying a matrix entrywise through `repr`
    /// multiplies its rank by `DEGREE`.
    fn repr(&self) -> Vec<Vec<Rational>>;

    /// Exact division, panicking on division by zero.
    fn div_exact(&self, rhs: &Self) -> Self {
        self.clone() * rhs.inv().expect("division by zero")
    }
}

impl Field for Rational {
    const DEGREE: usize = 1;

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_int(n: i64) -> Self {
        rat_int(n)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn coords(&self) -> Vec<Rational> {
        vec![self.clone()]
    }

    fn from_coords(c: &[Rational]) -> Option<Self> {
        match c {
            [a] => Some(a.clone()),
            _ => None,
        }
    }

    fn repr(&self) -> Vec<Vec<Rational>> {
        vec![vec![self.clone()]]
    }
}

/// Formats a rational without superfluous `/1`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sign of a big integer as -1, 0, or 1.
pub fn bigint_sign(n: &BigInt) -> i32 {
    if n.is_zero() {
        0
    } else if n.is_positive() {
        1
    } else {
        -1
    }
}
