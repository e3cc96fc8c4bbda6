//! Numeric backends.
//!
//! Everything that feeds an equality test between isoperimetric constants runs
//! on exact rationals. Floating point is used for eigenvalues and for kernels
//! that were supplied as floats in the first place.

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Sign threshold for floating point functions.
pub const FLOAT_ZERO: f64 = 1e-10;

/// Row-sum tolerance for float kernels.
pub const FLOAT_ROW_SUM: f64 = 1e-12;

/// Arithmetic shared by the exact and the floating point backend.
pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Signed + Send + Sync + 'static
{
    /// `true` for the rational backend.
    const EXACT: bool;

    fn to_f64(&self) -> f64;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_usize(n: usize) -> Self {
        Self::from_ratio(n as i64, 1)
    }

    /// Converts a rational exactly (rational backend) or by rounding (float).
    fn from_rational(r: &Rational) -> Self;

    /// Converts a finite float; exact on the rational backend.
    fn from_f64(x: f64) -> Self;

    /// Zero test used for sign classification.
    fn is_negligible(&self) -> bool;

    /// `self <= other`, allowing `tol` slack in float mode only.
    fn le_tol(&self, other: &Self, tol: f64) -> bool {
        if Self::EXACT {
            self <= other
        } else {
            self.to_f64() <= other.to_f64() + tol
        }
    }

    /// Equality, exact or within `tol`.
    fn eq_tol(&self, other: &Self, tol: f64) -> bool {
        if Self::EXACT {
            self == other
        } else {
            (self.to_f64() - other.to_f64()).abs() <= tol
        }
    }

    /// Stable textual form: `p/q` for rationals, 17 significant digits for floats.
    fn render(&self) -> String;

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_f64(x: f64) -> Self {
        <Rational as FromPrimitive>::from_f64(x).unwrap_or_default()
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn render(&self) -> String {
        render_rational(self)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn from_f64(x: f64) -> Self {
        x
    }

    fn is_negligible(&self) -> bool {
        self.abs() <= FLOAT_ZERO
    }

    fn render(&self) -> String {
        render_float(*self)
    }
}

/// `p/q`, or just `p` for integers.
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// 17 significant digits in scientific notation.
pub fn render_float(x: f64) -> String {
    format!("{:.16e}", x)
}

/// Parses `p/q`, `p`, or a decimal literal such as `0.25` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| Error::parse(format!("bad rational `{t}`")))?;
        let q = BigInt::from_str(q.trim()).map_err(|_| Error::parse(format!("bad rational `{t}`")))?;
        if q.is_zero() {
            return Err(Error::parse(format!("zero denominator in `{t}`")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Ok(p) = BigInt::from_str(t) {
        return Ok(Rational::from_integer(p));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.chars().all(|c| c.is_ascii_digit()) && !frac.is_empty() {
            let digits = format!("{int}{frac}");
            let p = BigInt::from_str(&digits)
                .map_err(|_| Error::parse(format!("bad decimal `{t}`")))?;
            let q = num_traits::pow(BigInt::from(10), frac.len());
            return Ok(Rational::new(p, q));
        }
    }
    Err(Error::parse(format!("bad rational `{t}`")))
}

/// Convenience constructor, mostly for tests and examples.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

/// Sum of a slice.
pub fn sum<S: Scalar>(values: impl IntoIterator<Item = S>) -> S {
    values.into_iter().fold(S::zero(), |acc, x| acc + x)
}

/// Largest element, or `None` for an empty iterator.
pub fn max_all<S: Scalar>(values: impl IntoIterator<Item = S>) -> Option<S> {
    values.into_iter().reduce(S::max_of)
}

/// Smallest element, or `None` for an empty iterator.
pub fn min_all<S: Scalar>(values: impl IntoIterator<Item = S>) -> Option<S> {
    values.into_iter().reduce(S::min_of)
}
