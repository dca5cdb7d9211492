//! Numeric backends.
//!
//! All geometry in this crate is generic over [`Scalar`]. Two backends are
//! provided:
//!
//! * [`Rational`]: arbitrary-precision rationals, always in lowest terms with a
//!   positive denominator. Every comparison is exact.
//! * [`Float`]: `f64` with an absolute tolerance. Two values compare equal when
//!   `|a - b| <= eps`. The tolerance is a single process-wide setting (default
//!   `1e-9`), see [`set_float_tolerance`].

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;
use core::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseScalarError;

/// Default absolute tolerance of the float backend.
pub const DEFAULT_FLOAT_TOLERANCE: f64 = 1e-9;

static FLOAT_TOLERANCE: AtomicU64 = AtomicU64::new(DEFAULT_FLOAT_TOLERANCE.to_bits());

/// Current tolerance of the float backend.
pub fn float_tolerance() -> f64 {
    f64::from_bits(FLOAT_TOLERANCE.load(AtomicOrdering::Relaxed))
}

/// Sets the tolerance used by every [`Float`] comparison. Returns `false` and
/// leaves the setting untouched unless `eps` is finite and positive.
pub fn set_float_tolerance(eps: f64) -> bool {
    if !(eps.is_finite() && eps > 0.0) {
        return false;
    }
    FLOAT_TOLERANCE.store(eps.to_bits(), AtomicOrdering::Relaxed);
    true
}

/// An ordered field element, exact or tolerance-carrying.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// `true` for backends where every comparison is exact.
    const EXACT: bool;
    /// Short backend name used in documents (`"rational"` or `"float"`).
    const KIND: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;

    /// `p / q`. Panics when `q == 0`.
    fn ratio(p: i64, q: i64) -> Self {
        Self::from_rational(&Rational::new(p, q))
    }

    /// Converts a finite float. The exact backend returns the exact binary
    /// value of `x`, so dyadic inputs stay small.
    fn from_f64(x: f64) -> Option<Self>;
    fn to_f64(&self) -> f64;

    /// Parses `p/q`, an integer, or a decimal literal.
    fn parse(s: &str) -> Result<Self, ParseScalarError>;

    /// Three-way comparison; the float backend treats `|a - b| <= eps` as equal.
    fn compare(&self, other: &Self) -> Ordering;

    fn is_zero(&self) -> bool {
        self.compare(&Self::zero()) == Ordering::Equal
    }

    fn is_positive(&self) -> bool {
        self.compare(&Self::zero()) == Ordering::Greater
    }

    fn is_negative(&self) -> bool {
        self.compare(&Self::zero()) == Ordering::Less
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// `self * other` without consuming either operand.
    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    /// `self += a * b`.
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = self.clone() + a.mul_ref(b);
    }

    /// `self -= a * b`.
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self = self.clone() - a.mul_ref(b);
    }

    /// Larger of two values, keeping `self` on ties.
    fn max_with(self, other: Self) -> Self {
        if other.compare(&self) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    /// Smaller of two values, keeping `self` on ties.
    fn min_with(self, other: Self) -> Self {
        if other.compare(&self) == Ordering::Less {
            other
        } else {
            self
        }
    }
}

/// Exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// `p / q`. Panics when `q == 0`.
    pub fn new(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Option<Self> {
        if denom.is_zero() {
            return None;
        }
        Some(Rational(BigRational::new(numer, denom)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `"p/q"`, `"-12"`, or `"0.375"` into an exact rational.
pub fn rational_from_string(s: &str) -> Result<Rational, ParseScalarError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseScalarError::Malformed(String::new()));
    }
    let malformed = || ParseScalarError::Malformed(s.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_integer(p.trim()).ok_or_else(malformed)?;
        let q = parse_integer(q.trim()).ok_or_else(malformed)?;
        if q.is_zero() {
            return Err(ParseScalarError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rational(BigRational::new(p, q)));
    }
    if let Some(n) = parse_integer(s) {
        return Ok(Rational(BigRational::from_integer(n)));
    }
    parse_decimal(s).ok_or_else(malformed)
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s.strip_prefix('+').unwrap_or(s)).ok()
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (negative, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match body.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut digits = String::with_capacity(int_part.len() + frac_part.len() + 1);
    digits.push_str(int_part);
    digits.push_str(frac_part);
    let mut numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(Rational(value))
}

impl FromStr for Rational {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        rational_from_string(s)
    }
}

macro_rules! forward_binop {
    ($ty:ident, $trait:ident, $method:ident) => {
        impl $trait for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $ty(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Rational, Add, add);
forward_binop!(Rational, Sub, sub);
forward_binop!(Rational, Mul, mul);
forward_binop!(Rational, Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const KIND: &'static str = "rational";

    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn from_int(n: i64) -> Self {
        Rational::from(n)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Rational)
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    fn parse(s: &str) -> Result<Self, ParseScalarError> {
        rational_from_string(s)
    }

    fn compare(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.0.is_zero() || b.0.is_zero() {
            return;
        }
        self.0 += &a.0 * &b.0;
    }

    fn sub_mul(&mut self, a: &Self, b: &Self) {
        if a.0.is_zero() || b.0.is_zero() {
            return;
        }
        self.0 -= &a.0 * &b.0;
    }
}

/// `f64` with the process-wide tolerance applied to every comparison.
///
/// `PartialEq` is tolerance-aware and therefore not transitive.
#[derive(Clone, Copy, Default)]
pub struct Float(pub f64);

impl Float {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl PartialEq for Float {
    fn eq(&self, other: &Self) -> bool {
        (self.0 - other.0).abs() <= float_tolerance()
    }
}

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

macro_rules! float_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Float {
            type Output = Float;
            fn $method(self, rhs: Float) -> Float {
                Float(self.0 $op rhs.0)
            }
        }
    };
}

float_binop!(Add, add, +);
float_binop!(Sub, sub, -);
float_binop!(Mul, mul, *);
float_binop!(Div, div, /);

impl Neg for Float {
    type Output = Float;
    fn neg(self) -> Float {
        Float(-self.0)
    }
}

impl Scalar for Float {
    const EXACT: bool = false;
    const KIND: &'static str = "float";

    fn zero() -> Self {
        Float(0.0)
    }

    fn one() -> Self {
        Float(1.0)
    }

    fn from_int(n: i64) -> Self {
        Float(n as f64)
    }

    fn from_rational(r: &Rational) -> Self {
        Float(r.to_f64())
    }

    fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then_some(Float(x))
    }

    fn to_f64(&self) -> f64 {
        self.0
    }

    fn parse(s: &str) -> Result<Self, ParseScalarError> {
        // `p/q` is accepted for symmetry with the exact backend.
        if s.contains('/') {
            return rational_from_string(s).map(|r| Float(r.to_f64()));
        }
        let value: f64 = s
            .trim()
            .parse()
            .map_err(|_| ParseScalarError::Malformed(s.to_string()))?;
        if !value.is_finite() {
            return Err(ParseScalarError::Malformed(s.to_string()));
        }
        Ok(Float(value))
    }

    fn compare(&self, other: &Self) -> Ordering {
        let diff = self.0 - other.0;
        if diff.abs() <= float_tolerance() {
            Ordering::Equal
        } else if diff > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn abs(&self) -> Self {
        Float(self.0.abs())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        Float(self.0 * other.0)
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        self.0 += a.0 * b.0;
    }

    fn sub_mul(&mut self, a: &Self, b: &Self) {
        self.0 -= a.0 * b.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(rational_from_string("5/17").unwrap(), Rational::new(5, 17));
        assert_eq!(rational_from_string("-1").unwrap(), Rational::from(-1));
        assert_eq!(rational_from_string("0.5").unwrap(), Rational::new(1, 2));
        assert_eq!(rational_from_string("-2.125").unwrap(), Rational::new(-17, 8));
        assert_eq!(rational_from_string("10/4").unwrap(), Rational::new(5, 2));
        assert_eq!(rational_from_string("1e-2").unwrap(), Rational::new(1, 100));
        assert_eq!(rational_from_string(".25").unwrap(), Rational::new(1, 4));
    }

    #[test]
    fn rejects_zero_denominator_and_garbage() {
        assert!(matches!(
            rational_from_string("3/0"),
            Err(ParseScalarError::ZeroDenominator(_))
        ));
        for bad in ["", "abc", "1/", "/2", "1.2.3", "--1", "1/2/3", "."] {
            assert!(rational_from_string(bad).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn lowest_terms_with_positive_denominator() {
        let r = rational_from_string("6/-4").unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn float_tolerance_equality() {
        let eps = float_tolerance();
        assert_eq!(Float(1.0), Float(1.0 + eps / 2.0));
        assert_ne!(Float(1.0), Float(1.0 + eps * 4.0));
        assert_eq!(Float(0.3).compare(&Float(0.1 + 0.2)), Ordering::Equal);
    }

    #[test]
    fn dyadic_float_converts_exactly() {
        assert_eq!(Rational::from_f64(0.375).unwrap(), Rational::new(3, 8));
        assert!(Rational::from_f64(f64::NAN).is_none());
    }
}
