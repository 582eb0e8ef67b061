//! Scalar backends.
//!
//! Three backends implement [`Scalar`]: arbitrary-precision rationals for
//! exact arithmetic, `f64` for speed, and `Complex64` for quantum amplitudes.
//! The backend is chosen at compile time through the type parameter, so exact
//! and floating-point code paths never mix.

use crate::error::{Error, Result};
use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Arbitrary-precision rational scalar, the default exact backend.
pub type Rational = BigRational;

/// Identifies a scalar backend at runtime, for cache keys and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Rational,
    Float64,
    Complex64,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Rational => "rational",
            Backend::Float64 => "float64",
            Backend::Complex64 => "complex64",
        }
    }

    /// Stable numeric code used in the cache file header.
    pub fn code(self) -> u64 {
        match self {
            Backend::Rational => 1,
            Backend::Float64 => 2,
            Backend::Complex64 => 3,
        }
    }

    pub fn from_code(code: u64) -> Option<Backend> {
        match code {
            1 => Some(Backend::Rational),
            2 => Some(Backend::Float64),
            3 => Some(Backend::Complex64),
            _ => None,
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ring operations plus the comparison, validation, and serialization hooks
/// the engines need. Implemented for [`Rational`], `f64`, and `Complex64`.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
    + Send
    + Sync
    + 'static
{
    fn backend() -> Backend;

    fn from_int(value: i64) -> Self;

    /// Division by a positive integer count. Exact for the rational backend.
    fn div_exact(self, divisor: u64) -> Self;

    /// Whether arithmetic in this backend is exact.
    fn is_exact() -> bool {
        Self::backend() == Backend::Rational
    }

    /// `true` when the two values agree within `tolerance` in absolute terms.
    /// A tolerance of 0 means exact equality.
    fn within(&self, other: &Self, tolerance: f64) -> bool;

    /// Approximate absolute value, for diagnostics and concurrence.
    fn magnitude(&self) -> f64;

    /// Whether the value is admissible as input (finite for float backends).
    fn is_admissible(&self) -> bool;

    /// Append the canonical byte encoding used by the on-disk cache.
    fn encode(&self, out: &mut Vec<u8>);

    /// Decode one value from `bytes` starting at `*pos`, advancing `*pos`.
    fn decode(bytes: &[u8], pos: &mut usize) -> Result<Self>;

    /// Full-precision display: `p/q` for rationals, 17 significant digits
    /// for floating-point backends.
    fn display_full(&self) -> String;
}

fn take<'a>(bytes: &'a [u8], pos: &mut usize, len: usize) -> Result<&'a [u8]> {
    let end = pos.checked_add(len).filter(|&e| e <= bytes.len());
    match end {
        Some(end) => {
            let slice = &bytes[*pos..end];
            *pos = end;
            Ok(slice)
        }
        None => Err(Error::Parse {
            detail: "truncated scalar encoding".into(),
        }),
    }
}

fn encode_bigint(value: &BigInt, out: &mut Vec<u8>) {
    let (sign, bytes) = value.to_bytes_le();
    let signed_len = match sign {
        Sign::Minus => -(bytes.len() as i64),
        _ => bytes.len() as i64,
    };
    out.extend_from_slice(&signed_len.to_le_bytes());
    out.extend_from_slice(&bytes);
}

fn decode_bigint(bytes: &[u8], pos: &mut usize) -> Result<BigInt> {
    let len_bytes = take(bytes, pos, 8)?;
    let signed_len = i64::from_le_bytes(len_bytes.try_into().unwrap());
    let (sign, len) = if signed_len < 0 {
        (Sign::Minus, -signed_len as usize)
    } else {
        (Sign::Plus, signed_len as usize)
    };
    let digits = take(bytes, pos, len)?;
    Ok(BigInt::from_bytes_le(sign, digits))
}

fn float17(value: f64) -> String {
    format!("{value:.16e}")
}

impl Scalar for Rational {
    fn backend() -> Backend {
        Backend::Rational
    }

    fn from_int(value: i64) -> Self {
        Rational::from_integer(BigInt::from(value))
    }

    fn div_exact(self, divisor: u64) -> Self {
        self / Rational::from_integer(BigInt::from(divisor))
    }

    fn within(&self, other: &Self, tolerance: f64) -> bool {
        if tolerance == 0.0 {
            self == other
        } else {
            (self - other)
                .abs()
                .to_f64()
                .map(|d| d <= tolerance)
                .unwrap_or(false)
        }
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn is_admissible(&self) -> bool {
        true
    }

    fn encode(&self, out: &mut Vec<u8>) {
        encode_bigint(self.numer(), out);
        encode_bigint(self.denom(), out);
    }

    fn decode(bytes: &[u8], pos: &mut usize) -> Result<Self> {
        let numer = decode_bigint(bytes, pos)?;
        let denom = decode_bigint(bytes, pos)?;
        if denom.is_zero() {
            return Err(Error::Parse {
                detail: "rational with zero denominator".into(),
            });
        }
        Ok(Rational::new(numer, denom))
    }

    fn display_full(&self) -> String {
        self.to_string()
    }
}

impl Scalar for f64 {
    fn backend() -> Backend {
        Backend::Float64
    }

    fn from_int(value: i64) -> Self {
        value as f64
    }

    fn div_exact(self, divisor: u64) -> Self {
        self / divisor as f64
    }

    fn within(&self, other: &Self, tolerance: f64) -> bool {
        (self - other).abs() <= tolerance
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn is_admissible(&self) -> bool {
        self.is_finite()
    }

    fn encode(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.to_le_bytes());
    }

    fn decode(bytes: &[u8], pos: &mut usize) -> Result<Self> {
        let raw = take(bytes, pos, 8)?;
        Ok(f64::from_le_bytes(raw.try_into().unwrap()))
    }

    fn display_full(&self) -> String {
        float17(*self)
    }
}

impl Scalar for Complex64 {
    fn backend() -> Backend {
        Backend::Complex64
    }

    fn from_int(value: i64) -> Self {
        Complex64::new(value as f64, 0.0)
    }

    fn div_exact(self, divisor: u64) -> Self {
        self / divisor as f64
    }

    fn within(&self, other: &Self, tolerance: f64) -> bool {
        (self - other).norm() <= tolerance
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn is_admissible(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    fn encode(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.re.to_le_bytes());
        out.extend_from_slice(&self.im.to_le_bytes());
    }

    fn decode(bytes: &[u8], pos: &mut usize) -> Result<Self> {
        let re_raw = take(bytes, pos, 8)?;
        let re = f64::from_le_bytes(re_raw.try_into().unwrap());
        let im_raw = take(bytes, pos, 8)?;
        let im = f64::from_le_bytes(im_raw.try_into().unwrap());
        Ok(Complex64::new(re, im))
    }

    fn display_full(&self) -> String {
        if self.im.is_sign_negative() {
            format!("{}-{}i", float17(self.re), float17(-self.im))
        } else {
            format!("{}+{}i", float17(self.re), float17(self.im))
        }
    }
}

/// Validates a tolerance against the backend: nonnegative always, and zero
/// when the backend is exact.
pub fn check_tolerance<T: Scalar>(tolerance: f64) -> Result<()> {
    if tolerance < 0.0 || tolerance.is_nan() {
        return Err(Error::NegativeTolerance { tolerance });
    }
    if T::is_exact() && tolerance != 0.0 {
        return Err(Error::ExactToleranceNonzero { tolerance });
    }
    Ok(())
}

/// Default comparison tolerance for a backend: 0 for exact arithmetic,
/// `1e-9` for floating point.
pub fn default_tolerance<T: Scalar>() -> f64 {
    if T::is_exact() {
        0.0
    } else {
        1e-9
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_round_trip() {
        let values = [rat(0, 1), rat(-7, 3), rat(1, 2), rat(123456789, 1)];
        for v in &values {
            let mut buf = Vec::new();
            v.encode(&mut buf);
            let mut pos = 0;
            let back = Rational::decode(&buf, &mut pos).unwrap();
            assert_eq!(&back, v);
            assert_eq!(pos, buf.len());
        }
    }

    #[test]
    fn float_round_trip() {
        for v in [0.0f64, -1.5, 3.25e300, f64::MIN_POSITIVE] {
            let mut buf = Vec::new();
            v.encode(&mut buf);
            let mut pos = 0;
            assert_eq!(f64::decode(&buf, &mut pos).unwrap().to_bits(), v.to_bits());
        }
    }

    #[test]
    fn complex_round_trip() {
        let v = Complex64::new(1.25, -0.5);
        let mut buf = Vec::new();
        v.encode(&mut buf);
        let mut pos = 0;
        assert_eq!(Complex64::decode(&buf, &mut pos).unwrap(), v);
    }

    #[test]
    fn truncated_decode_fails() {
        let mut buf = Vec::new();
        rat(5, 7).encode(&mut buf);
        buf.truncate(buf.len() - 1);
        let mut pos = 0;
        assert!(Rational::decode(&buf, &mut pos).is_err());
    }

    #[test]
    fn within_semantics() {
        assert!(rat(1, 3).within(&rat(1, 3), 0.0));
        assert!(!rat(1, 3).within(&rat(1, 2), 0.0));
        assert!(1.0f64.within(&1.0000005, 1e-6));
        assert!(!1.0f64.within(&1.1, 1e-6));
        let a = Complex64::new(1.0, 1.0);
        let b = Complex64::new(1.0, 1.0 + 1e-12);
        assert!(a.within(&b, 1e-9));
    }

    #[test]
    fn tolerance_checks() {
        assert!(check_tolerance::<Rational>(0.0).is_ok());
        assert!(matches!(
            check_tolerance::<Rational>(1e-9),
            Err(Error::ExactToleranceNonzero { .. })
        ));
        assert!(check_tolerance::<f64>(1e-9).is_ok());
        assert!(matches!(
            check_tolerance::<f64>(-1.0),
            Err(Error::NegativeTolerance { .. })
        ));
    }

    #[test]
    fn admissibility() {
        assert!(1.0f64.is_admissible());
        assert!(!f64::NAN.is_admissible());
        assert!(!f64::INFINITY.is_admissible());
        assert!(!Complex64::new(0.0, f64::NAN).is_admissible());
    }

    #[test]
    fn display_full_formats() {
        assert_eq!(rat(-3, 4).display_full(), "-3/4");
        assert_eq!(rat(5, 1).display_full(), "5");
        assert_eq!(0.5f64.display_full(), "5.0000000000000000e-1");
        assert_eq!(
            Complex64::new(1.0, -2.0).display_full(),
            "1.0000000000000000e0-2.0000000000000000e0i"
        );
    }

    #[test]
    fn div_exact_is_exact_for_rationals() {
        assert_eq!(rat(1, 1).div_exact(3), rat(1, 3));
    }
}
