//! Coefficient backends.
//!
//! The default backend is exact arbitrary-precision rational arithmetic, under
//! which subspace equality is exact and every identity checked by the test
//! suites is an equality of canonical basis matrices. A double-precision
//! backend with a relative tolerance is available for experiments; it is not
//! used by the exactness suites.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{GpdError, Result};

/// Field of coefficients for all linear algebra in the crate.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// Parses `"p/q"`, an integer, or a plain decimal such as `2.5`.
    fn parse(text: &str) -> Result<Self>;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_zero(&self) -> bool;
    fn eq_scalar(&self, other: &Self) -> bool;
    /// `|self| > |other|`; used for pivot selection.
    fn abs_gt(&self, other: &Self) -> bool;
    /// Total order on values (grades and metric entries rely on this).
    fn cmp_val(&self, other: &Self) -> Ordering;
    /// Canonical display form; rationals render as `p/q` (or `p` when integral).
    fn to_display(&self) -> String;
    /// True when arithmetic is exact; the float backend returns false.
    fn exact() -> bool;
}

/// Exact rational scalar, the reference backend.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn parse_decimal_as_rational(text: &str) -> Option<BigRational> {
    let (sign, body) = match text.strip_prefix('-') {
        Some(rest) => (-1i64, rest),
        None => (1i64, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((a, b)) => (a, b),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{}{}", int_part, frac_part);
    let numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Some(BigRational::new(BigInt::from(sign) * numer, denom))
}

impl Scalar for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        rat(num, den)
    }
    fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Ok(r) = BigRational::from_str(text) {
            return Ok(r);
        }
        parse_decimal_as_rational(text).ok_or_else(|| GpdError::Parse {
            line: 0,
            msg: format!("cannot parse rational `{text}`"),
        })
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn eq_scalar(&self, other: &Self) -> bool {
        self == other
    }
    fn abs_gt(&self, other: &Self) -> bool {
        self.abs() > other.abs()
    }
    fn cmp_val(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
    fn to_display(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
    fn exact() -> bool {
        true
    }
}

static FLOAT_EPS_BITS: AtomicU64 = AtomicU64::new(0);

fn float_eps() -> f64 {
    let bits = FLOAT_EPS_BITS.load(AtomicOrdering::Relaxed);
    if bits == 0 {
        1e-10
    } else {
        f64::from_bits(bits)
    }
}

/// Sets the relative tolerance used by the float backend (default `1e-10`).
pub fn set_float_tolerance(eps: f64) {
    FLOAT_EPS_BITS.store(eps.to_bits(), AtomicOrdering::Relaxed);
}

/// Double-precision scalar with relative-tolerance comparisons.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct F64S(pub f64);

impl Scalar for F64S {
    fn zero() -> Self {
        F64S(0.0)
    }
    fn one() -> Self {
        F64S(1.0)
    }
    fn from_int(n: i64) -> Self {
        F64S(n as f64)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        F64S(num as f64 / den as f64)
    }
    fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Ok(v) = f64::from_str(text) {
            return Ok(F64S(v));
        }
        if let Some((n, d)) = text.split_once('/') {
            let n = f64::from_str(n.trim()).map_err(|_| GpdError::Parse {
                line: 0,
                msg: format!("cannot parse float `{text}`"),
            })?;
            let d = f64::from_str(d.trim()).map_err(|_| GpdError::Parse {
                line: 0,
                msg: format!("cannot parse float `{text}`"),
            })?;
            return Ok(F64S(n / d));
        }
        Err(GpdError::Parse {
            line: 0,
            msg: format!("cannot parse float `{text}`"),
        })
    }
    fn add(&self, other: &Self) -> Self {
        F64S(self.0 + other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        F64S(self.0 - other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        F64S(self.0 * other.0)
    }
    fn div(&self, other: &Self) -> Self {
        F64S(self.0 / other.0)
    }
    fn neg(&self) -> Self {
        F64S(-self.0)
    }
    fn is_zero(&self) -> bool {
        self.0.abs() <= float_eps()
    }
    fn eq_scalar(&self, other: &Self) -> bool {
        let scale = 1f64.max(self.0.abs()).max(other.0.abs());
        (self.0 - other.0).abs() <= float_eps() * scale
    }
    fn abs_gt(&self, other: &Self) -> bool {
        self.0.abs() > other.0.abs()
    }
    fn cmp_val(&self, other: &Self) -> Ordering {
        self.0.partial_cmp(&other.0).expect("NaN grade")
    }
    fn to_display(&self) -> String {
        format!("{:?}", self.0)
    }
    fn exact() -> bool {
        false
    }
}
