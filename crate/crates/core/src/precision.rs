//! Working-precision contexts and the [`Real`] scalar abstraction.
//!
//! Every numerical routine in this crate is generic over [`Real`]. Two
//! backends exist:
//!
//! * `f64` for contexts with at most [`NATIVE_DIGITS`] digits, i.e. ordinary
//!   IEEE double arithmetic;
//! * [`MpFloat`], an MPFR-backed binary float whose mantissa width is fixed by
//!   the [`PrecisionContext`] it was created under.
//!
//! A context is a plain value. There is no global precision setting, so two
//! computations with different contexts can run side by side on different
//! threads.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Round;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

/// Smallest accepted number of significant decimal digits.
pub const MIN_DIGITS: u32 = 10;

/// Contexts with at most this many digits run on native `f64`.
pub const NATIVE_DIGITS: u32 = 16;

/// Digits used when nothing else is requested.
pub const DEFAULT_DIGITS: u32 = 16;

/// Extra decimal digits carried by multi-precision contexts on top of the
/// requested ones. Symbolic packages that expose a `digits` knob carry guard
/// digits in the same way; see the book chapter on precision.
pub const GUARD_DIGITS: u32 = 10;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Number of significant decimal digits governing a computation.
///
/// ```
/// use tgquad::PrecisionContext;
///
/// let ctx = PrecisionContext::new(30)?;
/// assert_eq!(ctx.digits(), 30);
/// assert!(!ctx.is_native());
/// assert!(PrecisionContext::new(5).is_err());
/// # Ok::<(), tgquad::Error>(())
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    digits: u32,
    bits: u32,
}

impl PrecisionContext {
    pub fn new(digits: u32) -> Result<Self> {
        Self::with_guard_digits(digits, GUARD_DIGITS)
    }

    /// Like [`PrecisionContext::new`] with an explicit number of guard
    /// digits for multi-precision contexts. Native contexts ignore `guard`.
    pub fn with_guard_digits(digits: u32, guard: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::InvalidPrecision { digits });
        }
        let bits = if digits <= NATIVE_DIGITS {
            f64::MANTISSA_DIGITS
        } else {
            (f64::from(digits + guard) * LOG2_10).ceil() as u32
        };
        Ok(Self { digits, bits })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Mantissa width in bits of the backing arithmetic.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// `true` when the context is served by `f64`.
    pub fn is_native(&self) -> bool {
        self.digits <= NATIVE_DIGITS
    }

    /// Relative tolerance used to truncate series: `min(10^-digits, u)` with
    /// `u` the unit roundoff of the backing arithmetic.
    pub fn series_tolerance<R: Real>(&self) -> R {
        let nominal = R::from_int(10, self).powi(-(self.digits as i32));
        let unit = R::epsilon(self);
        if unit < nominal {
            unit
        } else {
            nominal
        }
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::new(DEFAULT_DIGITS).expect("default digits are valid")
    }
}

/// Real scalar usable by every algorithm in the crate.
pub trait Real:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
{
    fn from_f64(value: f64, ctx: &PrecisionContext) -> Self;

    fn from_int(value: i64, ctx: &PrecisionContext) -> Self;

    /// Parses a decimal literal, rounding to nearest at the context precision.
    fn parse(text: &str, ctx: &PrecisionContext) -> Result<Self>;

    /// Unit roundoff of the backing arithmetic.
    fn epsilon(ctx: &PrecisionContext) -> Self;

    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn pow(&self, exponent: &Self) -> Self;
    fn powi(&self, exponent: i32) -> Self;
    fn gamma(&self) -> Self;

    fn is_finite(&self) -> bool;
    fn is_zero(&self) -> bool;
    fn is_sign_negative(&self) -> bool;

    fn to_f64(&self) -> f64;

    /// Exact conversion to an MPFR float of the value's own precision.
    fn to_float(&self) -> Float;

    fn is_positive(&self) -> bool {
        !self.is_zero() && !self.is_sign_negative() && self.is_finite()
    }
}

impl Real for f64 {
    fn from_f64(value: f64, _ctx: &PrecisionContext) -> Self {
        value
    }

    fn from_int(value: i64, _ctx: &PrecisionContext) -> Self {
        value as f64
    }

    fn parse(text: &str, _ctx: &PrecisionContext) -> Result<Self> {
        text.trim().parse::<f64>().map_err(|_| Error::Parse { text: text.to_owned() })
    }

    fn epsilon(_ctx: &PrecisionContext) -> Self {
        f64::EPSILON / 2.0
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }

    fn exp(&self) -> Self {
        f64::exp(*self)
    }

    fn ln(&self) -> Self {
        f64::ln(*self)
    }

    fn pow(&self, exponent: &Self) -> Self {
        f64::powf(*self, *exponent)
    }

    fn powi(&self, exponent: i32) -> Self {
        f64::powi(*self, exponent)
    }

    fn gamma(&self) -> Self {
        // correctly rounded
        Float::with_val(53, *self).gamma().to_f64()
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn is_sign_negative(&self) -> bool {
        *self < 0.0
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_float(&self) -> Float {
        Float::with_val(f64::MANTISSA_DIGITS, *self)
    }
}

/// MPFR-backed binary floating point number, rounded to nearest.
///
/// Binary operations take the precision of the left operand; values created
/// through [`Real::from_f64`] and friends all share the context precision.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct MpFloat(Float);

impl MpFloat {
    pub fn new(value: Float) -> Self {
        MpFloat(value)
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }
}

impl fmt::Display for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

macro_rules! mp_binop {
    ($tr:ident, $method:ident, $tra:ident, $method_assign:ident) => {
        impl $tr for MpFloat {
            type Output = MpFloat;
            fn $method(self, rhs: MpFloat) -> MpFloat {
                MpFloat($tr::$method(self.0, &rhs.0))
            }
        }
        impl<'a> $tr<&'a MpFloat> for MpFloat {
            type Output = MpFloat;
            fn $method(self, rhs: &'a MpFloat) -> MpFloat {
                MpFloat($tr::$method(self.0, &rhs.0))
            }
        }
        impl $tra for MpFloat {
            fn $method_assign(&mut self, rhs: MpFloat) {
                $tra::$method_assign(&mut self.0, &rhs.0);
            }
        }
        impl<'a> $tra<&'a MpFloat> for MpFloat {
            fn $method_assign(&mut self, rhs: &'a MpFloat) {
                $tra::$method_assign(&mut self.0, &rhs.0);
            }
        }
    };
}

mp_binop!(Add, add, AddAssign, add_assign);
mp_binop!(Sub, sub, SubAssign, sub_assign);
mp_binop!(Mul, mul, MulAssign, mul_assign);
mp_binop!(Div, div, DivAssign, div_assign);

impl Neg for MpFloat {
    type Output = MpFloat;
    fn neg(self) -> MpFloat {
        MpFloat(-self.0)
    }
}

impl Real for MpFloat {
    fn from_f64(value: f64, ctx: &PrecisionContext) -> Self {
        MpFloat(Float::with_val(ctx.bits(), value))
    }

    fn from_int(value: i64, ctx: &PrecisionContext) -> Self {
        MpFloat(Float::with_val(ctx.bits(), value))
    }

    fn parse(text: &str, ctx: &PrecisionContext) -> Result<Self> {
        let parsed = Float::parse(text.trim()).map_err(|_| Error::Parse { text: text.to_owned() })?;
        Ok(MpFloat(Float::with_val(ctx.bits(), parsed)))
    }

    fn epsilon(ctx: &PrecisionContext) -> Self {
        // 2^-bits
        let one = Float::with_val(ctx.bits(), 1);
        MpFloat(one >> ctx.bits())
    }

    fn abs(&self) -> Self {
        MpFloat(self.0.clone().abs())
    }

    fn sqrt(&self) -> Self {
        MpFloat(self.0.clone().sqrt())
    }

    fn exp(&self) -> Self {
        MpFloat(self.0.clone().exp())
    }

    fn ln(&self) -> Self {
        MpFloat(self.0.clone().ln())
    }

    fn pow(&self, exponent: &Self) -> Self {
        MpFloat(self.0.clone().pow(&exponent.0))
    }

    fn powi(&self, exponent: i32) -> Self {
        MpFloat(self.0.clone().pow(exponent))
    }

    fn gamma(&self) -> Self {
        MpFloat(self.0.clone().gamma())
    }

    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_sign_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    fn to_float(&self) -> Float {
        self.0.clone()
    }
}

impl Sum for MpFloat {
    fn sum<I: Iterator<Item = MpFloat>>(mut iter: I) -> MpFloat {
        let first = iter.next().expect("sum of an empty MpFloat iterator");
        iter.fold(first, |acc, x| acc + x)
    }
}

/// Formats `x` with `sig` significant decimal digits, rounding half to even.
///
/// Magnitudes in `[1e-5, 10^sig)` are written positionally, everything else
/// in scientific notation (`1.8745e-16`).
///
/// ```
/// use tgquad::precision::round_to_digits;
///
/// assert_eq!(round_to_digits(&0.26424111765711533_f64, 16), "0.2642411176571153");
/// assert_eq!(round_to_digits(&0.5_f64, 3), "0.500");
/// assert_eq!(round_to_digits(&1.87449e-16_f64, 5), "1.8745e-16");
/// ```
pub fn round_to_digits<R: Real>(x: &R, sig: usize) -> String {
    assert!(sig >= 1, "at least one significant digit is required");
    format_float(&x.to_float(), sig)
}

fn format_float(value: &Float, sig: usize) -> String {
    let (negative, digits, exp) = value.to_sign_string_exp_round(10, Some(sig), Round::Nearest);
    let Some(exp) = exp else {
        if value.is_zero() {
            return if sig == 1 {
                "0".to_owned()
            } else {
                format!("0.{}", "0".repeat(sig - 1))
            };
        }
        return format!("{}{}", if negative { "-" } else { "" }, digits);
    };
    let sign = if negative { "-" } else { "" };
    // value = 0.DIGITS * 10^exp, so the leading digit has decimal exponent exp - 1.
    let lead = exp - 1;
    let body = if lead < -5 || lead >= sig as i32 {
        let (head, tail) = digits.split_at(1);
        if tail.is_empty() {
            format!("{head}e{lead}")
        } else {
            format!("{head}.{tail}e{lead}")
        }
    } else if lead < 0 {
        format!("0.{}{}", "0".repeat((-lead - 1) as usize), digits)
    } else {
        let (int, frac) = digits.split_at(lead as usize + 1);
        if frac.is_empty() {
            int.to_owned()
        } else {
            format!("{int}.{frac}")
        }
    };
    format!("{sign}{body}")
}

/// Total order on finite reals; NaN compares equal to everything.
pub(crate) fn cmp_real<R: Real>(x: &R, y: &R) -> Ordering {
    x.partial_cmp(y).unwrap_or(Ordering::Equal)
}

/// Relative deviation `|x - reference| / |reference|` evaluated at the
/// precision of the more precise operand and returned as `f64`.
///
/// Returns `|x|` when the reference is zero.
pub fn relative_deviation<A: Real, B: Real>(x: &A, reference: &B) -> f64 {
    let xr = x.to_float();
    let rr = reference.to_float();
    let prec = xr.prec().max(rr.prec());
    let diff = Float::with_val(prec, &xr - &rr).abs();
    if rr.is_zero() {
        return diff.to_f64();
    }
    let rel = diff / Float::with_val(prec, rr.abs_ref());
    rel.to_f64()
}
