//! Binary fixed-point reals backed by arbitrary-precision integers.
//!
//! Message points are spaced `2^-(nR)` apart and the receiver's error shrinks
//! to the same scale, far below `f64` resolution, so the block state lives in
//! this type while per-use channel quantities stay in `f64`.

use std::cmp::Ordering;
use std::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Float, Signed, ToPrimitive, Zero};

/// `raw * 2^-frac`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixed {
    raw: BigInt,
    frac: u32,
}

fn shift(x: BigInt, by: i64) -> BigInt {
    match by.cmp(&0) {
        Ordering::Greater => x << by as usize,
        // floor for negative values
        Ordering::Less => x >> (-by) as usize,
        Ordering::Equal => x,
    }
}

fn decompose(x: f64) -> (BigInt, i64) {
    assert!(x.is_finite(), "cannot convert {x} to fixed point");
    let (mantissa, exponent, sign) = x.integer_decode();
    let m = BigInt::from(mantissa);
    (if sign < 0 { -m } else { m }, exponent as i64)
}

impl Fixed {
    pub fn zero(frac: u32) -> Self {
        Fixed {
            raw: BigInt::zero(),
            frac,
        }
    }

    /// Nearest representable value at or below `x`.
    pub fn from_f64(x: f64, frac: u32) -> Self {
        Self::from_scaled(x, 0, frac)
    }

    /// `mantissa * 2^exp2`, for magnitudes outside the `f64` range.
    pub fn from_scaled(mantissa: f64, exp2: i64, frac: u32) -> Self {
        let (m, e) = decompose(mantissa);
        Fixed {
            raw: shift(m, e + exp2 + frac as i64),
            frac,
        }
    }

    pub fn from_raw(raw: BigInt, frac: u32) -> Self {
        Fixed { raw, frac }
    }

    pub fn from_integer(x: &BigInt, frac: u32) -> Self {
        Fixed {
            raw: x << frac as usize,
            frac,
        }
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac
    }

    pub fn raw(&self) -> &BigInt {
        &self.raw
    }

    pub fn is_zero(&self) -> bool {
        self.raw.is_zero()
    }

    /// Product with an `f64`, truncated to this precision.
    pub fn mul_f64(&self, x: f64) -> Fixed {
        let (m, e) = decompose(x);
        Fixed {
            raw: shift(&self.raw * m, e),
            frac: self.frac,
        }
    }

    pub fn mul(&self, other: &Fixed) -> Fixed {
        debug_assert_eq!(self.frac, other.frac);
        Fixed {
            raw: shift(&self.raw * &other.raw, -(other.frac as i64)),
            frac: self.frac,
        }
    }

    /// Quotient rounded toward negative infinity; `None` on a zero divisor.
    pub fn checked_div(&self, other: &Fixed) -> Option<Fixed> {
        debug_assert_eq!(self.frac, other.frac);
        if other.raw.is_zero() {
            return None;
        }
        let num = &self.raw << other.frac as usize;
        Some(Fixed {
            raw: num.div_floor(&other.raw),
            frac: self.frac,
        })
    }

    pub fn to_f64(&self) -> f64 {
        self.to_f64_scaled(0)
    }

    /// `self * 2^exp2` rounded to `f64`.
    pub fn to_f64_scaled(&self, exp2: i64) -> f64 {
        let bits = self.raw.bits() as i64;
        if bits == 0 {
            return 0.0;
        }
        let drop = (bits - 64).max(0);
        let top = (self.raw.abs() >> drop as usize).to_u64().expect("at most 64 bits");
        let e = (exp2 - self.frac as i64 + drop).clamp(-2200, 2200) as i32;
        let v = libm::scalbn(top as f64, e);
        if self.raw.sign() == Sign::Minus {
            -v
        } else {
            v
        }
    }

    /// `log2 |self|`, or `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        log2_big(self.raw.magnitude()) - self.frac as f64
    }
}

/// `log2 x` for a big unsigned integer, `-inf` for zero.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits() as i64;
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    let drop = (bits - 64).max(0);
    let top = (x >> drop as usize).to_u64().expect("at most 64 bits");
    (top as f64).log2() + drop as f64
}

impl Add for &Fixed {
    type Output = Fixed;
    fn add(self, rhs: &Fixed) -> Fixed {
        debug_assert_eq!(self.frac, rhs.frac);
        Fixed {
            raw: &self.raw + &rhs.raw,
            frac: self.frac,
        }
    }
}

impl Sub for &Fixed {
    type Output = Fixed;
    fn sub(self, rhs: &Fixed) -> Fixed {
        debug_assert_eq!(self.frac, rhs.frac);
        Fixed {
            raw: &self.raw - &rhs.raw,
            frac: self.frac,
        }
    }
}

impl Neg for &Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed {
            raw: -&self.raw,
            frac: self.frac,
        }
    }
}

impl std::ops::AddAssign<&Fixed> for Fixed {
    fn add_assign(&mut self, rhs: &Fixed) {
        debug_assert_eq!(self.frac, rhs.frac);
        self.raw += &rhs.raw;
    }
}
