//! Equally spaced message points on `(-sqrt(P), sqrt(P)]`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::fixed::Fixed;
use super::params::message_set_size;
use crate::error::{Error, Result};

/// The `floor(2^(nR))` message points of one transmitter.
#[derive(Debug, Clone, PartialEq)]
pub struct MessageSet {
    size: BigUint,
    amplitude: f64,
}

impl MessageSet {
    pub fn new(rate: f64, n: usize, power: f64) -> Self {
        Self::with_size(message_set_size(rate, n), power)
    }

    pub fn with_size(size: BigUint, power: f64) -> Self {
        assert!(!size.is_zero(), "message set cannot be empty");
        MessageSet {
            size,
            amplitude: power.sqrt(),
        }
    }

    pub fn size(&self) -> &BigUint {
        &self.size
    }

    /// `sqrt(P)`, the first message point.
    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    /// Spacing `2 sqrt(P) / |M|` (rounded to `f64`).
    pub fn spacing(&self) -> f64 {
        2.0 * self.amplitude / biguint_to_f64(&self.size)
    }

    fn check(&self, m: &BigUint) -> Result<()> {
        if m.is_zero() || m > &self.size {
            return Err(Error::MessageOutOfRange {
                index: m.to_string(),
                size: self.size.to_string(),
            });
        }
        Ok(())
    }

    /// Message point of index `m` (1-based) at `frac` fractional bits.
    pub fn point(&self, m: &BigUint, frac: u32) -> Result<Fixed> {
        self.check(m)?;
        let a = Fixed::from_f64(self.amplitude, frac);
        let steps = BigInt::from(m - 1u32) * 2u32 * a.raw();
        let offset = steps.div_floor(&BigInt::from(self.size.clone()));
        Ok(&a - &Fixed::from_raw(offset, frac))
    }

    /// Message point of index `m` rounded to `f64`.
    pub fn point_f64(&self, m: &BigUint) -> Result<f64> {
        self.check(m)?;
        let frac = 64 + self.size.bits() as u32;
        Ok(self.point(m, frac)?.to_f64())
    }

    /// Index of the message point nearest to `estimate`; ties go to the
    /// smaller index.
    pub fn nearest(&self, estimate: &Fixed) -> BigUint {
        let frac = estimate.frac_bits();
        let a = Fixed::from_f64(self.amplitude, frac);
        if a.is_zero() {
            return BigUint::one();
        }
        // position k = (a - estimate) |M| / (2a); nearest integer, ties down
        let num = (&a - estimate).raw() * BigInt::from(self.size.clone());
        let den = a.raw() * 2u32;
        let k = -(&den - &num * 2u32).div_floor(&(&den * 2u32));
        let last = BigInt::from(&self.size - 1u32);
        let k = k.clamp(BigInt::zero(), last);
        k.to_biguint().expect("clamped to nonnegative") + 1u32
    }
}

pub(crate) fn biguint_to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// Message point `sqrt(p) - (m - 1) * 2 sqrt(p) / floor(2^(n rate))`.
pub fn message_point(m: &BigUint, rate: f64, n: usize, power: f64) -> Result<f64> {
    MessageSet::new(rate, n, power).point_f64(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn point_examples() {
        assert_eq!(message_point(&u(1), 0.5, 4, 1.0).unwrap(), 1.0);
        assert_eq!(message_point(&u(3), 0.5, 4, 1.0).unwrap(), 0.0);
        assert_eq!(message_point(&u(4), 0.5, 4, 1.0).unwrap(), -0.5);
        assert_eq!(message_point(&u(1), 0.5, 4, 9.0).unwrap(), 3.0);
        assert!(message_point(&u(0), 0.5, 4, 1.0).is_err());
        assert!(message_point(&u(5), 0.5, 4, 1.0).is_err());
    }

    #[test]
    fn spacing_is_constant() {
        let set = MessageSet::new(0.7, 20, 2.0);
        let d = set.spacing();
        let mut prev = set.point_f64(&u(1)).unwrap();
        for m in 2..50u64 {
            let p = set.point_f64(&u(m)).unwrap();
            assert!((prev - p - d).abs() < 1e-12);
            prev = p;
        }
    }

    #[test]
    fn points_in_half_open_interval() {
        let set = MessageSet::new(0.3, 10, 4.0);
        let last = set.size().clone();
        assert_eq!(set.point_f64(&u(1)).unwrap(), 2.0);
        assert!(set.point_f64(&last).unwrap() > -2.0);
    }

    #[test]
    fn nearest_recovers_points_and_breaks_ties_low() {
        let set = MessageSet::with_size(u(4), 1.0);
        let frac = 80;
        for m in 1..=4u64 {
            let p = set.point(&u(m), frac).unwrap();
            assert_eq!(set.nearest(&p), u(m));
        }
        // midway between points 2 (0.5) and 3 (0.0)
        assert_eq!(set.nearest(&Fixed::from_f64(0.25, frac)), u(2));
        assert_eq!(set.nearest(&Fixed::from_f64(0.2499, frac)), u(3));
        assert_eq!(set.nearest(&Fixed::from_f64(7.0, frac)), u(1));
        assert_eq!(set.nearest(&Fixed::from_f64(-7.0, frac)), u(4));
    }

    #[test]
    fn nearest_in_huge_sets() {
        let size = (BigUint::one() << 3000usize) - 17u32;
        let set = MessageSet::with_size(size.clone(), 20.0);
        let frac = 3200;
        for m in [u(1), u(123456789), &size / 3u32, size.clone()] {
            let p = set.point(&m, frac).unwrap();
            let nudged = &p + &Fixed::from_scaled(0.3, -3000, frac);
            assert_eq!(set.nearest(&nudged), m);
        }
    }
}
