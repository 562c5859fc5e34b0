use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::channel::ChannelConfig;
use crate::error::{Error, Result};
use crate::region::solve_rho_star;

/// Blocklength, target rates, power splits and shared seed of one coding
/// scheme instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeParams {
    pub cfg: ChannelConfig,
    /// Channel uses after the three initialization uses.
    pub n: usize,
    pub r1: f64,
    pub r2: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub seed: u64,
}

impl SchemeParams {
    pub fn new(cfg: ChannelConfig, n: usize, rates: [f64; 2], betas: [f64; 2], seed: u64) -> Result<Self> {
        let p = SchemeParams {
            cfg,
            n,
            r1: rates[0],
            r2: rates[1],
            beta1: betas[0],
            beta2: betas[1],
            seed,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParams("blocklength must be at least 1".into()));
        }
        for i in 1..=2 {
            let (r, b) = (self.rate(i), self.beta(i));
            if !(r.is_finite() && r >= 0.0) {
                return Err(Error::InvalidParams(format!(
                    "rate {i} = {r} must be finite and nonnegative"
                )));
            }
            if !(0.0..=1.0).contains(&b) {
                return Err(Error::InvalidParams(format!("beta{i} = {b} outside [0, 1]")));
            }
            if r > 0.0 && !(self.cfg.gain(1, i) > 0.0 && self.cfg.power(i) > 0.0) {
                return Err(Error::InvalidParams(format!(
                    "transmitter {i} cannot reach the receiver but has a positive rate"
                )));
            }
        }
        Ok(())
    }

    pub fn rate(&self, i: usize) -> f64 {
        match i {
            1 => self.r1,
            2 => self.r2,
            _ => panic!("transmitter index must be 1 or 2, got {i}"),
        }
    }

    pub fn beta(&self, i: usize) -> f64 {
        match i {
            1 => self.beta1,
            2 => self.beta2,
            _ => panic!("transmitter index must be 1 or 2, got {i}"),
        }
    }

    /// Correlation the initialization gives the two described noise terms.
    pub fn rho_star(&self) -> f64 {
        solve_rho_star(&self.cfg, self.beta1, self.beta2)
    }

    /// Per-use rate at which transmitter `i` resolves its message point.
    pub fn rate_limit(&self, i: usize) -> f64 {
        let rho = self.rho_star();
        0.5 * (1.0 + self.beta(i) * self.cfg.snr(1, i) * (1.0 - rho * rho)).log2()
    }

    /// `floor(2^(n R_i))`.
    pub fn message_set_size(&self, i: usize) -> BigUint {
        message_set_size(self.rate(i), self.n)
    }
}

/// `floor(2^(n r))`. Exact while `n r` fits the `f64` mantissa budget,
/// otherwise the 53 leading bits are exact and the rest are zero.
pub fn message_set_size(rate: f64, n: usize) -> BigUint {
    let total = rate * n as f64;
    let whole = total.floor();
    let fraction = total - whole;
    if whole <= 52.0 {
        return BigUint::from(total.exp2().floor() as u64).max(BigUint::one());
    }
    let lead = (fraction.exp2() * 2f64.powi(52)).floor() as u64;
    BigUint::from(lead) << (whole as usize - 52)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_sizes() {
        assert_eq!(message_set_size(0.0, 100), BigUint::one());
        assert_eq!(message_set_size(0.5, 4), BigUint::from(4u32));
        assert_eq!(message_set_size(0.3, 10), BigUint::from(8u32));
        assert_eq!(message_set_size(1.0, 200), BigUint::one() << 200usize);
        let big = message_set_size(1.5, 101);
        let approx = crate::coder::fixed::log2_big(&big);
        assert!((approx - 151.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_params() {
        let cfg = ChannelConfig::symmetric(10.0).unwrap();
        assert!(SchemeParams::new(cfg, 0, [0.1, 0.1], [1.0, 1.0], 1).is_err());
        assert!(SchemeParams::new(cfg, 10, [-0.1, 0.1], [1.0, 1.0], 1).is_err());
        assert!(SchemeParams::new(cfg, 10, [0.1, 0.1], [1.5, 1.0], 1).is_err());
        let mute = ChannelConfig::from_snr(0.0, 10.0, 1.0, 1.0).unwrap();
        assert!(SchemeParams::new(mute, 10, [0.1, 0.1], [1.0, 1.0], 1).is_err());
        assert!(SchemeParams::new(mute, 10, [0.0, 0.1], [1.0, 1.0], 1).is_ok());
    }

    #[test]
    fn symmetric_rate_limit() {
        let cfg = ChannelConfig::symmetric(10.0).unwrap();
        let p = SchemeParams::new(cfg, 10, [0.0, 0.0], [1.0, 1.0], 1).unwrap();
        let rho = p.rho_star();
        assert!((p.rate_limit(1) - 0.5 * (1.0 + 10.0 * (1.0 - rho * rho)).log2()).abs() < 1e-15);
        assert_eq!(p.rate_limit(1), p.rate_limit(2));
    }
}
