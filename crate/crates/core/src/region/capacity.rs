//! Closed-form region bounds, maximum individual rates and sum-capacities
//! under a minimum energy-rate constraint `b`.

use serde::{Deserialize, Serialize};

use super::roots::solve_rho_star;
use crate::channel::ChannelConfig;
use crate::error::{Error, Result};

/// Relative slack tolerated above the maximum energy rate before `b` is
/// declared infeasible.
const ENERGY_SLACK: f64 = 1e-12;

/// Power split and IC-signal correlation that parameterize the region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatingPoint {
    pub beta1: f64,
    pub beta2: f64,
    pub rho: f64,
}

impl OperatingPoint {
    pub fn new(beta1: f64, beta2: f64, rho: f64) -> Result<Self> {
        for (name, v) in [("beta1", beta1), ("beta2", beta2), ("rho", rho)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParams(format!("{name} = {v} outside [0, 1]")));
            }
        }
        Ok(OperatingPoint { beta1, beta2, rho })
    }

    /// The split with its sum-rate optimal correlation.
    pub fn sum_rate_optimal(cfg: &ChannelConfig, beta1: f64, beta2: f64) -> Result<Self> {
        Self::new(beta1, beta2, solve_rho_star(cfg, beta1, beta2))
    }
}

/// Information rates (bits/channel use) and energy rate (energy units/channel use).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateTriplet {
    pub r1: f64,
    pub r2: f64,
    pub b: f64,
}

impl RateTriplet {
    pub fn new(r1: f64, r2: f64, b: f64) -> Self {
        RateTriplet { r1, r2, b }
    }

    /// `true` when every coordinate of `self` is at least that of `other`.
    pub fn dominates(&self, other: &RateTriplet) -> bool {
        self.r1 >= other.r1 && self.r2 >= other.r2 && self.b >= other.b
    }
}

/// Right-hand sides of the region constraints at one operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionBox {
    pub r1_max: f64,
    pub r2_max: f64,
    pub rsum_max: f64,
    pub b_max: f64,
}

impl RegionBox {
    /// Whether the triplet satisfies all four constraints of this box.
    pub fn admits(&self, t: &RateTriplet) -> bool {
        t.r1 >= 0.0
            && t.r2 >= 0.0
            && t.r1 <= self.r1_max
            && t.r2 <= self.r2_max
            && t.r1 + t.r2 <= self.rsum_max
            && t.b <= self.b_max
    }

    /// Smallest constraint slack; nonnegative iff [`RegionBox::admits`] holds
    /// for nonnegative rates. Energy slack is scaled by `energy_scale`.
    pub(crate) fn slack(&self, t: &RateTriplet, energy_scale: f64) -> f64 {
        (self.r1_max - t.r1)
            .min(self.r2_max - t.r2)
            .min(self.rsum_max - t.r1 - t.r2)
            .min((self.b_max - t.b) / energy_scale)
    }
}

fn half_log2(x: f64) -> f64 {
    0.5 * x.log2()
}

fn check_energy(cfg: &ChannelConfig, b: f64) -> Result<()> {
    let max = cfg.max_energy_rate();
    if b.is_nan() || b > max * (1.0 + ENERGY_SLACK) {
        return Err(Error::InfeasibleEnergy { b, max });
    }
    Ok(())
}

/// Region bounds with feedback at operating point `op`.
pub fn region_box_fb(cfg: &ChannelConfig, op: OperatingPoint) -> RegionBox {
    let OperatingPoint { beta1, beta2, rho } = op;
    let (s11, s12, s21, s22) = (cfg.snr11(), cfg.snr12(), cfg.snr21(), cfg.snr22());
    let a = beta1 * s11;
    let c = beta2 * s12;
    let shrink = 1.0 - rho * rho;
    RegionBox {
        r1_max: half_log2(1.0 + a * shrink),
        r2_max: half_log2(1.0 + c * shrink),
        rsum_max: half_log2(1.0 + a + c + 2.0 * rho * (a * c).sqrt()),
        b_max: 1.0
            + s21
            + s22
            + 2.0 * rho * ((beta1 * s21) * (beta2 * s22)).sqrt()
            + 2.0 * (((1.0 - beta1) * s21) * ((1.0 - beta2) * s22)).sqrt(),
    }
}

/// Region bounds without feedback: independent inputs, so `rho = 0`.
pub fn region_box_nf(cfg: &ChannelConfig, beta1: f64, beta2: f64) -> RegionBox {
    region_box_fb(cfg, OperatingPoint { beta1, beta2, rho: 0.0 })
}

/// Minimum input correlation needed for the EH to see energy rate `b`.
pub fn xi(cfg: &ChannelConfig, b: f64) -> Result<f64> {
    check_energy(cfg, b)?;
    let (s21, s22) = (cfg.snr21(), cfg.snr22());
    let excess = (b - (1.0 + s21 + s22)).max(0.0);
    let denom = 2.0 * (s21 * s22).sqrt();
    if excess == 0.0 || denom == 0.0 {
        return Ok(0.0);
    }
    Ok((excess / denom).min(1.0))
}

/// Minimum IC correlation that meets `b` when both NIC signals are fully
/// correlated and the split is `(beta1, beta2)`.
pub fn rho_min(cfg: &ChannelConfig, beta1: f64, beta2: f64, b: f64) -> Result<f64> {
    check_energy(cfg, b)?;
    let (s21, s22) = (cfg.snr21(), cfg.snr22());
    let nic = 2.0 * (((1.0 - beta1) * s21) * ((1.0 - beta2) * s22)).sqrt();
    let excess = (b - (1.0 + s21 + s22 + nic)).max(0.0);
    if excess == 0.0 {
        return Ok(0.0);
    }
    let denom = 2.0 * ((beta1 * s21) * (beta2 * s22)).sqrt();
    Ok((excess / denom).min(1.0))
}

/// Largest rate transmitter `i` can sustain alone while the EH sees `b`.
///
/// Feedback does not change this value.
pub fn max_individual_rate(cfg: &ChannelConfig, i: usize, b: f64) -> Result<f64> {
    let x = xi(cfg, b)?;
    Ok(half_log2(1.0 + (1.0 - x * x) * cfg.snr(1, i)))
}

/// Energy rate up to which the feedback sum-capacity stays at its
/// unconstrained value.
pub fn fb_flat_edge(cfg: &ChannelConfig) -> f64 {
    let rho = solve_rho_star(cfg, 1.0, 1.0);
    let (s21, s22) = (cfg.snr21(), cfg.snr22());
    1.0 + s21 + s22 + 2.0 * rho * (s21 * s22).sqrt()
}

/// Energy rate delivered by information-only transmission with independent
/// inputs; the no-feedback sum-capacity is flat below it.
pub fn nf_flat_edge(cfg: &ChannelConfig) -> f64 {
    1.0 + cfg.snr21() + cfg.snr22()
}

/// End of the regime in which both transmitters still send information in
/// the no-feedback sum-rate optimum.
pub fn nf_two_user_edge(cfg: &ChannelConfig) -> f64 {
    let (s11, s12, s21, s22) = (cfg.snr11(), cfg.snr12(), cfg.snr21(), cfg.snr22());
    let ratio = if s11 > 0.0 && s12 > 0.0 {
        (s12 / s11).sqrt().min((s11 / s12).sqrt())
    } else {
        0.0
    };
    1.0 + s21 + s22 + 2.0 * (s21 * s22).sqrt() * ratio
}

/// Transmitter with the larger receiver SNR (1 on ties).
pub fn strongest_information_user(cfg: &ChannelConfig) -> usize {
    if cfg.snr12() > cfg.snr11() {
        2
    } else {
        1
    }
}

/// Sum-capacity with feedback under energy constraint `b`.
///
/// Values of `b` at or beyond the maximum energy rate yield 0.
pub fn sum_capacity_fb(cfg: &ChannelConfig, b: f64) -> f64 {
    let (s11, s12) = (cfg.snr11(), cfg.snr12());
    let rho = solve_rho_star(cfg, 1.0, 1.0);
    let flat_edge = fb_flat_edge(cfg);
    let max = cfg.max_energy_rate();
    if b <= flat_edge {
        half_log2(1.0 + s11 + s12 + 2.0 * rho * (s11 * s12).sqrt())
    } else if b < max {
        let x = xi(cfg, b).expect("b below the maximum energy rate");
        let keep = 1.0 - x * x;
        half_log2(1.0 + keep * s11) + half_log2(1.0 + keep * s12)
    } else {
        0.0
    }
}

/// Sum-capacity without feedback under energy constraint `b`.
pub fn sum_capacity_nf(cfg: &ChannelConfig, b: f64) -> f64 {
    let (s11, s12) = (cfg.snr11(), cfg.snr12());
    let max = cfg.max_energy_rate();
    if b <= nf_two_user_edge(cfg) {
        let x = xi(cfg, b).expect("b below the two-user edge");
        half_log2(1.0 + s11 + s12 - 2.0 * x * (s11 * s12).sqrt())
    } else if b <= max {
        let x = xi(cfg, b).expect("b at most the maximum energy rate");
        let i = strongest_information_user(cfg);
        half_log2(1.0 + (1.0 - x * x) * cfg.snr(1, i))
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg10() -> ChannelConfig {
        ChannelConfig::symmetric(10.0).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn xi_examples() {
        let cfg = cfg10();
        assert_eq!(xi(&cfg, 15.0).unwrap(), 0.0);
        assert!(close(xi(&cfg, 31.0).unwrap(), 0.5, 1e-12));
        assert!(close(xi(&cfg, cfg.max_energy_rate()).unwrap(), 1.0, 1e-12));
        assert!(matches!(xi(&cfg, 42.0), Err(Error::InfeasibleEnergy { .. })));
    }

    #[test]
    fn xi_degenerate_eh_snr() {
        let cfg = ChannelConfig::from_snr(10.0, 10.0, 10.0, 0.0).unwrap();
        assert_eq!(xi(&cfg, 11.0).unwrap(), 0.0);
        assert!(xi(&cfg, 11.5).is_err());
    }

    #[test]
    fn rho_min_examples() {
        let cfg = cfg10();
        for b in [0.0, 20.0, 25.0, 31.0, 38.0, cfg.max_energy_rate()] {
            assert_eq!(rho_min(&cfg, 1.0, 1.0, b).unwrap(), xi(&cfg, b).unwrap());
        }
        assert_eq!(rho_min(&cfg, 0.4, 0.7, 21.0).unwrap(), 0.0);
        assert_eq!(rho_min(&cfg, 0.5, 0.5, 30.0).unwrap(), 0.0);
        let r = rho_min(&cfg, 0.5, 0.5, 35.0).unwrap();
        assert!(close(r, 0.4, 1e-12), "{r}");
        assert!(rho_min(&cfg, 0.5, 0.5, 50.0).is_err());
    }

    #[test]
    fn region_box_examples() {
        let cfg = cfg10();
        let q1 = region_box_fb(&cfg, OperatingPoint::new(0.0, 0.0, 0.7).unwrap());
        assert_eq!((q1.r1_max, q1.r2_max, q1.rsum_max), (0.0, 0.0, 0.0));
        assert_eq!(q1.b_max, cfg.max_energy_rate());

        let bx = region_box_fb(&cfg, OperatingPoint::new(1.0, 1.0, 0.0).unwrap());
        assert!(close(bx.rsum_max, 0.5 * 21f64.log2(), 1e-12));
        assert!(close(bx.b_max, 21.0, 1e-12));

        let op = OperatingPoint::sum_rate_optimal(&cfg, 0.7, 0.4).unwrap();
        let bx = region_box_fb(&cfg, op);
        assert!(close(bx.r1_max + bx.r2_max, bx.rsum_max, 1e-9));
    }

    #[test]
    fn region_box_nf_examples() {
        let cfg = cfg10();
        for (b1, b2) in [(0.3, 0.8), (1.0, 1.0), (0.0, 0.5)] {
            assert_eq!(
                region_box_nf(&cfg, b1, b2),
                region_box_fb(&cfg, OperatingPoint::new(b1, b2, 0.0).unwrap())
            );
        }
        let bx = region_box_nf(&cfg, 1.0, 1.0);
        assert!(close(bx.r1_max, 0.5 * 11f64.log2(), 1e-12));
        assert!(close(bx.r2_max, 0.5 * 11f64.log2(), 1e-12));
        assert!(close(bx.rsum_max, 0.5 * 21f64.log2(), 1e-12));
        assert!(close(bx.b_max, 21.0, 1e-12));
        let bx = region_box_nf(&cfg, 1.0, 0.0);
        assert!(close(bx.b_max, 21.0, 1e-12));
        assert_eq!(bx.r2_max, 0.0);
    }

    #[test]
    fn max_individual_rate_examples() {
        let cfg = cfg10();
        for i in 1..=2 {
            assert!(close(
                max_individual_rate(&cfg, i, 20.0).unwrap(),
                0.5 * 11f64.log2(),
                1e-12
            ));
            assert!(close(
                max_individual_rate(&cfg, i, cfg.max_energy_rate()).unwrap(),
                0.0,
                1e-12
            ));
            assert!(close(
                max_individual_rate(&cfg, i, 31.0).unwrap(),
                0.5 * 8.5f64.log2(),
                1e-12
            ));
        }
    }

    #[test]
    fn sum_capacity_fb_examples() {
        let cfg = cfg10();
        let rho = solve_rho_star(&cfg, 1.0, 1.0);
        let flat = 0.5 * (21.0 + 20.0 * rho).log2();
        assert!(close(sum_capacity_fb(&cfg, 0.0), flat, 1e-12));
        assert!((21.0 + 20.0 * rho - 35.23).abs() < 0.01);
        assert_eq!(sum_capacity_fb(&cfg, cfg.max_energy_rate()), 0.0);
        assert_eq!(sum_capacity_fb(&cfg, 100.0), 0.0);
        let edge = fb_flat_edge(&cfg);
        assert!(close(sum_capacity_fb(&cfg, edge), flat, 0.0));
        assert!(close(sum_capacity_fb(&cfg, edge + 1e-9), flat, 1e-7));
    }

    #[test]
    fn sum_capacity_nf_examples() {
        let cfg = cfg10();
        assert!(close(sum_capacity_nf(&cfg, 10.0), 0.5 * 21f64.log2(), 1e-12));
        assert!(close(sum_capacity_nf(&cfg, 31.0), 0.5 * 11f64.log2(), 1e-12));
        assert_eq!(sum_capacity_nf(&cfg, cfg.max_energy_rate()), 0.0);
    }

    #[test]
    fn nf_strong_user_regime() {
        // snr11 = 4 snr12: edge ratio is 1/2
        let cfg = ChannelConfig::from_snr(40.0, 10.0, 10.0, 10.0).unwrap();
        let edge = nf_two_user_edge(&cfg);
        assert!(close(edge, 1.0 + 20.0 + 20.0 * 0.5, 1e-9));
        assert_eq!(strongest_information_user(&cfg), 1);
        let b = 36.0;
        let x = xi(&cfg, b).unwrap();
        let expect = 0.5 * (1.0 + (1.0 - x * x) * 40.0f64).log2();
        assert!(close(sum_capacity_nf(&cfg, b), expect, 1e-9));
        assert_eq!(strongest_information_user(&cfg10()), 1);
        let cfg = ChannelConfig::from_snr(10.0, 40.0, 10.0, 10.0).unwrap();
        assert_eq!(strongest_information_user(&cfg), 2);
    }

    #[test]
    fn sum_capacities_without_eh_snr() {
        let cfg = ChannelConfig::from_snr(10.0, 10.0, 10.0, 0.0).unwrap();
        let b = cfg.max_energy_rate();
        let rho = solve_rho_star(&cfg, 1.0, 1.0);
        assert!(close(sum_capacity_fb(&cfg, b), 0.5 * (21.0 + 20.0 * rho).log2(), 1e-12));
        assert!(close(sum_capacity_nf(&cfg, b), 0.5 * 21f64.log2(), 1e-12));
    }
}
