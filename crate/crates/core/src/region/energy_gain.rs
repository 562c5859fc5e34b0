//! Energy-rate gain of feedback when both systems operate at the
//! no-feedback sum-capacity.

use serde::{Deserialize, Serialize};

use super::capacity::xi;
use crate::channel::ChannelConfig;
use crate::error::{Error, Result};

/// Channel asymmetry seen from transmitter `i` (the other one is `j`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymmetryRatios {
    /// `snr_1i / snr_1j`
    pub nu_i: f64,
    /// `snr_2i / snr_2j`
    pub eta_i: f64,
    /// `snr_2i / snr_1i`
    pub psi_i: f64,
}

impl AsymmetryRatios {
    pub fn new(nu_i: f64, eta_i: f64, psi_i: f64) -> Result<Self> {
        for (name, v) in [("nu", nu_i), ("eta", eta_i), ("psi", psi_i)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParams(format!(
                    "asymmetry ratio {name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(AsymmetryRatios { nu_i, eta_i, psi_i })
    }

    /// Ratios of `cfg` seen from transmitter `i`.
    pub fn from_config(cfg: &ChannelConfig, i: usize) -> Result<Self> {
        let j = 3 - i;
        Self::new(
            cfg.snr(1, i) / cfg.snr(1, j),
            cfg.snr(2, i) / cfg.snr(2, j),
            cfg.snr(2, i) / cfg.snr(1, i),
        )
    }
}

fn require_information_snrs(cfg: &ChannelConfig) -> Result<(f64, f64)> {
    let (s11, s12) = (cfg.snr11(), cfg.snr12());
    if !(s11 > 0.0 && s12 > 0.0) {
        return Err(Error::DegenerateSnr("snr11 and snr12 must both be positive"));
    }
    Ok((s11, s12))
}

/// Fraction of the information power each transmitter must keep for the
/// feedback system to match the no-feedback sum-capacity.
///
/// Computed as `2 / (1 + sqrt(1 + 4 s11 s12 / (s11 + s12)))`, which equals the
/// usual `((s11+s12)/(2 s11 s12)) (sqrt(1 + 4 s11 s12/(s11+s12)) - 1)` without
/// the cancellation at low SNR.
pub fn gamma(cfg: &ChannelConfig) -> Result<f64> {
    let (s11, s12) = require_information_snrs(cfg)?;
    Ok(gamma_from_snrs(s11, s12))
}

fn gamma_from_snrs(s11: f64, s12: f64) -> f64 {
    let x = 4.0 * s11 * s12 / (s11 + s12);
    2.0 / (1.0 + (1.0 + x).sqrt())
}

/// Returns `(gamma, b_fb)`: the largest energy rate guaranteed with feedback
/// while the information sum-rate equals the no-feedback sum-capacity.
pub fn b_fb_at_nf_sum_capacity(cfg: &ChannelConfig) -> Result<(f64, f64)> {
    let g = gamma(cfg)?;
    let (s21, s22) = (cfg.snr21(), cfg.snr22());
    Ok((g, 1.0 + s21 + s22 + 2.0 * ((1.0 - g) * s21 * s22).sqrt()))
}

/// Energy rate guaranteed without feedback at its own sum-capacity.
pub fn b_nf_at_nf_sum_capacity(cfg: &ChannelConfig) -> f64 {
    1.0 + cfg.snr21() + cfg.snr22()
}

/// Residual of the rate equality defining `b_fb`: the no-feedback
/// sum-capacity minus the sum of the feedback individual-rate bounds at
/// correlation `xi(b)`.
pub fn b_fb_rate_residual(cfg: &ChannelConfig, b: f64) -> Result<f64> {
    let (s11, s12) = (cfg.snr11(), cfg.snr12());
    let x = xi(cfg, b)?;
    let keep = 1.0 - x * x;
    Ok(0.5 * (1.0 + s11 + s12).log2() - 0.5 * (1.0 + keep * s11).log2() - 0.5 * (1.0 + keep * s12).log2())
}

/// `B_FB / B_NF`; lies in `[1, 2]`.
pub fn feedback_gain_ratio(cfg: &ChannelConfig) -> Result<f64> {
    let g = gamma(cfg)?;
    let (s21, s22) = (cfg.snr21(), cfg.snr22());
    Ok(1.0 + 2.0 * ((1.0 - g) * s21 * s22).sqrt() / (1.0 + s21 + s22))
}

/// The same ratio written in terms of asymmetry ratios and the information
/// SNR `snr_1j` of the other transmitter.
pub fn feedback_gain_ratio_from_ratios(ratios: &AsymmetryRatios, snr_1j: f64) -> f64 {
    let AsymmetryRatios { nu_i, eta_i, .. } = *ratios;
    // psi_j follows from the three ratios seen from i
    let psi_j = ratios.psi_i * nu_i / eta_i;
    let g = (1.0 + nu_i) / (2.0 * nu_i * snr_1j) * ((1.0 + 4.0 * nu_i * snr_1j / (1.0 + nu_i)).sqrt() - 1.0);
    1.0 + 2.0 * psi_j * snr_1j * (eta_i * (1.0 - g)).sqrt() / (1.0 + (1.0 + eta_i) * psi_j * snr_1j)
}

/// High-SNR limit of [`feedback_gain_ratio`] with the asymmetry held fixed.
pub fn gain_ratio_limit_high_snr(ratios: &AsymmetryRatios) -> f64 {
    let eta = ratios.eta_i;
    1.0 + 2.0 * eta.sqrt() / (1.0 + eta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_values_symmetric_ten() {
        let cfg = ChannelConfig::symmetric(10.0).unwrap();
        let (g, b_fb) = b_fb_at_nf_sum_capacity(&cfg).unwrap();
        assert!((g - 0.1 * (21f64.sqrt() - 1.0)).abs() < 1e-12);
        assert!((g - 0.35826).abs() < 1e-5);
        assert!((b_fb - (21.0 + 2.0 * (64.174f64).sqrt())).abs() < 1e-2);
        assert!((b_fb - 37.02).abs() < 0.01);
        assert!(b_fb_rate_residual(&cfg, b_fb).unwrap().abs() < 1e-9);
        let r = feedback_gain_ratio(&cfg).unwrap();
        assert!((r - b_fb / 21.0).abs() < 1e-12);
        assert!((r - 1.763).abs() < 1e-3);
    }

    #[test]
    fn gamma_symmetric_closed_form() {
        for s in [0.01, 1.0, 7.5, 300.0] {
            let cfg = ChannelConfig::from_snr(s, s, 1.0, 2.0).unwrap();
            let g = gamma(&cfg).unwrap();
            assert!((g - ((1.0 + 2.0 * s).sqrt() - 1.0) / s).abs() < 1e-12);
        }
        let a = gamma(&ChannelConfig::from_snr(3.0, 8.0, 1.0, 1.0).unwrap()).unwrap();
        let b = gamma(&ChannelConfig::from_snr(8.0, 3.0, 1.0, 1.0).unwrap()).unwrap();
        assert!((a - b).abs() < 1e-15);
    }

    #[test]
    fn gamma_vanishes_at_high_snr() {
        let cfg = ChannelConfig::from_snr(1e8, 2e8, 1.0, 1.0).unwrap();
        assert!(gamma(&cfg).unwrap() < 1e-3);
    }

    #[test]
    fn degenerate_snr_rejected() {
        let cfg = ChannelConfig::from_snr(0.0, 10.0, 10.0, 10.0).unwrap();
        assert!(matches!(gamma(&cfg), Err(Error::DegenerateSnr(_))));
        assert!(feedback_gain_ratio(&cfg).is_err());
    }

    #[test]
    fn ratio_limits() {
        let low = ChannelConfig::symmetric(1e-6).unwrap();
        assert!((feedback_gain_ratio(&low).unwrap() - 1.0).abs() < 1e-3);
        let high = ChannelConfig::symmetric(1e8).unwrap();
        assert!((feedback_gain_ratio(&high).unwrap() - 2.0).abs() < 1e-2);
    }

    #[test]
    fn high_snr_limit_examples() {
        let one = AsymmetryRatios::new(1.0, 1.0, 1.0).unwrap();
        assert_eq!(gain_ratio_limit_high_snr(&one), 2.0);
        let four = AsymmetryRatios::new(1.0, 4.0, 1.0).unwrap();
        assert!((gain_ratio_limit_high_snr(&four) - 1.8).abs() < 1e-15);
        let quarter = AsymmetryRatios::new(1.0, 0.25, 1.0).unwrap();
        assert!((gain_ratio_limit_high_snr(&quarter) - 1.8).abs() < 1e-15);
        assert!(AsymmetryRatios::new(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn ratio_routes_agree() {
        for s in [[2.0, 5.0, 3.0, 0.5], [10.0, 10.0, 10.0, 10.0], [1e3, 20.0, 4.0, 9e2]] {
            let cfg = ChannelConfig::from_snr(s[0], s[1], s[2], s[3]).unwrap();
            let direct = feedback_gain_ratio(&cfg).unwrap();
            for i in 1..=2 {
                let ratios = AsymmetryRatios::from_config(&cfg, i).unwrap();
                let other = feedback_gain_ratio_from_ratios(&ratios, cfg.snr(1, 3 - i));
                assert!((direct - other).abs() < 1e-9, "{direct} vs {other}");
            }
        }
    }
}
