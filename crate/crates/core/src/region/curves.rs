//! Tabulated sum-capacity and feedback-gain curves.

use super::capacity::{fb_flat_edge, nf_flat_edge, nf_two_user_edge, sum_capacity_fb, sum_capacity_nf};
use super::energy_gain::{feedback_gain_ratio, gain_ratio_limit_high_snr, AsymmetryRatios};
use crate::channel::ChannelConfig;
use crate::error::{Error, Result};
use crate::output::Table;

/// `points` uniform energy rates on `[0, max]` plus every regime edge,
/// sorted and deduplicated; the last entry is exactly the maximum.
pub fn energy_grid(cfg: &ChannelConfig, points: usize) -> Vec<f64> {
    let max = cfg.max_energy_rate();
    let points = points.max(2);
    let mut grid: Vec<f64> = (0..points).map(|k| max * k as f64 / (points - 1) as f64).collect();
    grid[points - 1] = max;
    for edge in [fb_flat_edge(cfg), nf_flat_edge(cfg), nf_two_user_edge(cfg)] {
        if (0.0..=max).contains(&edge) {
            grid.push(edge);
        }
    }
    grid.sort_by(f64::total_cmp);
    let tol = 1e-12 * max.max(1.0);
    grid.dedup_by(|later, kept| (*later - *kept).abs() <= tol);
    if let Some(last) = grid.last_mut() {
        *last = max;
    }
    grid
}

/// Columns `b,rsum_fb,rsum_nf` over [`energy_grid`].
pub fn sum_capacity_curve(cfg: &ChannelConfig, points: usize) -> Table {
    let mut t = Table::new(&["b", "rsum_fb", "rsum_nf"]);
    for b in energy_grid(cfg, points) {
        t.push(vec![b, sum_capacity_fb(cfg, b), sum_capacity_nf(cfg, b)]);
    }
    t
}

/// `points_per_decade` log-spaced SNR values on `[lo, hi]`, `hi` included.
pub fn snr_grid(lo: f64, hi: f64, points_per_decade: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) || points_per_decade == 0 {
        return Err(Error::InvalidParams(format!(
            "SNR sweep needs 0 < lo <= hi and a positive density, got [{lo}, {hi}] x {points_per_decade}"
        )));
    }
    let (a, b) = (lo.log10(), hi.log10());
    let steps = ((b - a) * points_per_decade as f64).round().max(1.0) as usize;
    let mut out: Vec<f64> = (0..=steps)
        .map(|k| 10f64.powf(a + (b - a) * k as f64 / steps as f64))
        .collect();
    out[0] = lo;
    out[steps] = hi;
    out.dedup();
    Ok(out)
}

/// Co-located sweep: transmitter 1 sees `asym * snr` at both receivers,
/// transmitter 2 sees `snr`. Columns `asym,snr,ratio,high_snr_limit`.
pub fn gain_ratio_curve(asymmetries: &[f64], snrs: &[f64]) -> Result<Table> {
    let mut t = Table::new(&["asym", "snr", "ratio", "high_snr_limit"]);
    for &k in asymmetries {
        let limit = gain_ratio_limit_high_snr(&AsymmetryRatios::new(k, k, 1.0)?);
        for &s in snrs {
            let cfg = ChannelConfig::from_snr(k * s, s, k * s, s)?;
            t.push(vec![k, s, feedback_gain_ratio(&cfg)?, limit]);
        }
    }
    Ok(t)
}
