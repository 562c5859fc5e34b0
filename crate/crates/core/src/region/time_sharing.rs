//! Alternating information-only and energy-only transmission.
//!
//! A fraction `lambda` of the block carries independent information symbols
//! with powers `P'`; the rest carries fully correlated energy symbols with
//! powers `P''`. Each transmitter meets its power budget with equality, which
//! fixes `P''_i = (P_i - lambda P'_i) / (1 - lambda)`.

use super::capacity::xi;
use super::search::unit_grid;
use crate::channel::ChannelConfig;
use crate::error::Result;

/// Grid lower bound on the best time-sharing sum-rate meeting energy rate `b`.
pub fn time_sharing_sum_rate(cfg: &ChannelConfig, b: f64, grid_n: usize) -> Result<f64> {
    xi(cfg, b)?;
    let (h11, h12) = (cfg.gain(1, 1), cfg.gain(1, 2));
    let (h21, h22) = (cfg.gain(2, 1), cfg.gain(2, 2));
    let (p1, p2) = (cfg.power(1), cfg.power(2));
    let units = unit_grid(grid_n);

    let mut best = 0.0f64;
    // lambda = 1: pure information transmission
    if 1.0 + h21 * h21 * p1 + h22 * h22 * p2 >= b {
        best = 0.5 * (1.0 + h11 * h11 * p1 + h12 * h12 * p2).log2();
    }
    for &lambda in &units[1..units.len() - 1] {
        let idle = 1.0 - lambda;
        for &u1 in &units {
            let info1 = u1 * p1 / lambda;
            let energy1 = (p1 - lambda * info1).max(0.0) / idle;
            for &u2 in &units {
                let info2 = u2 * p2 / lambda;
                let energy2 = (p2 - lambda * info2).max(0.0) / idle;
                let coherent = h21 * energy1.sqrt() + h22 * energy2.sqrt();
                let energy = 1.0 + lambda * (h21 * h21 * info1 + h22 * h22 * info2) + idle * coherent * coherent;
                if energy < b {
                    continue;
                }
                let rate = 0.5 * lambda * (1.0 + h11 * h11 * info1 + h12 * h12 * info2).log2();
                if rate > best {
                    best = rate;
                }
            }
        }
    }
    Ok(best)
}
