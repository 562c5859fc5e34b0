//! Shared fixtures for the criterion benches.

pub use seit_core;

use seit_core::{ChannelConfig, SchemeParams};

/// Symmetric channel at 10 dB on every link.
pub fn symmetric_channel() -> ChannelConfig {
    ChannelConfig::symmetric(10.0).expect("valid SNR")
}

/// Asymmetric channel with distinct receiver and harvester SNRs.
pub fn asymmetric_channel() -> ChannelConfig {
    ChannelConfig::from_snr(10.0, 3.0, 2.0, 7.0).expect("valid SNRs")
}

/// Full-power scheme at half of each transmitter's rate limit.
pub fn half_rate_params(n: usize) -> SchemeParams {
    let cfg = symmetric_channel();
    let probe = SchemeParams::new(cfg, n, [0.0, 0.0], [1.0, 1.0], 1).expect("valid params");
    let rates = [0.5 * probe.rate_limit(1), 0.5 * probe.rate_limit(2)];
    SchemeParams::new(cfg, n, rates, [1.0, 1.0], 1).expect("valid params")
}
