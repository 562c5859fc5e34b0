//! Two-user real Gaussian multiple access channel with an energy harvester.
//!
//! Transmitter `i` reaches the information receiver through gain `h1i` and the
//! energy harvester (EH) through gain `h2i`. Both outputs see unit-variance
//! Gaussian noise. All SNRs are `h_ji^2 * p_i`.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed on the unit-norm condition so that configs built from SNRs
/// survive rounding.
const NORM_SLACK: f64 = 1e-12;

/// Gains, power budgets and noise law of one channel instance.
///
/// Immutable once built; the constructor rejects configurations violating
/// `h1i^2 + h2i^2 <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelConfig {
    h11: f64,
    h12: f64,
    h21: f64,
    h22: f64,
    p1: f64,
    p2: f64,
    noise_correlation: f64,
    feedback_delay: u32,
}

impl ChannelConfig {
    /// Builds a config from gains and powers with independent noises.
    pub fn new(h11: f64, h12: f64, h21: f64, h22: f64, p1: f64, p2: f64) -> Result<Self> {
        Self::with_noise_correlation(h11, h12, h21, h22, p1, p2, 0.0)
    }

    pub fn with_noise_correlation(
        h11: f64,
        h12: f64,
        h21: f64,
        h22: f64,
        p1: f64,
        p2: f64,
        noise_correlation: f64,
    ) -> Result<Self> {
        let cfg = ChannelConfig {
            h11,
            h12,
            h21,
            h22,
            p1,
            p2,
            noise_correlation,
            feedback_delay: 1,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Builds the config whose SNRs are `(snr11, snr12, snr21, snr22)`.
    ///
    /// Each transmitter's gains saturate the unit-norm budget, so
    /// `p_i = snr_1i + snr_2i`. A transmitter with both SNRs zero gets zero
    /// gains and zero power.
    pub fn from_snr(snr11: f64, snr12: f64, snr21: f64, snr22: f64) -> Result<Self> {
        for (name, s) in [("snr11", snr11), ("snr12", snr12), ("snr21", snr21), ("snr22", snr22)] {
            if !(s.is_finite() && s >= 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be finite and nonnegative, got {s}"
                )));
            }
        }
        let split = |to_rx: f64, to_eh: f64| -> (f64, f64, f64) {
            let p = to_rx + to_eh;
            if p == 0.0 {
                (0.0, 0.0, 0.0)
            } else {
                ((to_rx / p).sqrt(), (to_eh / p).sqrt(), p)
            }
        };
        let (h11, h21, p1) = split(snr11, snr21);
        let (h12, h22, p2) = split(snr12, snr22);
        Self::new(h11, h12, h21, h22, p1, p2)
    }

    /// Symmetric channel with every SNR equal to `snr`.
    pub fn symmetric(snr: f64) -> Result<Self> {
        Self::from_snr(snr, snr, snr, snr)
    }

    fn validate(&self) -> Result<()> {
        let all = [
            ("h11", self.h11),
            ("h12", self.h12),
            ("h21", self.h21),
            ("h22", self.h22),
            ("p1", self.p1),
            ("p2", self.p2),
        ];
        for (name, v) in all {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be finite and nonnegative, got {v}"
                )));
            }
        }
        for (i, (a, b)) in [(self.h11, self.h21), (self.h12, self.h22)].into_iter().enumerate() {
            let norm = a * a + b * b;
            if norm > 1.0 + NORM_SLACK {
                return Err(Error::InvalidConfig(format!(
                    "gains of transmitter {} have squared norm {norm} > 1",
                    i + 1
                )));
            }
        }
        if !(self.noise_correlation.is_finite() && self.noise_correlation.abs() <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "noise_correlation must lie in [-1, 1], got {}",
                self.noise_correlation
            )));
        }
        Ok(())
    }

    /// Gain from transmitter `i` to output `j` (receiver is 1, EH is 2).
    ///
    /// # Panics
    ///
    /// Panics if `j` or `i` is not 1 or 2.
    pub fn gain(&self, j: usize, i: usize) -> f64 {
        match (j, i) {
            (1, 1) => self.h11,
            (1, 2) => self.h12,
            (2, 1) => self.h21,
            (2, 2) => self.h22,
            _ => panic!("gain index ({j},{i}) out of range"),
        }
    }

    /// Power budget of transmitter `i`.
    ///
    /// # Panics
    ///
    /// Panics if `i` is not 1 or 2.
    pub fn power(&self, i: usize) -> f64 {
        match i {
            1 => self.p1,
            2 => self.p2,
            _ => panic!("transmitter index {i} out of range"),
        }
    }

    pub fn snr(&self, j: usize, i: usize) -> f64 {
        let h = self.gain(j, i);
        h * h * self.power(i)
    }

    pub fn snr11(&self) -> f64 {
        self.snr(1, 1)
    }

    pub fn snr12(&self) -> f64 {
        self.snr(1, 2)
    }

    pub fn snr21(&self) -> f64 {
        self.snr(2, 1)
    }

    pub fn snr22(&self) -> f64 {
        self.snr(2, 2)
    }

    pub fn noise_correlation(&self) -> f64 {
        self.noise_correlation
    }

    pub fn feedback_delay(&self) -> u32 {
        self.feedback_delay
    }

    /// Returns a copy with a different receiver/EH noise correlation.
    pub fn with_correlation(mut self, noise_correlation: f64) -> Result<Self> {
        self.noise_correlation = noise_correlation;
        self.validate()?;
        Ok(self)
    }

    /// Largest energy rate the EH can see: both transmitters at full power
    /// with fully correlated inputs.
    pub fn max_energy_rate(&self) -> f64 {
        let (s21, s22) = (self.snr21(), self.snr22());
        1.0 + s21 + s22 + 2.0 * (s21 * s22).sqrt()
    }

    /// One channel use with explicit noise realizations.
    pub fn step(&self, x1: f64, x2: f64, z: f64, q: f64) -> ChannelUse {
        ChannelUse {
            x1,
            x2,
            y1: self.h11 * x1 + self.h12 * x2 + z,
            y2: self.h21 * x1 + self.h22 * x2 + q,
            z,
            q,
        }
    }

    /// Draws a `(z, q)` pair of unit-variance Gaussians with the configured
    /// correlation.
    pub fn sample_noise<R: Rng + ?Sized>(&self, rng: &mut R) -> (f64, f64) {
        let z: f64 = rng.sample(StandardNormal);
        let v: f64 = rng.sample(StandardNormal);
        let c = self.noise_correlation;
        (z, c * z + (1.0 - c * c).sqrt() * v)
    }

    /// Serializes to the flat `key = value` text format.
    pub fn to_kv_string(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.kv_pairs() {
            // `{:?}` on f64 prints the shortest round-tripping decimal
            let _ = writeln!(out, "{k} = {v:?}");
        }
        out
    }

    fn kv_pairs(&self) -> [(&'static str, f64); 7] {
        [
            ("h11", self.h11),
            ("h12", self.h12),
            ("h21", self.h21),
            ("h22", self.h22),
            ("p1", self.p1),
            ("p2", self.p2),
            ("noise_correlation", self.noise_correlation),
        ]
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        std::fs::read_to_string(path)?.parse()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_kv_string())?;
        Ok(())
    }
}

impl FromStr for ChannelConfig {
    type Err = Error;

    /// Parses `key = value` lines; `#` starts a comment. All gain and power
    /// keys are required, `noise_correlation` defaults to 0.
    fn from_str(s: &str) -> Result<Self> {
        let mut vals: [Option<f64>; 7] = [None; 7];
        const KEYS: [&str; 7] = ["h11", "h12", "h21", "h22", "p1", "p2", "noise_correlation"];
        for (lineno, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .or_else(|| line.split_once(':'))
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", lineno + 1)))?;
            let key = key.trim();
            let slot = KEYS
                .iter()
                .position(|k| *k == key)
                .ok_or_else(|| Error::Parse(format!("line {}: unknown key `{key}`", lineno + 1)))?;
            if vals[slot].is_some() {
                return Err(Error::Parse(format!("line {}: duplicate key `{key}`", lineno + 1)));
            }
            let v: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: `{}` is not a number", lineno + 1, value.trim())))?;
            vals[slot] = Some(v);
        }
        let get = |i: usize| vals[i].ok_or_else(|| Error::Parse(format!("missing key `{}`", KEYS[i])));
        Self::with_noise_correlation(
            get(0)?,
            get(1)?,
            get(2)?,
            get(3)?,
            get(4)?,
            get(5)?,
            vals[6].unwrap_or(0.0),
        )
    }
}

/// Inputs, outputs and noise of a single channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelUse {
    pub x1: f64,
    pub x2: f64,
    pub y1: f64,
    pub y2: f64,
    pub z: f64,
    pub q: f64,
}
