//! Data-independent gain and covariance schedule of the feedback scheme.
//!
//! The posterior error covariance of the described noise pair is carried as
//! per-transmitter standard deviations in the log domain plus a correlation
//! coefficient, so it stays representable long after the variances leave
//! the `f64` range.

use serde::{Deserialize, Serialize};

use super::params::SchemeParams;
use crate::error::{Error, Result};

/// Posterior error covariance `diag(s) [[1, c], [c, 1]] diag(s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PosteriorCovariance {
    pub log2_sigma: [f64; 2],
    pub corr: f64,
}

impl PosteriorCovariance {
    pub fn log2_variance(&self, i: usize) -> f64 {
        2.0 * self.log2_sigma[i - 1]
    }

    pub fn log2_determinant(&self) -> f64 {
        2.0 * (self.log2_sigma[0] + self.log2_sigma[1]) + (1.0 - self.corr * self.corr).log2()
    }

    /// The covariance matrix itself; underflows once the variances leave the
    /// `f64` range.
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        let s = [self.log2_sigma[0].exp2(), self.log2_sigma[1].exp2()];
        [
            [s[0] * s[0], self.corr * s[0] * s[1]],
            [self.corr * s[0] * s[1], s[1] * s[1]],
        ]
    }
}

/// Everything the terminals need at one channel use `t >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepGains {
    /// Covariance before the use.
    pub prior: PosteriorCovariance,
    /// Signed amplitude mapping the normalized error to the IC symbol.
    pub amplitude: [f64; 2],
    /// Weights of the normalized errors in the observation.
    pub observation: [f64; 2],
    /// Normalized estimate correction per unit observation.
    pub correction: [f64; 2],
}

impl StepGains {
    /// Signed log2 magnitude of the amplification applied to `Xi - Xi_hat`.
    pub fn log2_amplification(&self, i: usize) -> (f64, f64) {
        let a = self.amplitude[i - 1];
        (a.abs().log2() - self.prior.log2_sigma[i - 1], a.signum())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    steps: Vec<StepGains>,
    terminal: PosteriorCovariance,
}

impl Schedule {
    pub fn new(params: &SchemeParams) -> Result<Self> {
        let cfg = &params.cfg;
        let ic = [
            (params.beta1 * cfg.power(1)).sqrt(),
            (params.beta2 * cfg.power(2)).sqrt(),
        ];
        let h = [cfg.gain(1, 1), cfg.gain(1, 2)];
        let mut cov = PosteriorCovariance {
            log2_sigma: [0.0, 0.0],
            corr: params.rho_star(),
        };
        let mut steps = Vec::with_capacity(params.n);
        for t in 1..=params.n {
            // keep the IC symbols positively correlated
            let sign2 = if cov.corr < 0.0 { -1.0 } else { 1.0 };
            let amplitude = [ic[0], sign2 * ic[1]];
            let g = [h[0] * amplitude[0], h[1] * amplitude[1]];
            let r = cov.corr;
            let rg = [g[0] + r * g[1], r * g[0] + g[1]];
            let d = 1.0 + g[0] * rg[0] + g[1] * rg[1];
            let correction = [rg[0] / d, rg[1] / d];
            // information-form update: no cancellation in the diagonal
            let shrink = 1.0 - r * r;
            let v1 = (1.0 + g[1] * g[1] * shrink) / d;
            let v2 = (1.0 + g[0] * g[0] * shrink) / d;
            let c12 = (r - g[0] * g[1] * shrink) / d;
            for (user, v) in [(1, v1), (2, v2)] {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(Error::Divergence { user, t });
                }
            }
            steps.push(StepGains {
                prior: cov,
                amplitude,
                observation: g,
                correction,
            });
            cov = PosteriorCovariance {
                log2_sigma: [cov.log2_sigma[0] + 0.5 * v1.log2(), cov.log2_sigma[1] + 0.5 * v2.log2()],
                corr: (c12 / (v1 * v2).sqrt()).clamp(-1.0, 1.0),
            };
        }
        Ok(Schedule { steps, terminal: cov })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Gains for channel use `t` (1-based).
    pub fn step(&self, t: usize) -> &StepGains {
        &self.steps[t - 1]
    }

    pub fn steps(&self) -> &[StepGains] {
        &self.steps
    }

    /// Covariance after the last use.
    pub fn terminal(&self) -> PosteriorCovariance {
        self.terminal
    }

    /// Covariance after `t` uses.
    pub fn after(&self, t: usize) -> PosteriorCovariance {
        if t == self.steps.len() {
            self.terminal
        } else {
            self.steps[t].prior
        }
    }

    /// `-(1/n) * 0.5 * log2(variance_i)` after the block: the rate at which
    /// the receiver resolves transmitter `i`'s described noise.
    pub fn resolved_rate(&self, i: usize) -> f64 {
        -self.terminal.log2_sigma[i - 1] / self.steps.len() as f64
    }
}
