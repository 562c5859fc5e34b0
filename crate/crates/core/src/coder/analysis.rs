//! Closed-form performance of the feedback scheme.

use super::fixed::log2_big;
use super::params::SchemeParams;

/// Gaussian tail `Q(x) = P(N(0,1) > x)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

/// Upper bounds on the per-transmitter decoding error probability.
pub fn error_bound(params: &SchemeParams) -> [f64; 2] {
    let rho = params.rho_star();
    [1, 2].map(|i| {
        let snr = params.cfg.snr(1, i);
        // log2 of the Q-function argument; sigma = 2^(-n * rate_limit)
        let log2_arg = 0.5 * snr.log2() + 0.5 * (1.0 - rho).log2() - log2_big(&params.message_set_size(i))
            + params.n as f64 * params.rate_limit(i);
        2.0 * q_function(log2_arg.min(64.0).exp2())
    })
}

/// Bound on the probability that either message is decoded wrongly.
pub fn joint_error_bound(params: &SchemeParams) -> f64 {
    let [a, b] = error_bound(params);
    (a + b).min(1.0)
}

/// Mean energy rate at the EH when the IC symbols have correlation `rho`.
pub fn expected_energy_rate(params: &SchemeParams, rho: f64) -> f64 {
    let cfg = &params.cfg;
    let (s21, s22) = (cfg.snr21(), cfg.snr22());
    let (b1, b2) = (params.beta1, params.beta2);
    1.0 + s21 + s22 + 2.0 * rho * (b1 * s21 * b2 * s22).sqrt() + 2.0 * ((1.0 - b1) * s21 * (1.0 - b2) * s22).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::ChannelConfig;
    use crate::region::{region_box_fb, OperatingPoint};

    fn params(rates: [f64; 2], betas: [f64; 2], n: usize) -> SchemeParams {
        SchemeParams::new(ChannelConfig::symmetric(10.0).unwrap(), n, rates, betas, 1).unwrap()
    }

    #[test]
    fn q_function_values() {
        assert_eq!(q_function(0.0), 0.5);
        assert!((q_function(1.0) - 0.158_655_253_931_457_05).abs() < 1e-15);
        assert_eq!(q_function(f64::INFINITY), 0.0);
    }

    #[test]
    fn bound_is_tiny_well_below_the_limit() {
        let p = params([0.5, 0.5], [1.0, 1.0], 1000);
        let [a, b] = error_bound(&p);
        assert!(a < 1e-6 && b < 1e-6);
    }

    #[test]
    fn bound_grows_with_rate() {
        let mut prev = 0.0;
        for r in [0.5, 1.0, 1.2, 1.28, 1.3, 1.4] {
            let b = error_bound(&params([r, r], [1.0, 1.0], 400))[0];
            assert!(b >= prev, "{r}");
            prev = b;
        }
        assert!(prev > 0.5);
    }

    #[test]
    fn single_message_bound() {
        let p = params([0.0, 0.0], [1.0, 1.0], 5);
        let rho = p.rho_star();
        let sigma = (-(5.0) * p.rate_limit(1)).exp2();
        let expect = 2.0 * q_function(10f64.sqrt() * (1.0 - rho).sqrt() / sigma);
        assert!((error_bound(&p)[0] - expect).abs() < 1e-15);
    }

    #[test]
    fn energy_rate_values() {
        let p = params([0.0, 0.0], [0.0, 0.0], 5);
        assert_eq!(expected_energy_rate(&p, 0.3), p.cfg.max_energy_rate());
        let p = params([0.0, 0.0], [1.0, 1.0], 5);
        let b = expected_energy_rate(&p, p.rho_star());
        assert!((b - 35.23).abs() < 0.01);
        let p = params([0.0, 0.0], [0.3, 0.8], 5);
        let op = OperatingPoint::new(0.3, 0.8, 0.45).unwrap();
        assert!((expected_energy_rate(&p, 0.45) - region_box_fb(&p.cfg, op).b_max).abs() < 1e-12);
    }
}
