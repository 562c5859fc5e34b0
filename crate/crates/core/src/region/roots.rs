//! Sum-rate optimal input correlation.
//!
//! With effective IC SNRs `a = beta1*snr11` and `c = beta2*snr12`, the
//! correlation that makes the two individual-rate bounds add up to the
//! sum-rate bound is the root in (0, 1) of
//!
//! ```text
//! phi(x) = 1 + a + c + 2x*sqrt(a*c) - (1 + a*(1 - x^2)) * (1 + c*(1 - x^2))
//! ```
//!
//! `phi(0) = -a*c < 0` and `phi(1) = (sqrt(a) + sqrt(c))^2 > 0`, so plain
//! bisection always converges.

use crate::channel::ChannelConfig;

/// Guaranteed absolute accuracy of the correlation solvers.
pub const RHO_TOLERANCE: f64 = 1e-12;

pub(crate) fn phi_core(a: f64, c: f64, x: f64) -> f64 {
    let shrink = 1.0 - x * x;
    1.0 + a + c + 2.0 * x * (a * c).sqrt() - (1.0 + a * shrink) * (1.0 + c * shrink)
}

/// Bisection on a bracket `[lo, hi]` with `f(lo) < 0 < f(hi)`.
///
/// Halves until the midpoint stops moving, so the returned point is within
/// one ulp of a sign change; this is far inside [`RHO_TOLERANCE`].
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    debug_assert!(lo <= hi);
    for _ in 0..2100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            return mid;
        }
        if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Root in (0, 1) of `phi_core(a, c, .)`, or 0 when either effective SNR is 0.
pub(crate) fn correlation_root(a: f64, c: f64) -> f64 {
    if !(a > 0.0 && c > 0.0) {
        return 0.0;
    }
    bisect(|x| phi_core(a, c, x), 0.0, 1.0)
}

/// Difference between both sides of the sum-rate optimal correlation equation.
pub fn phi(cfg: &ChannelConfig, beta1: f64, beta2: f64, rho: f64) -> f64 {
    phi_core(beta1 * cfg.snr11(), beta2 * cfg.snr12(), rho)
}

/// Sum-rate optimal correlation between the information-carrying signals for
/// the power split `(beta1, beta2)`; zero when a split or receiver SNR is 0.
pub fn solve_rho_star(cfg: &ChannelConfig, beta1: f64, beta2: f64) -> f64 {
    correlation_root(beta1 * cfg.snr11(), beta2 * cfg.snr12())
}

/// Correlation for the rate-splitting variant where transmitter 1 spends a
/// fraction `alpha1` of its information power on a non-feedback sub-codeword
/// that is treated as noise while the feedback part is decoded.
///
/// Dividing through by `1 + alpha1*beta1*snr11` turns the equation into the
/// same form as [`phi`] with reduced effective SNRs.
pub fn solve_rho_alpha(cfg: &ChannelConfig, alpha1: f64, beta1: f64, beta2: f64) -> f64 {
    if beta1 == 0.0 || beta2 == 0.0 {
        return 0.0;
    }
    if alpha1 >= 1.0 {
        return solve_rho_star(cfg, beta1, beta2);
    }
    let (a, c) = rho_alpha_effective_snrs(cfg, alpha1, beta1, beta2);
    correlation_root(a, c)
}

pub(crate) fn rho_alpha_effective_snrs(cfg: &ChannelConfig, alpha1: f64, beta1: f64, beta2: f64) -> (f64, f64) {
    let interference = 1.0 + alpha1 * beta1 * cfg.snr11();
    (
        (1.0 - alpha1) * beta1 * cfg.snr11() / interference,
        beta2 * cfg.snr12() / interference,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg10() -> ChannelConfig {
        ChannelConfig::symmetric(10.0).unwrap()
    }

    #[test]
    fn phi_examples() {
        let cfg = cfg10();
        assert!((phi(&cfg, 1.0, 1.0, 0.0) - (-100.0)).abs() < 1e-9);
        // rho = 1 collapses the product term
        let v = phi(&cfg, 0.3, 0.7, 1.0);
        let expect = 0.3 * 10.0 + 0.7 * 10.0 + 2.0 * (0.3f64 * 10.0 * 0.7 * 10.0).sqrt();
        assert!((v - expect).abs() < 1e-12);
        assert_eq!(phi(&cfg, 0.0, 0.0, 0.0), 0.0);
    }

    #[test]
    fn rho_star_degenerate_is_zero() {
        let cfg = cfg10();
        assert_eq!(solve_rho_star(&cfg, 0.0, 1.0), 0.0);
        assert_eq!(solve_rho_star(&cfg, 1.0, 0.0), 0.0);
        let silent = ChannelConfig::from_snr(0.0, 10.0, 10.0, 10.0).unwrap();
        assert_eq!(solve_rho_star(&silent, 1.0, 1.0), 0.0);
    }

    #[test]
    fn rho_star_symmetric_value() {
        let cfg = cfg10();
        let r = solve_rho_star(&cfg, 1.0, 1.0);
        assert!((r - 0.7116).abs() < 1e-4, "{r}");
        assert!(phi(&cfg, 1.0, 1.0, r).abs() < 1e-9);
        assert!(phi(&cfg, 1.0, 1.0, r - 1e-6) < 0.0);
        assert!(phi(&cfg, 1.0, 1.0, r + 1e-6) > 0.0);
    }

    #[test]
    fn rho_star_swap_symmetric() {
        let cfg = cfg10();
        for (b1, b2) in [(0.2, 0.9), (0.5, 0.6), (1.0, 0.1)] {
            let a = solve_rho_star(&cfg, b1, b2);
            let b = solve_rho_star(&cfg, b2, b1);
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn rho_alpha_branches() {
        let cfg = cfg10();
        let star = solve_rho_star(&cfg, 0.8, 0.6);
        assert_eq!(solve_rho_alpha(&cfg, 0.0, 0.8, 0.6), star);
        assert_eq!(solve_rho_alpha(&cfg, 1.0, 0.8, 0.6), star);
        assert_eq!(solve_rho_alpha(&cfg, 0.5, 0.0, 0.6), 0.0);
        assert_eq!(solve_rho_alpha(&cfg, 0.5, 0.8, 0.0), 0.0);
    }

    #[test]
    fn rho_alpha_residual() {
        // Evaluate the undivided equation directly.
        let (s11, s12) = (10.0f64, 10.0f64);
        let (b1, b2, al) = (1.0f64, 1.0f64, 0.5f64);
        let x = solve_rho_alpha(&cfg10(), al, b1, b2);
        assert!(x > 0.0 && x < 1.0);
        let d = 1.0 + al * b1 * s11;
        let lhs = 1.0 + ((1.0 - al) * b1 * s11 + b2 * s12 + 2.0 * x * (b1 * b2 * (1.0 - al) * s11 * s12).sqrt()) / d;
        let rhs = (1.0 + (1.0 - al) * b1 * s11 / d * (1.0 - x * x)) * (1.0 + b2 * s12 / d * (1.0 - x * x));
        assert!((lhs - rhs).abs() < 1e-9, "{lhs} {rhs}");
    }

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0);
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }
}
