//! Information-energy capacity regions with and without feedback.

pub mod capacity;
pub mod curves;
pub mod energy_gain;
pub mod roots;
pub mod search;
pub mod time_sharing;

pub use capacity::{
    fb_flat_edge, max_individual_rate, nf_flat_edge, nf_two_user_edge, region_box_fb, region_box_nf, rho_min,
    strongest_information_user, sum_capacity_fb, sum_capacity_nf, xi, OperatingPoint, RateTriplet, RegionBox,
};
pub use curves::{energy_grid, gain_ratio_curve, snr_grid, sum_capacity_curve};
pub use energy_gain::{
    b_fb_at_nf_sum_capacity, b_fb_rate_residual, b_nf_at_nf_sum_capacity, feedback_gain_ratio,
    feedback_gain_ratio_from_ratios, gain_ratio_limit_high_snr, gamma, AsymmetryRatios,
};
pub use roots::{phi, solve_rho_alpha, solve_rho_star, RHO_TOLERANCE};
pub use search::{contains, pareto_filter, sample_boundary, undominated, BoundarySample, RegionGrid};
pub use time_sharing::time_sharing_sum_rate;
