//! Simultaneous information and energy transmission over the two-user
//! Gaussian multiple access channel with an energy harvester.
//!
//! * [`region`]: closed-form capacity regions, sum-capacities and the
//!   energy gain of feedback.
//! * [`coder`]: an executable feedback coding scheme.
//! * [`mc`]: Monte Carlo estimates for the scheme.

pub mod channel;
pub mod coder;
mod error;
pub mod mc;
pub mod output;
pub mod region;

pub use channel::{ChannelConfig, ChannelUse};
pub use coder::{SchemeParams, TransmissionTrace};
pub use error::{Error, Result};
pub use mc::{SimConfig, SimReport};
pub use output::Table;
pub use region::{AsymmetryRatios, BoundarySample, OperatingPoint, RateTriplet, RegionBox};
