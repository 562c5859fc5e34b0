//! Feedback coding scheme: message points, noise description through
//! feedback, posterior tracking at the receiver and nearest-neighbour
//! decoding, with a common-randomness energy component.

pub mod analysis;
pub mod codebook;
pub mod fixed;
pub mod params;
pub mod schedule;
pub mod scheme;
pub mod trace;

pub use analysis::{error_bound, expected_energy_rate, joint_error_bound, q_function};
pub use codebook::{message_point, MessageSet};
pub use fixed::Fixed;
pub use params::{message_set_size, SchemeParams};
pub use schedule::{PosteriorCovariance, Schedule, StepGains};
pub use scheme::{DecoderState, EncoderState, InitPhase, Scheme, TrialStreams};
pub use trace::{TraceStep, TraceSummary, TransmissionTrace};
