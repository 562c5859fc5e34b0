//! Power-splitting feedback encoders, the tracking receiver and the block
//! driver that wires them to the channel.

use num_bigint::{BigUint, RandBigInt};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::codebook::MessageSet;
use super::fixed::Fixed;
use super::params::SchemeParams;
use super::schedule::{Schedule, StepGains};
use super::trace::{TraceStep, TransmissionTrace};
use crate::channel::{ChannelConfig, ChannelUse};
use crate::error::{Error, Result};

/// Extra fractional bits beyond the finest scale the block resolves.
const GUARD_BITS: u32 = 128;

/// Independent random streams of one trial.
#[derive(Debug, Clone)]
pub struct TrialStreams {
    pub messages: ChaCha8Rng,
    pub noise: ChaCha8Rng,
    /// Shared common-randomness sequence known to every terminal.
    pub common: ChaCha8Rng,
}

impl TrialStreams {
    /// Stream `4 * trial + k` of the ChaCha8 generator keyed by `seed`, with
    /// `k = 0, 1, 2` for messages, channel noise and common randomness.
    pub fn new(seed: u64, trial: u64) -> Self {
        let stream = |k: u64| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial.wrapping_mul(4).wrapping_add(k));
            rng
        };
        TrialStreams {
            messages: stream(0),
            noise: stream(1),
            common: stream(2),
        }
    }
}

/// Result of the three initialization uses.
#[derive(Debug, Clone, PartialEq)]
pub struct InitPhase {
    /// Noise combinations `sqrt(1-rho) Z_{-i} + sqrt(rho) Z_0` each
    /// transmitter describes afterwards.
    pub xi: [Fixed; 2],
    /// Uses `t = -2, -1, 0`.
    pub uses: [ChannelUse; 3],
    /// Receiver outputs of those uses at full precision.
    pub outputs: [Fixed; 3],
}

/// Receiver estimates of the two described noise terms.
#[derive(Debug, Clone, PartialEq)]
pub struct DecoderState {
    pub mean: [Fixed; 2],
    /// Channel uses absorbed so far.
    pub t: usize,
}

/// One transmitter's state: its message point, the noise it describes and
/// its mirror of the receiver's estimate of that noise.
#[derive(Debug, Clone, PartialEq)]
pub struct EncoderState {
    pub user: usize,
    pub theta: Fixed,
    pub xi: Fixed,
    pub mirror: Fixed,
}

/// A fully prepared scheme instance: schedule, codebooks and precision.
#[derive(Debug, Clone)]
pub struct Scheme {
    params: SchemeParams,
    rho: f64,
    schedule: Schedule,
    sets: [MessageSet; 2],
    frac: u32,
    nic: [f64; 2],
    common_leak: f64,
}

fn correction_term(sigma_log2: f64, correction: f64, y_prime: f64, frac: u32) -> Fixed {
    let e = sigma_log2.floor();
    let m = correction * y_prime * (sigma_log2 - e).exp2();
    Fixed::from_scaled(m, e as i64, frac)
}

impl Scheme {
    pub fn new(params: SchemeParams) -> Result<Self> {
        params.validate()?;
        let schedule = Schedule::new(&params)?;
        let cfg = &params.cfg;
        let sets = [
            MessageSet::new(params.r1, params.n, cfg.power(1)),
            MessageSet::new(params.r2, params.n, cfg.power(2)),
        ];
        let finest = (1..=2)
            .map(|i| {
                let resolved = -schedule.terminal().log2_sigma[i - 1];
                let spacing = sets[i - 1].size().bits() as f64;
                resolved.max(spacing)
            })
            .fold(0.0f64, f64::max);
        let frac = finest.ceil() as u32 + GUARD_BITS;
        let nic = [
            ((1.0 - params.beta1) * cfg.power(1)).sqrt(),
            ((1.0 - params.beta2) * cfg.power(2)).sqrt(),
        ];
        Ok(Scheme {
            rho: params.rho_star(),
            common_leak: cfg.gain(1, 1) * nic[0] + cfg.gain(1, 2) * nic[1],
            params,
            schedule,
            sets,
            frac,
            nic,
        })
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn cfg(&self) -> &ChannelConfig {
        &self.params.cfg
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }

    pub fn message_set(&self, i: usize) -> &MessageSet {
        &self.sets[i - 1]
    }

    /// Fractional bits of the block state.
    pub fn frac_bits(&self) -> u32 {
        self.frac
    }

    fn weights(&self) -> (f64, f64) {
        ((1.0 - self.rho).sqrt(), self.rho.sqrt())
    }

    pub fn message_points(&self, messages: &[BigUint; 2]) -> Result<[Fixed; 2]> {
        Ok([
            self.sets[0].point(&messages[0], self.frac)?,
            self.sets[1].point(&messages[1], self.frac)?,
        ])
    }

    /// Uses `t = -2, -1, 0` carry `(0, theta2)`, `(theta1, 0)`, `(0, 0)`;
    /// `noise[k]` is the `(z, q)` pair of use `t = k - 2`.
    pub fn init_phase(&self, theta: &[Fixed; 2], noise: [(f64, f64); 3]) -> InitPhase {
        let cfg = &self.params.cfg;
        let frac = self.frac;
        let (a, b) = self.weights();
        let th = [theta[0].to_f64(), theta[1].to_f64()];
        let uses = [
            cfg.step(0.0, th[1], noise[0].0, noise[0].1),
            cfg.step(th[0], 0.0, noise[1].0, noise[1].1),
            cfg.step(0.0, 0.0, noise[2].0, noise[2].1),
        ];
        let z = noise.map(|(z, _)| Fixed::from_f64(z, frac));
        let outputs = [
            &theta[1].mul_f64(cfg.gain(1, 2)) + &z[0],
            &theta[0].mul_f64(cfg.gain(1, 1)) + &z[1],
            z[2].clone(),
        ];
        let shared = z[2].mul_f64(b);
        // transmitter i learns Z_{-i} from the fed-back output
        let xi = [&z[1].mul_f64(a) + &shared, &z[0].mul_f64(a) + &shared];
        InitPhase { xi, uses, outputs }
    }

    pub fn encoder(&self, user: usize, theta: Fixed, xi: Fixed) -> EncoderState {
        EncoderState {
            user,
            theta,
            xi,
            mirror: Fixed::zero(self.frac),
        }
    }

    pub fn decoder(&self) -> DecoderState {
        DecoderState {
            mean: [Fixed::zero(self.frac), Fixed::zero(self.frac)],
            t: 0,
        }
    }

    /// IC symbol `u` and channel input `x` of `enc` at use `t >= 1`.
    pub fn encode_step(&self, enc: &EncoderState, t: usize, w: f64) -> (f64, f64) {
        let i = enc.user - 1;
        let st = self.schedule.step(t);
        let u = if st.amplitude[i] == 0.0 {
            0.0
        } else {
            let (log2_gain, sign) = st.log2_amplification(enc.user);
            let e = log2_gain.floor();
            let diff = &enc.xi - &enc.mirror;
            sign * diff.to_f64_scaled(e as i64) * (log2_gain - e).exp2()
        };
        (u, u + self.nic[i] * w)
    }

    /// Receiver output with the common-randomness contribution removed.
    pub fn strip_common(&self, y1: f64, w: f64) -> f64 {
        y1 - self.common_leak * w
    }

    fn correction(&self, st: &StepGains, i: usize, y_prime: f64) -> Option<Fixed> {
        let k = st.correction[i];
        (k != 0.0).then(|| correction_term(st.prior.log2_sigma[i], k, y_prime, self.frac))
    }

    /// Posterior-mean update of the receiver after use `dec.t + 1`.
    pub fn receiver_update(&self, dec: &mut DecoderState, y1: f64, w: f64) {
        let t = dec.t + 1;
        let st = self.schedule.step(t);
        let y_prime = self.strip_common(y1, w);
        for i in 0..2 {
            if let Some(c) = self.correction(st, i, y_prime) {
                dec.mean[i] += &c;
            }
        }
        dec.t = t;
    }

    /// The same update as [`Scheme::receiver_update`], restricted to the
    /// estimate transmitter `enc.user` needs; fed by the perfect feedback link.
    pub fn mirror_update(&self, enc: &mut EncoderState, t: usize, y1: f64, w: f64) {
        let st = self.schedule.step(t);
        let y_prime = self.strip_common(y1, w);
        if let Some(c) = self.correction(st, enc.user - 1, y_prime) {
            enc.mirror += &c;
        }
    }

    /// Reconstructed message point of transmitter `i`.
    pub fn theta_estimate(&self, dec: &DecoderState, init_outputs: &[Fixed; 3], i: usize) -> Result<Fixed> {
        let (a, b) = self.weights();
        if a == 0.0 {
            return Err(Error::DegenerateCorrelation);
        }
        let own = &init_outputs[2 - i];
        let v = &(&own.mul_f64(a) + &init_outputs[2].mul_f64(b)) - &dec.mean[i - 1];
        let scale = Fixed::from_f64(a, self.frac).mul_f64(self.params.cfg.gain(1, i));
        v.checked_div(&scale)
            .ok_or(Error::DegenerateSnr("receiver gain is zero"))
    }

    /// Nearest-neighbour decisions for both messages.
    pub fn decode(&self, dec: &DecoderState, init_outputs: &[Fixed; 3]) -> Result<[BigUint; 2]> {
        let mut out = [BigUint::from(1u32), BigUint::from(1u32)];
        for i in 1..=2 {
            let set = &self.sets[i - 1];
            if *set.size() == BigUint::from(1u32) {
                continue;
            }
            out[i - 1] = set.nearest(&self.theta_estimate(dec, init_outputs, i)?);
        }
        Ok(out)
    }

    /// Uniformly drawn message pair.
    pub fn draw_messages<R: Rng + ?Sized>(&self, rng: &mut R) -> [BigUint; 2] {
        [
            rng.gen_biguint_below(self.sets[0].size()) + 1u32,
            rng.gen_biguint_below(self.sets[1].size()) + 1u32,
        ]
    }

    /// Runs trial `trial` of the seeded experiment.
    pub fn run_trial(&self, trial: u64) -> Result<TransmissionTrace> {
        let mut streams = TrialStreams::new(self.params.seed, trial);
        let messages = self.draw_messages(&mut streams.messages);
        self.run_block(messages, &mut streams)
    }

    /// Initialization, `n` feedback uses and decoding of one block.
    pub fn run_block(&self, messages: [BigUint; 2], streams: &mut TrialStreams) -> Result<TransmissionTrace> {
        let cfg = self.params.cfg;
        let theta = self.message_points(&messages)?;
        let noise = [
            cfg.sample_noise(&mut streams.noise),
            cfg.sample_noise(&mut streams.noise),
            cfg.sample_noise(&mut streams.noise),
        ];
        let init = self.init_phase(&theta, noise);
        let [theta1, theta2] = theta;
        let [xi1, xi2] = init.xi.clone();
        let mut encoders = [self.encoder(1, theta1, xi1), self.encoder(2, theta2, xi2)];
        let mut dec = self.decoder();

        let mut energy = [0.0f64; 2];
        for u in &init.uses {
            energy[0] += u.x1 * u.x1;
            energy[1] += u.x2 * u.x2;
        }
        let mut steps = Vec::with_capacity(self.params.n);
        for t in 1..=self.params.n {
            let w: f64 = streams.common.sample(StandardNormal);
            let (u1, x1) = self.encode_step(&encoders[0], t, w);
            let (u2, x2) = self.encode_step(&encoders[1], t, w);
            let (z, q) = cfg.sample_noise(&mut streams.noise);
            let ch = cfg.step(x1, x2, z, q);
            energy[0] += x1 * x1;
            energy[1] += x2 * x2;
            self.receiver_update(&mut dec, ch.y1, w);
            for enc in encoders.iter_mut() {
                self.mirror_update(enc, t, ch.y1, w);
            }
            debug_assert!(encoders.iter().all(|e| e.mirror == dec.mean[e.user - 1]));
            steps.push(TraceStep {
                t,
                x1,
                x2,
                y1: ch.y1,
                y2: ch.y2,
                u1,
                u2,
            });
        }
        let decoded = self.decode(&dec, &init.outputs)?;
        Ok(TransmissionTrace::new(init.uses, steps, messages, decoded, energy))
    }
}
