use std::io::Write;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::channel::ChannelUse;
use crate::error::Result;
use crate::output::fmt_f64;

/// One feedback use `t >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub t: usize,
    pub x1: f64,
    pub x2: f64,
    pub y1: f64,
    pub y2: f64,
    pub u1: f64,
    pub u2: f64,
}

/// Everything observed during one block.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionTrace {
    init: [ChannelUse; 3],
    steps: Vec<TraceStep>,
    sent: [BigUint; 2],
    decoded: [BigUint; 2],
    consumed_energy: [f64; 2],
}

/// JSON-friendly digest of a trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceSummary {
    pub n: usize,
    pub sent: [String; 2],
    pub decoded: [String; 2],
    pub error: bool,
    pub b_hat: f64,
    pub consumed_energy: [f64; 2],
}

impl TransmissionTrace {
    pub fn new(
        init: [ChannelUse; 3],
        steps: Vec<TraceStep>,
        sent: [BigUint; 2],
        decoded: [BigUint; 2],
        consumed_energy: [f64; 2],
    ) -> Self {
        TransmissionTrace {
            init,
            steps,
            sent,
            decoded,
            consumed_energy,
        }
    }

    pub fn init_uses(&self) -> &[ChannelUse; 3] {
        &self.init
    }

    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    pub fn sent(&self) -> &[BigUint; 2] {
        &self.sent
    }

    pub fn decoded(&self) -> &[BigUint; 2] {
        &self.decoded
    }

    /// Whether either message was decoded wrongly.
    pub fn error(&self) -> bool {
        self.sent != self.decoded
    }

    /// Empirical energy rate `(1/n) sum y2^2` over the feedback uses.
    pub fn b_hat(&self) -> f64 {
        let n = self.steps.len();
        if n == 0 {
            return 0.0;
        }
        self.steps.iter().map(|s| s.y2 * s.y2).sum::<f64>() / n as f64
    }

    /// `sum x_i^2` over all `n + 3` uses, per transmitter.
    pub fn consumed_energy(&self) -> [f64; 2] {
        self.consumed_energy
    }

    pub fn summary(&self) -> TraceSummary {
        TraceSummary {
            n: self.steps.len(),
            sent: self.sent.clone().map(|m| m.to_string()),
            decoded: self.decoded.clone().map(|m| m.to_string()),
            error: self.error(),
            b_hat: self.b_hat(),
            consumed_energy: self.consumed_energy,
        }
    }

    /// CSV with columns `t,x1,x2,y1,y2,u1,u2`; initialization uses appear as
    /// `t = -2, -1, 0` with zero IC symbols.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "x1", "x2", "y1", "y2", "u1", "u2"])?;
        for (k, u) in self.init.iter().enumerate() {
            let t = k as i64 - 2;
            w.write_record([
                t.to_string(),
                fmt_f64(u.x1),
                fmt_f64(u.x2),
                fmt_f64(u.y1),
                fmt_f64(u.y2),
                fmt_f64(0.0),
                fmt_f64(0.0),
            ])?;
        }
        for s in &self.steps {
            w.write_record([
                s.t.to_string(),
                fmt_f64(s.x1),
                fmt_f64(s.x2),
                fmt_f64(s.y1),
                fmt_f64(s.y2),
                fmt_f64(s.u1),
                fmt_f64(s.u2),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}
