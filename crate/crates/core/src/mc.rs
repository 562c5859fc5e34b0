//! Monte Carlo estimates of decoding error, energy outage and energy rate
//! for the feedback scheme.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coder::{expected_energy_rate, joint_error_bound, Scheme, SchemeParams, TransmissionTrace};
use crate::error::{Error, Result};
use crate::output::Table;

/// Relative slack tolerated above the maximum energy rate for `target_b`.
const TARGET_SLACK: f64 = 1e-12;

/// One Monte Carlo experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub params: SchemeParams,
    pub trials: usize,
    /// Energy rate the outage event is measured against.
    pub target_b: f64,
    /// Outage slack: a block is in outage when its energy rate falls below
    /// `target_b - epsilon`.
    pub epsilon: f64,
}

impl SimConfig {
    /// Defaults: `target_b` is the scheme's mean energy rate and `epsilon`
    /// is 1% of it.
    pub fn new(params: SchemeParams, trials: usize, target_b: Option<f64>, epsilon: Option<f64>) -> Result<Self> {
        let mean = expected_energy_rate(&params, params.rho_star());
        let sc = SimConfig {
            params,
            trials,
            target_b: target_b.unwrap_or(mean),
            epsilon: epsilon.unwrap_or(0.01 * mean),
        };
        sc.validate()?;
        Ok(sc)
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.trials == 0 {
            return Err(Error::InvalidParams("at least one trial is required".into()));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "epsilon = {} must be positive",
                self.epsilon
            )));
        }
        let max = self.params.cfg.max_energy_rate();
        if self.target_b.is_nan() || self.target_b > max * (1.0 + TARGET_SLACK) {
            return Err(Error::InfeasibleEnergy { b: self.target_b, max });
        }
        Ok(())
    }
}

/// Aggregated outcome of [`run`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub trials: usize,
    pub n: usize,
    pub seed: u64,
    /// Fraction of blocks with at least one wrongly decoded message.
    pub p_error_hat: f64,
    /// Binomial standard error of `p_error_hat`.
    pub p_error_stderr: f64,
    /// Union bound on the joint error probability.
    pub error_bound: f64,
    /// Fraction of blocks with energy rate below `target_b - epsilon`.
    pub outage_hat: f64,
    pub target_b: f64,
    pub epsilon: f64,
    pub mean_b: f64,
    pub stderr_b: f64,
    /// Mean energy rate predicted for the operating point.
    pub expected_b: f64,
    /// IC-symbol correlation the scheme is designed to hold.
    pub rho_star: f64,
    /// Empirical correlation of `(u1, u2)` across trials at each `t`.
    pub correlation_trace: Vec<f64>,
    /// Mean block energy divided by `n + 1`, per transmitter; at most the
    /// power budget when the block meets its energy constraint.
    pub consumed_power: [f64; 2],
}

#[derive(Debug, Clone)]
struct TrialOutcome {
    error: bool,
    b_hat: f64,
    u: Vec<[f64; 2]>,
    energy: [f64; 2],
}

impl TrialOutcome {
    fn from_trace(tr: &TransmissionTrace) -> Self {
        TrialOutcome {
            error: tr.error(),
            b_hat: tr.b_hat(),
            u: tr.steps().iter().map(|s| [s.u1, s.u2]).collect(),
            energy: tr.consumed_energy(),
        }
    }
}

/// Empirical energy rate of one block.
pub fn empirical_energy_rate(trace: &TransmissionTrace) -> f64 {
    trace.b_hat()
}

/// Normal-approximation standard error of a sample correlation.
pub fn correlation_stderr(rho: f64, trials: usize) -> f64 {
    (1.0 - rho * rho) / (trials as f64).sqrt()
}

/// Pearson correlation from index-ordered sums.
fn pearson(sx: f64, sy: f64, sxx: f64, syy: f64, sxy: f64, count: f64) -> f64 {
    let cov = sxy / count - (sx / count) * (sy / count);
    let vx = sxx / count - (sx / count).powi(2);
    let vy = syy / count - (sy / count).powi(2);
    cov / (vx * vy).sqrt()
}

/// Runs `sc.trials` independent blocks in parallel. Trial `k` draws all its
/// randomness from streams keyed by `(seed, k)` and the outcomes are reduced
/// in trial order, so the report does not depend on the thread count.
pub fn run(sc: &SimConfig) -> Result<SimReport> {
    sc.validate()?;
    let scheme = Scheme::new(sc.params)?;
    let outcomes = (0..sc.trials as u64)
        .into_par_iter()
        .map(|k| scheme.run_trial(k).map(|tr| TrialOutcome::from_trace(&tr)))
        .collect::<Result<Vec<_>>>()?;
    Ok(reduce(sc, &scheme, &outcomes))
}

fn reduce(sc: &SimConfig, scheme: &Scheme, outcomes: &[TrialOutcome]) -> SimReport {
    let n = sc.params.n;
    let count = outcomes.len() as f64;
    let errors = outcomes.iter().filter(|o| o.error).count() as f64;
    let threshold = sc.target_b - sc.epsilon;
    let outages = outcomes.iter().filter(|o| o.b_hat < threshold).count() as f64;

    let mut sum_b = 0.0;
    let mut energy = [0.0f64; 2];
    for o in outcomes {
        sum_b += o.b_hat;
        energy[0] += o.energy[0];
        energy[1] += o.energy[1];
    }
    let mean_b = sum_b / count;
    let mut ss = 0.0;
    for o in outcomes {
        ss += (o.b_hat - mean_b).powi(2);
    }
    let stderr_b = if outcomes.len() > 1 {
        (ss / (count - 1.0) / count).sqrt()
    } else {
        0.0
    };

    let mut sums = vec![[0.0f64; 5]; n];
    for o in outcomes {
        for (acc, u) in sums.iter_mut().zip(&o.u) {
            acc[0] += u[0];
            acc[1] += u[1];
            acc[2] += u[0] * u[0];
            acc[3] += u[1] * u[1];
            acc[4] += u[0] * u[1];
        }
    }
    let correlation_trace = sums
        .iter()
        .map(|s| pearson(s[0], s[1], s[2], s[3], s[4], count))
        .collect();

    let p = errors / count;
    let budget = (n + 1) as f64;
    SimReport {
        trials: outcomes.len(),
        n,
        seed: sc.params.seed,
        p_error_hat: p,
        p_error_stderr: (p * (1.0 - p) / count).sqrt(),
        error_bound: joint_error_bound(&sc.params),
        outage_hat: outages / count,
        target_b: sc.target_b,
        epsilon: sc.epsilon,
        mean_b,
        stderr_b,
        expected_b: expected_energy_rate(&sc.params, scheme.rho()),
        rho_star: scheme.rho(),
        correlation_trace,
        consumed_power: [energy[0] / count / budget, energy[1] / count / budget],
    }
}

/// One row of an outage sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutageRow {
    pub n: usize,
    pub outage_hat: f64,
    pub mean_b: f64,
    pub stderr_b: f64,
}

/// Repeats `base` at each blocklength in `ns` (rates and seed unchanged).
pub fn outage_estimate(base: &SimConfig, ns: &[usize]) -> Result<Vec<OutageRow>> {
    ns.iter()
        .map(|&n| {
            let mut sc = *base;
            sc.params.n = n;
            let r = run(&sc)?;
            Ok(OutageRow {
                n,
                outage_hat: r.outage_hat,
                mean_b: r.mean_b,
                stderr_b: r.stderr_b,
            })
        })
        .collect()
}

/// Outage sweep as a table with columns `n,outage_hat,mean_b,stderr_b`.
pub fn outage_table(rows: &[OutageRow]) -> Table {
    let mut t = Table::new(&["n", "outage_hat", "mean_b", "stderr_b"]);
    for r in rows {
        t.push(vec![r.n as f64, r.outage_hat, r.mean_b, r.stderr_b]);
    }
    t
}
