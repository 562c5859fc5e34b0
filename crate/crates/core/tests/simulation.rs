use seit_core::coder::Scheme;
use seit_core::mc::{self, SimConfig};
use seit_core::{ChannelConfig, Error, SchemeParams, Table};

fn params(n: usize, frac: f64, betas: [f64; 2], seed: u64) -> SchemeParams {
    let cfg = ChannelConfig::symmetric(10.0).unwrap();
    let probe = SchemeParams::new(cfg, n, [0.0, 0.0], betas, seed).unwrap();
    let rates = [frac * probe.rate_limit(1), frac * probe.rate_limit(2)];
    SchemeParams::new(cfg, n, rates, betas, seed).unwrap()
}

#[test]
fn trace_csv_has_every_channel_use() {
    let scheme = Scheme::new(params(40, 0.8, [1.0, 1.0], 5)).unwrap();
    let trace = scheme.run_trial(0).unwrap();
    assert!(!trace.error());
    let mut buf = Vec::new();
    trace.write_csv(&mut buf).unwrap();
    let t = Table::read_csv(&buf[..]).unwrap();
    assert_eq!(t.columns, ["t", "x1", "x2", "y1", "y2", "u1", "u2"]);
    let ts = t.column("t").unwrap();
    assert_eq!(ts.len(), 43);
    assert_eq!(&ts[..4], [-2.0, -1.0, 0.0, 1.0]);
    assert_eq!(*ts.last().unwrap(), 40.0);
}

#[test]
fn pure_energy_transmission_reaches_max_energy_rate() {
    let cfg = ChannelConfig::symmetric(10.0).unwrap();
    let p = SchemeParams::new(cfg, 500, [0.0, 0.0], [0.0, 0.0], 9).unwrap();
    let r = mc::run(&SimConfig::new(p, 200, None, None).unwrap()).unwrap();
    assert_eq!(r.p_error_hat, 0.0);
    assert!(
        (r.mean_b - cfg.max_energy_rate()).abs() <= 3.0 * r.stderr_b,
        "{} vs 41",
        r.mean_b
    );
}

#[test]
fn power_budget_met_on_average() {
    let p = params(300, 0.7, [0.6, 0.9], 2);
    let r = mc::run(&SimConfig::new(p, 200, None, None).unwrap()).unwrap();
    for (i, used) in r.consumed_power.into_iter().enumerate() {
        let budget = p.cfg.power(i + 1);
        assert!(
            (used / budget - 1.0).abs() < 0.05,
            "transmitter {} used {used} of {budget}",
            i + 1
        );
    }
}

#[test]
fn infeasible_target_rejected() {
    let e = SimConfig::new(params(50, 0.5, [1.0, 1.0], 0), 10, Some(100.0), None).unwrap_err();
    assert!(matches!(e, Error::InfeasibleEnergy { .. }));
}

#[test]
fn outage_sweep_keeps_seed_and_rates() {
    let base = SimConfig::new(params(100, 0.5, [1.0, 1.0], 4), 30, None, Some(1.0)).unwrap();
    let rows = mc::outage_estimate(&base, &[100, 400]).unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[1].stderr_b < rows[0].stderr_b);
}
