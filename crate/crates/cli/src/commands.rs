use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use seit_core::mc::{self, outage_table};
use seit_core::output::boundary_table;
use seit_core::region::{gain_ratio_curve, sample_boundary, snr_grid, sum_capacity_curve, undominated};
use seit_core::{ChannelConfig, Error, SchemeParams, SimConfig, Table};

use crate::{ChannelSource, Format, OutageArgs, RatioArgs, RegionArgs, SchemeArgs, SimulateArgs, SumcapArgs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0} no-feedback samples are not dominated by any feedback sample")]
    NotIncluded(usize),
    #[error(transparent)]
    Core(#[from] Error),
}

type Result<T> = std::result::Result<T, CliError>;

fn channel(src: &ChannelSource) -> Result<ChannelConfig> {
    let cfg = match (&src.snr, &src.channel) {
        (Some(s), _) => ChannelConfig::from_snr(s[0], s[1], s[2], s[3])?,
        (None, Some(path)) => ChannelConfig::load(path)?,
        (None, None) => unreachable!("clap requires one channel source"),
    };
    Ok(cfg)
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(Error::Io)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(table: &Table, out: Option<&Path>, format: Format) -> Result<()> {
    let mut w = sink(out)?;
    match format {
        Format::Csv => table.write_csv(&mut w)?,
        Format::Json => table.write_json(&mut w)?,
    }
    w.flush().map_err(Error::Io)?;
    Ok(())
}

pub fn region(a: &RegionArgs) -> Result<()> {
    let cfg = channel(&a.source)?;
    if a.res < 2 {
        return Err(Error::InvalidParams(format!("--res must be at least 2, got {}", a.res)).into());
    }
    let samples = sample_boundary(&cfg, a.feedback, a.res);
    emit(&boundary_table(&samples), a.out.as_deref(), a.format)?;
    if a.check_inclusion {
        let (nf, fb) = if a.feedback {
            (sample_boundary(&cfg, false, a.res), samples)
        } else {
            (samples, sample_boundary(&cfg, true, a.res))
        };
        let missing = undominated(&nf, &fb).len();
        if missing > 0 {
            return Err(CliError::NotIncluded(missing));
        }
        eprintln!(
            "inclusion ok: {} no-feedback samples covered by {} feedback samples",
            nf.len(),
            fb.len()
        );
    }
    Ok(())
}

pub fn sumcap(a: &SumcapArgs) -> Result<()> {
    let cfg = channel(&a.source)?;
    emit(&sum_capacity_curve(&cfg, a.points), a.out.as_deref(), a.format)
}

pub fn ratio(a: &RatioArgs) -> Result<()> {
    let snrs = snr_grid(a.snr_min, a.snr_max, a.per_decade)?;
    emit(&gain_ratio_curve(&a.asym, &snrs)?, a.out.as_deref(), a.format)
}

fn sim_config(s: &SchemeArgs, n: usize) -> Result<SimConfig> {
    let cfg = channel(&s.source)?;
    let betas = s.beta;
    let rates = match (&s.rates.rates, s.rates.rate_frac) {
        (Some(r), _) => *r,
        (None, Some(f)) => {
            if !(0.0..=1.0).contains(&f) {
                return Err(Error::InvalidParams(format!("--rate-frac must lie in [0, 1], got {f}")).into());
            }
            let probe = SchemeParams::new(cfg, n, [0.0, 0.0], betas, s.seed)?;
            [f * probe.rate_limit(1), f * probe.rate_limit(2)]
        }
        (None, None) => unreachable!("clap requires one rate choice"),
    };
    let params = SchemeParams::new(cfg, n, rates, betas, s.seed)?;
    Ok(SimConfig::new(params, s.trials, s.target_b, s.epsilon)?)
}

pub fn simulate(a: &SimulateArgs) -> Result<()> {
    let sc = sim_config(&a.scheme, a.n)?;
    let report = mc::run(&sc)?;
    let mut w = sink(a.out.as_deref())?;
    serde_json::to_writer_pretty(&mut w, &report).map_err(Error::Json)?;
    writeln!(w).map_err(Error::Io)?;
    w.flush().map_err(Error::Io)?;
    eprintln!(
        "n={} trials={} p_err={:.4} (bound {:.3e}) mean_b={:.4} expected_b={:.4} outage={:.4}",
        report.n,
        report.trials,
        report.p_error_hat,
        report.error_bound,
        report.mean_b,
        report.expected_b,
        report.outage_hat
    );
    Ok(())
}

pub fn outage(a: &OutageArgs) -> Result<()> {
    let n0 = a.ns.iter().copied().min().unwrap_or(1);
    let sc = sim_config(&a.scheme, n0)?;
    let rows = mc::outage_estimate(&sc, &a.ns)?;
    emit(&outage_table(&rows), a.out.as_deref(), Format::Csv)
}
