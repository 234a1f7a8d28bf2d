//! Finite-SNR rates and DoF slope estimates.
//!
//! A receiver observing `y = M_own·s_own + M_int·s_int + z` over `n` slots,
//! with unit-variance noise and transmit power `P` per slot, gets the
//! Gaussian mutual information
//! `(1/n)[log2 det(I + P·M·Mᴴ) − log2 det(I + P·M_int·M_intᴴ)]`.
//! Trace matrices are already normalized to unit power per slot, so `P`
//! multiplies them directly.
//!
//! Each trial draws its own channel from a seed derived from the sweep seed
//! and the trial index; the same draw is reused across the SNR grid.

use std::fmt::Write as _;

use crate::catalog::SchemeRef;
use crate::channel::{draw_channels, split_seed};
use crate::compose::Schedule;
use crate::exec::Execution;
use crate::linalg::singular_values;
use crate::rational::to_f64;
use crate::trace::build_trace;
use crate::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    snr_grid_db: Vec<f64>,
    trials_per_point: usize,
    seed: u64,
}

impl SweepConfig {
    /// Requires at least two strictly ascending, evenly spaced grid points
    /// and at least one trial.
    pub fn new(snr_grid_db: Vec<f64>, trials_per_point: usize, seed: u64) -> Result<Self, Error> {
        if snr_grid_db.len() < 2 {
            return Err(Error::InvalidConfig(
                "SNR grid needs at least two points".into(),
            ));
        }
        if trials_per_point == 0 {
            return Err(Error::InvalidConfig(
                "need at least one trial per point".into(),
            ));
        }
        if snr_grid_db.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidConfig("SNR grid must be finite".into()));
        }
        let step = snr_grid_db[1] - snr_grid_db[0];
        if step <= 0.0 {
            return Err(Error::InvalidConfig("SNR grid must ascend".into()));
        }
        for w in snr_grid_db.windows(2) {
            if ((w[1] - w[0]) - step).abs() > 1e-9 * step.max(1.0) {
                return Err(Error::InvalidConfig(
                    "SNR grid must be evenly spaced".into(),
                ));
            }
        }
        Ok(SweepConfig {
            snr_grid_db,
            trials_per_point,
            seed,
        })
    }

    /// `from, from + step, ...` up to and including `to` (within rounding).
    pub fn uniform(from: f64, to: f64, step: f64, trials: usize, seed: u64) -> Result<Self, Error> {
        if !(step > 0.0 && to >= from) {
            return Err(Error::InvalidConfig(format!(
                "bad grid {from}..{to} step {step}"
            )));
        }
        let n = ((to - from) / step + 1e-9).floor() as usize + 1;
        SweepConfig::new(
            (0..n).map(|i| from + i as f64 * step).collect(),
            trials,
            seed,
        )
    }

    pub fn snr_grid_db(&self) -> &[f64] {
        &self.snr_grid_db
    }

    pub fn trials_per_point(&self) -> usize {
        self.trials_per_point
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepTarget {
    Scheme(SchemeRef),
    Schedule(Schedule),
}

impl SweepTarget {
    pub fn label(&self) -> String {
        match self {
            SweepTarget::Scheme(s) => s.to_string(),
            SweepTarget::Schedule(_) => "schedule".into(),
        }
    }
}

impl<T: Into<SchemeRef>> From<T> for SweepTarget {
    fn from(s: T) -> Self {
        SweepTarget::Scheme(s.into())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateSample {
    pub snr_db: f64,
    pub rate1: f64,
    pub rate2: f64,
    pub trials: usize,
}

fn snr_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Singular values needed for one receiver's rate at any SNR.
struct RxSpectrum {
    full: Vec<f64>,
    interference: Vec<f64>,
    slots: f64,
    wanted: usize,
}

impl RxSpectrum {
    fn rate(&self, p: f64) -> f64 {
        if self.wanted == 0 {
            return 0.0;
        }
        let gain = |sv: &[f64]| sv.iter().map(|s| (1.0 + p * s * s).log2()).sum::<f64>();
        ((gain(&self.full) - gain(&self.interference)) / self.slots).max(0.0)
    }
}

fn spectra(scheme: SchemeRef, seed: u64) -> Result<[RxSpectrum; 2], Error> {
    let spec = scheme.spec();
    let ch = draw_channels(seed, spec.slots())?;
    let t = build_trace(scheme, &ch)?;
    let rx = |i: usize| RxSpectrum {
        full: singular_values(t.rx(i)),
        interference: singular_values(&t.interference(i)),
        slots: t.slots() as f64,
        wanted: t.wanted(i),
    };
    Ok([rx(0), rx(1)])
}

/// Rates of one trial across the whole grid.
fn trial(target: &SweepTarget, grid: &[f64], seed: u64) -> Result<Vec<(f64, f64)>, Error> {
    let mut out = vec![(0.0, 0.0); grid.len()];
    let mut add =
        |scheme: SchemeRef, weight: f64, keep: [bool; 2], seed: u64| -> Result<(), Error> {
            let [s1, s2] = spectra(scheme, seed)?;
            for (o, db) in out.iter_mut().zip(grid) {
                let p = snr_linear(*db);
                if keep[0] {
                    o.0 += weight * s1.rate(p);
                }
                if keep[1] {
                    o.1 += weight * s2.rate(p);
                }
            }
            Ok(())
        };
    match target {
        SweepTarget::Scheme(s) => add(*s, 1.0, [true, true], seed)?,
        SweepTarget::Schedule(sched) => {
            for (k, row) in sched.rows.iter().enumerate() {
                let w = to_f64(&row.fraction);
                if w == 0.0 {
                    continue;
                }
                let keep = [!row.discard.drops(0), !row.discard.drops(1)];
                add(row.scheme, w, keep, split_seed(seed, k as u64))?;
            }
        }
    }
    Ok(out)
}

/// Average rates per SNR point with the default execution mode.
pub fn rate_sweep(
    target: impl Into<SweepTarget>,
    cfg: &SweepConfig,
) -> Result<Vec<RateSample>, Error> {
    rate_sweep_with(target, cfg, Execution::default())
}

/// Same as [`rate_sweep`]; the result does not depend on `exec`.
pub fn rate_sweep_with(
    target: impl Into<SweepTarget>,
    cfg: &SweepConfig,
    exec: Execution,
) -> Result<Vec<RateSample>, Error> {
    let target = target.into();
    if let SweepTarget::Schedule(s) = &target {
        if s.rows.iter().any(|r| r.fraction < num::Zero::zero()) {
            return Err(Error::InvalidSchedule("negative fraction".into()));
        }
    }
    let grid = &cfg.snr_grid_db;
    let indices: Vec<u64> = (0..cfg.trials_per_point as u64).collect();
    let per_trial = exec.map(indices, |i| trial(&target, grid, split_seed(cfg.seed, i)));
    let mut sums = vec![(0.0, 0.0); grid.len()];
    for t in per_trial {
        for (s, r) in sums.iter_mut().zip(t?) {
            s.0 += r.0;
            s.1 += r.1;
        }
    }
    let n = cfg.trials_per_point as f64;
    Ok(grid
        .iter()
        .zip(sums)
        .map(|(db, (r1, r2))| RateSample {
            snr_db: *db,
            rate1: r1 / n,
            rate2: r2 / n,
            trials: cfg.trials_per_point,
        })
        .collect())
}

/// Least-squares slope of each rate against `log2 P` over the upper half of
/// the samples (at least two points).
pub fn dof_slope(samples: &[RateSample]) -> Result<(f64, f64), Error> {
    if samples.len() < 2 {
        return Err(Error::InvalidConfig(
            "slope needs at least two samples".into(),
        ));
    }
    if samples.windows(2).any(|w| w[1].snr_db <= w[0].snr_db) {
        return Err(Error::InvalidConfig("samples must ascend in SNR".into()));
    }
    let keep = samples.len().div_ceil(2).max(2);
    let top = &samples[samples.len() - keep..];
    let x: Vec<f64> = top.iter().map(|s| snr_linear(s.snr_db).log2()).collect();
    let slope = |y: Vec<f64>| {
        let n = x.len() as f64;
        let mx = x.iter().sum::<f64>() / n;
        let my = y.iter().sum::<f64>() / n;
        let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
        let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
        sxy / sxx
    };
    Ok((
        slope(top.iter().map(|s| s.rate1).collect()),
        slope(top.iter().map(|s| s.rate2).collect()),
    ))
}

pub const CSV_HEADER: &str = "snr_db,rate1,rate2,trials,scheme_id";

/// Decimal with at least twelve significant digits.
fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0.000000000000".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(1) as usize;
    format!("{x:.decimals$}")
}

pub fn to_csv(samples: &[RateSample], label: &str) -> String {
    let mut out = String::new();
    writeln!(out, "{CSV_HEADER}").unwrap();
    for s in samples {
        writeln!(
            out,
            "{},{},{},{},{label}",
            fmt_num(s.snr_db),
            fmt_num(s.rate1),
            fmt_num(s.rate2),
            s.trials
        )
        .unwrap();
    }
    out
}

/// Reads [`to_csv`] output back into samples and the label column.
pub fn from_csv(text: &str) -> Result<Vec<(RateSample, String)>, Error> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(CSV_HEADER) {
        return Err(Error::Parse("missing CSV header".into()));
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            let [db, r1, r2, n, label] = f[..] else {
                return Err(Error::Parse(format!("bad CSV line {l:?}")));
            };
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad number {s:?}")))
            };
            Ok((
                RateSample {
                    snr_db: num(db)?,
                    rate1: num(r1)?,
                    rate2: num(r2)?,
                    trials: n
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad count {n:?}")))?,
                },
                label.to_string(),
            ))
        })
        .collect()
}
