//! Inequality check suites run against configured sweeps.

use rayon::prelude::*;

use crate::data::{least_squares_slope, random_band_limited, rough_sample, RoughSpec};
use crate::dynamics::{simulate, SimulateOptions};
use crate::error::{Error, Result};
use crate::imethod::{commutator_norm, sandwich_ratios};
use crate::spacetime::{dispersive_ratio, gaussian_dispersive_ratio, morawetz_ratio, MorawetzVariant};
use crate::spectral::{bernstein_ratio, LpBand};
use crate::data::gaussian_profile;

use super::config::{CheckKind, RunConfig};
use super::report::{format_float, Cell, Report};
use super::threshold_header;

/// Largest allowed relative spread of a sandwich ratio across cutoffs.
pub const SANDWICH_SPREAD_LIMIT: f64 = 0.2;
/// Largest allowed max/min of a Morawetz ratio across the amplitude family.
pub const MORAWETZ_SPREAD_LIMIT: f64 = 3.0;
/// Agreement required between the grid dispersive ratio and its closed form.
pub const DISPERSIVE_CLOSED_FORM_TOLERANCE: f64 = 1e-6;
/// Slack added to the predicted commutator decay exponent `-(1 - s)`.
pub const COMMUTATOR_SLOPE_SLACK: f64 = 0.2;
/// Band-limited fields drawn per cutoff by the Bernstein check.
pub const BERNSTEIN_SAMPLES: u64 = 8;

/// One named measurement with its reference value.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckRow {
    pub check: CheckKind,
    pub anchor: &'static str,
    pub case: String,
    pub measured: f64,
    pub reference: f64,
    /// `None` for informational rows.
    pub verdict: Option<bool>,
}

impl CheckRow {
    fn info(check: CheckKind, anchor: &'static str, case: String, measured: f64) -> Self {
        Self {
            check,
            anchor,
            case,
            measured,
            reference: f64::NAN,
            verdict: None,
        }
    }
}

fn anchor(kind: CheckKind) -> &'static str {
    match kind {
        CheckKind::Bernstein => "bernstein-inequality",
        CheckKind::Sandwich => "i-operator-sandwich",
        CheckKind::Dispersive => "dispersive-decay",
        CheckKind::Morawetz => "interaction-morawetz",
        CheckKind::Commutator => "commutator-decay",
    }
}

/// `‖P_{≤N}g‖_∞ / (N^{d/2}‖P_{≤N}g‖₂)` is at most `√K / (L N)^{d/2}` on the
/// grid, with `K` the number of modes the projection keeps (Cauchy–Schwarz
/// on the coefficients). The `L⁴` ratio is bounded by the square root of that
/// by interpolation between `L²` and `L^∞`.
fn bernstein(config: &RunConfig) -> Result<Vec<CheckRow>> {
    let grid = config.grid()?;
    let d = grid.dim() as f64;
    let a = anchor(CheckKind::Bernstein);
    let mut rows = Vec::new();
    for &n in &config.sweep_n {
        let band = LpBand::Leq(n);
        let kept = (0..grid.len())
            .filter(|&i| band.symbol(grid.abs_wavenumber(i)) != 0.0)
            .count() as f64;
        let bound_inf = kept.sqrt() / (grid.length() * n).powf(d / 2.0);
        let mut worst_inf: f64 = 0.0;
        let mut worst_4: f64 = 0.0;
        for j in 0..BERNSTEIN_SAMPLES {
            let f = random_band_limited(grid, config.seed.wrapping_add(j), grid.max_abs_wavenumber());
            worst_inf = worst_inf.max(bernstein_ratio(&f, n, 2.0, f64::INFINITY)?);
            worst_4 = worst_4.max(bernstein_ratio(&f, n, 2.0, 4.0)?);
        }
        rows.push(CheckRow {
            check: CheckKind::Bernstein,
            anchor: a,
            case: format!("L2->Linf N={n}"),
            measured: worst_inf,
            reference: bound_inf,
            verdict: Some(worst_inf <= bound_inf),
        });
        rows.push(CheckRow {
            check: CheckKind::Bernstein,
            anchor: a,
            case: format!("L2->L4 N={n}"),
            measured: worst_4,
            reference: bound_inf.sqrt(),
            verdict: Some(worst_4 <= bound_inf.sqrt()),
        });
    }
    Ok(rows)
}

/// Relative spread `max/min - 1` of a positive sequence.
fn spread(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::MIN, f64::max);
    let min = values.iter().cloned().fold(f64::MAX, f64::min);
    max / min - 1.0
}

/// Both sandwich ratios on `samples` rough fields; each ratio must vary by
/// less than [`SANDWICH_SPREAD_LIMIT`] across the cutoffs, for every sample.
fn sandwich(config: &RunConfig) -> Result<Vec<CheckRow>> {
    let grid = config.grid()?;
    let specs = config
        .sweep_n
        .iter()
        .map(|&n| config.i_spec(n))
        .collect::<Result<Vec<_>>>()?;
    let per_sample: Vec<Vec<(f64, f64)>> = (0..config.samples as u64)
        .into_par_iter()
        .map(|j| {
            let spec = RoughSpec::new(config.s, config.seed.wrapping_add(j), config.amplitude, config.width)?;
            let f = rough_sample(grid, &spec)?;
            specs.iter().map(|sp| sandwich_ratios(&f, sp)).collect()
        })
        .collect::<Result<_>>()?;
    if per_sample.is_empty() {
        return Err(Error::InvalidParameter("sandwich check needs samples >= 1".into()));
    }
    let a = anchor(CheckKind::Sandwich);
    let mut rows = Vec::new();
    for (k, &n) in config.sweep_n.iter().enumerate() {
        let count = per_sample.len() as f64;
        let low = per_sample.iter().map(|r| r[k].0).sum::<f64>() / count;
        let high = per_sample.iter().map(|r| r[k].1).sum::<f64>() / count;
        rows.push(CheckRow::info(CheckKind::Sandwich, a, format!("mean lower ratio N={n}"), low));
        rows.push(CheckRow::info(CheckKind::Sandwich, a, format!("mean upper ratio N={n}"), high));
    }
    let worst = |pick: fn(&(f64, f64)) -> f64| {
        per_sample
            .iter()
            .map(|r| spread(&r.iter().map(pick).collect::<Vec<_>>()))
            .fold(0.0, f64::max)
    };
    for (name, value) in [("lower ratio spread", worst(|r| r.0)), ("upper ratio spread", worst(|r| r.1))] {
        rows.push(CheckRow {
            check: CheckKind::Sandwich,
            anchor: a,
            case: name.into(),
            measured: value,
            reference: SANDWICH_SPREAD_LIMIT,
            verdict: Some(value < SANDWICH_SPREAD_LIMIT),
        });
    }
    Ok(rows)
}

/// Gaussian of width `config.width`: the grid ratio must match the closed
/// form and stay below the sharp constant `(4π)^{-d/2}` until wrap-around.
fn dispersive(config: &RunConfig) -> Result<Vec<CheckRow>> {
    let grid = config.grid()?;
    let f = gaussian_profile(grid, config.amplitude, config.width, [0.0, 0.0])?;
    let sharp = (4.0 * std::f64::consts::PI).powf(-(grid.dim() as f64) / 2.0);
    let a = anchor(CheckKind::Dispersive);
    let mut rows = Vec::new();
    let mut fitted: f64 = 0.0;
    for &t in &config.dispersive_times {
        let measured = match dispersive_ratio(&f, t) {
            Ok(r) => r,
            Err(Error::RevivalContamination { .. }) => {
                rows.push(CheckRow::info(CheckKind::Dispersive, a, format!("wrap-around reached t={t}"), t));
                break;
            }
            Err(e) => return Err(e),
        };
        fitted = fitted.max(measured);
        let exact = gaussian_dispersive_ratio(grid.dim(), config.width, t);
        let err = (measured - exact).abs() / exact;
        rows.push(CheckRow {
            check: CheckKind::Dispersive,
            anchor: a,
            case: format!("ratio t={t}"),
            measured,
            reference: sharp,
            verdict: Some(measured <= sharp),
        });
        rows.push(CheckRow {
            check: CheckKind::Dispersive,
            anchor: a,
            case: format!("closed-form error t={t}"),
            measured: err,
            reference: DISPERSIVE_CLOSED_FORM_TOLERANCE,
            verdict: Some(err < DISPERSIVE_CLOSED_FORM_TOLERANCE),
        });
    }
    rows.push(CheckRow::info(CheckKind::Dispersive, a, "fitted constant".into(), fitted));
    Ok(rows)
}

/// Every Morawetz variant of the dimension over the amplitude family; the
/// ratio's max/min across the family must stay below
/// [`MORAWETZ_SPREAD_LIMIT`].
fn morawetz(config: &RunConfig) -> Result<Vec<CheckRow>> {
    let model = config.model()?;
    let variants: Vec<MorawetzVariant> = MorawetzVariant::ALL
        .into_iter()
        .filter(|v| v.dim() == config.dim)
        .collect();
    let opts = SimulateOptions::new(config.horizon, config.dt).snapshot_every(Some(config.record_every));
    let per_amp: Vec<Vec<f64>> = config
        .morawetz_amplitudes
        .par_iter()
        .map(|&amp| {
            let u0 = config.initial_data(amp)?;
            let series = simulate(&u0, &model, opts, &mut [])?;
            variants
                .iter()
                .map(|&v| morawetz_ratio(&series, v).map(|r| r.ratio))
                .collect()
        })
        .collect::<Result<_>>()?;
    let a = anchor(CheckKind::Morawetz);
    let mut rows = Vec::new();
    for (k, v) in variants.iter().enumerate() {
        for (amp, ratios) in config.morawetz_amplitudes.iter().zip(&per_amp) {
            rows.push(CheckRow::info(
                CheckKind::Morawetz,
                a,
                format!("{} amplitude={amp}", v.name()),
                ratios[k],
            ));
        }
        let ratios: Vec<f64> = per_amp.iter().map(|r| r[k]).collect();
        let s = spread(&ratios) + 1.0;
        rows.push(CheckRow {
            check: CheckKind::Morawetz,
            anchor: a,
            case: format!("{} max/min", v.name()),
            measured: s,
            reference: MORAWETZ_SPREAD_LIMIT,
            verdict: Some(s < MORAWETZ_SPREAD_LIMIT),
        });
    }
    Ok(rows)
}

/// `‖I f(u) - f(Iu)‖₂` on the configured datum across the cutoffs; the
/// fitted log-log slope must be at most `-(1 - s) + 0.2`. Free flow has no
/// commutator and yields one informational row.
fn commutator(config: &RunConfig) -> Result<Vec<CheckRow>> {
    let model = config.model()?;
    let a = anchor(CheckKind::Commutator);
    if model.is_linear() {
        return Ok(vec![CheckRow::info(CheckKind::Commutator, a, "skipped: zero couplings".into(), 0.0)]);
    }
    let u = config.initial_data(1.0)?;
    let norms = config
        .sweep_n
        .par_iter()
        .map(|&n| commutator_norm(&u, &model, &config.i_spec(n)?, 2.0))
        .collect::<Result<Vec<f64>>>()?;
    let mut rows: Vec<CheckRow> = config
        .sweep_n
        .iter()
        .zip(&norms)
        .map(|(n, &v)| CheckRow::info(CheckKind::Commutator, a, format!("L2 norm N={n}"), v))
        .collect();
    let (xs, ys): (Vec<f64>, Vec<f64>) = config
        .sweep_n
        .iter()
        .zip(&norms)
        .filter(|(_, &v)| v > 0.0)
        .map(|(n, v)| (n.log2(), v.log2()))
        .unzip();
    let reference = -(1.0 - config.s) + COMMUTATOR_SLOPE_SLACK;
    let (measured, verdict) = if xs.len() >= 2 {
        let slope = least_squares_slope(&xs, &ys);
        (slope, Some(slope <= reference))
    } else {
        (f64::NAN, Some(false))
    };
    rows.push(CheckRow {
        check: CheckKind::Commutator,
        anchor: a,
        case: "fitted slope".into(),
        measured,
        reference,
        verdict,
    });
    Ok(rows)
}

pub fn check_rows(config: &RunConfig, kind: CheckKind) -> Result<Vec<CheckRow>> {
    match kind {
        CheckKind::Bernstein => bernstein(config),
        CheckKind::Sandwich => sandwich(config),
        CheckKind::Dispersive => dispersive(config),
        CheckKind::Morawetz => morawetz(config),
        CheckKind::Commutator => commutator(config),
    }
}

/// Runs the configured checks concurrently and assembles their rows in
/// configuration order.
pub fn run_checks(config: &RunConfig) -> Result<(Report, Vec<CheckRow>)> {
    let groups: Vec<Vec<CheckRow>> = config
        .checks
        .par_iter()
        .map(|&k| check_rows(config, k))
        .collect::<Result<_>>()?;
    let rows: Vec<CheckRow> = groups.into_iter().flatten().collect();
    let mut report = Report::new("checks", &["check", "anchor", "case", "measured", "reference", "verdict"]);
    report.echo_config(&config.to_text());
    threshold_header(&mut report, config);
    for r in &rows {
        report.push_row(vec![
            r.check.name().into(),
            r.anchor.into(),
            Cell::Text(r.case.clone()),
            r.measured.into(),
            Cell::Text(format_float(r.reference)),
            Cell::Verdict(r.verdict),
        ])?;
    }
    report.verdict = Some(rows.iter().all(|r| r.verdict != Some(false)));
    Ok((report, rows))
}
