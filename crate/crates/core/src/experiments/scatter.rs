//! Cauchy differences of the interaction representation `v(t) = e^{-itΔ}u(t)`.

use crate::dynamics::{free_propagate, StrangStepper};
use crate::error::{Error, Result};
use crate::spectral::{sobolev_norm, DerivKind, Field};

use super::config::RunConfig;
use super::report::{Cell, Report};
use super::threshold_header;

/// Below this every free-flow difference counts as zero.
pub const FREE_FLOW_TOLERANCE: f64 = 1e-10;

/// Windows needed before the trend is judged.
pub const MIN_WINDOWS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WindowRow {
    pub t_start: f64,
    pub t_end: f64,
    /// `‖v(t_end) - v(t_start)‖_{H^s}`.
    pub difference: f64,
    /// Boundary-strip mass fraction of `u(t_end)`.
    pub boundary_mass: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScatterOutcome {
    pub windows: Vec<WindowRow>,
    /// Set when wrap-around cut the run short after enough windows.
    pub stopped_at: Option<f64>,
    pub passed: bool,
}

/// `‖v(t₂) - v(t₁)‖_{H^s}` for two states of the same run.
pub fn cauchy_difference(u1: &Field, t1: f64, u2: &Field, t2: f64, s: f64) -> Result<f64> {
    let v1 = free_propagate(u1, -t1);
    let v2 = free_propagate(u2, -t2);
    sobolev_norm(&v2.sub(&v1.on_side(v2.side()))?, s, DerivKind::Inhomogeneous)
}

/// Splits `[0, horizon]` into `config.windows` equal windows and measures the
/// Cauchy difference across each. Stops early once the boundary strip holds
/// more than `config.revival_limit` of the mass; that is an error when fewer
/// than [`MIN_WINDOWS`] windows are complete.
///
/// Free flow passes when every difference is below [`FREE_FLOW_TOLERANCE`];
/// otherwise the last three differences must strictly decrease.
pub fn scattering_cauchy(config: &RunConfig) -> Result<ScatterOutcome> {
    if config.windows < MIN_WINDOWS {
        return Err(Error::InvalidParameter(format!(
            "need at least {MIN_WINDOWS} windows, got {}",
            config.windows
        )));
    }
    let steps_per_window = (config.horizon / (config.windows as f64 * config.dt)).round() as usize;
    if steps_per_window == 0 {
        return Err(Error::InvalidParameter("windows shorter than one step".into()));
    }
    let dt = config.horizon / (config.windows * steps_per_window) as f64;
    let model = config.model()?;
    let mut u = config.initial_data(1.0)?.into_physical();
    let initial_fraction = u.boundary_mass_fraction();
    if initial_fraction > config.revival_limit {
        return Err(Error::BoundaryMass {
            fraction: initial_fraction,
            limit: config.revival_limit,
        });
    }
    let mut stepper = StrangStepper::new(*u.grid(), dt, model);
    let mut rows = Vec::new();
    let mut stopped_at = None;
    let (mut u_prev, mut t_prev) = (u.clone(), 0.0);
    for w in 1..=config.windows {
        for _ in 0..steps_per_window {
            stepper.step(&mut u);
        }
        let t = (w * steps_per_window) as f64 * dt;
        if !u.is_finite() {
            return Err(Error::NonFinite { last_good_time: t_prev });
        }
        let fraction = u.boundary_mass_fraction();
        if fraction > config.revival_limit {
            if rows.len() < MIN_WINDOWS {
                return Err(Error::RevivalContamination {
                    time: t,
                    fraction,
                    limit: config.revival_limit,
                });
            }
            stopped_at = Some(t);
            break;
        }
        rows.push(WindowRow {
            t_start: t_prev,
            t_end: t,
            difference: cauchy_difference(&u_prev, t_prev, &u, t, config.s)?,
            boundary_mass: fraction,
        });
        u_prev = u.clone();
        t_prev = t;
    }
    let passed = if model.is_linear() {
        rows.iter().all(|r| r.difference < FREE_FLOW_TOLERANCE)
    } else {
        let tail = &rows[rows.len() - MIN_WINDOWS..];
        tail.windows(2).all(|p| p[1].difference < p[0].difference)
    };
    Ok(ScatterOutcome {
        windows: rows,
        stopped_at,
        passed,
    })
}

pub fn run_scattering_cauchy(config: &RunConfig) -> Result<(Report, ScatterOutcome)> {
    let outcome = scattering_cauchy(config)?;
    let mut report = Report::new(
        "scatter",
        &["anchor", "window", "t_start", "t_end", "hs_difference", "boundary_mass"],
    );
    report.echo_config(&config.to_text());
    threshold_header(&mut report, config);
    if let Some(t) = outcome.stopped_at {
        report.note(format!("stopped at t = {t}: boundary mass above revival_limit"));
    }
    for (i, r) in outcome.windows.iter().enumerate() {
        report.push_row(vec![
            "duhamel-cauchy-difference".into(),
            Cell::from(i + 1),
            r.t_start.into(),
            r.t_end.into(),
            r.difference.into(),
            r.boundary_mass.into(),
        ])?;
    }
    report.verdict = Some(outcome.passed);
    Ok((report, outcome))
}
