//! Orchestration: run configuration, threshold calculator, the cutoff sweep,
//! the scattering experiment, inequality checks, reports and checkpoint
//! tools.

mod checks;
mod config;
mod diagnostics;
mod report;
mod scatter;
mod sweep;
mod thresholds;

use std::path::Path;

pub use checks::{
    check_rows, run_checks, CheckRow, BERNSTEIN_SAMPLES, COMMUTATOR_SLOPE_SLACK,
    DISPERSIVE_CLOSED_FORM_TOLERANCE, MORAWETZ_SPREAD_LIMIT, SANDWICH_SPREAD_LIMIT,
};
pub use config::{parse_config, CheckKind, DataKind, ExperimentKind, RunConfig};
pub use diagnostics::{run_simulation, DiagnosticsRecord, DiagnosticsRecorder};
pub use report::{format_float, write_report, Cell, Report, ARTIFACT_VERSION};
pub use scatter::{
    cauchy_difference, run_scattering_cauchy, scattering_cauchy, ScatterOutcome, WindowRow,
    FREE_FLOW_TOLERANCE, MIN_WINDOWS,
};
pub use sweep::{
    almost_conservation_sweep, run_almost_conservation_sweep, SweepOutcome, SweepRow,
    IDENTITY_REGIME_FLOOR, SLOPE_SLACK,
};
pub use thresholds::{
    growth_exponent, thresholds, Applicability, QuadraticRoot, Regime, ThresholdEntry,
    ThresholdInputs, ThresholdReport,
};

use crate::dynamics::checkpoint::load_checkpoint;
use crate::dynamics::mass;
use crate::error::Result;

/// Every threshold regime the configured nonlinearity touches.
pub fn threshold_inputs(config: &RunConfig) -> Vec<ThresholdInputs> {
    let mut out = vec![ThresholdInputs::Single {
        dim: config.dim,
        p: config.p1,
    }];
    if let Some(p2) = config.p2 {
        out.push(ThresholdInputs::Single { dim: config.dim, p: p2 });
        out.push(ThresholdInputs::TwoPowers {
            dim: config.dim,
            p1: config.p1,
            p2,
        });
        let half = p2 / 2.0;
        if config.dim == 2 && half.fract() == 0.0 && half >= 2.0 {
            out.push(ThresholdInputs::EvenPair {
                p: config.p1,
                k: half as u32,
            });
        }
    }
    out
}

/// Echoes every applicability flag into the report header.
pub(crate) fn threshold_header(report: &mut Report, config: &RunConfig) {
    for inputs in threshold_inputs(config) {
        match thresholds(inputs) {
            Ok(t) => {
                for f in &t.flags {
                    report.note(format!(
                        "flag: {} ({inputs}) requires {}: {}",
                        f.regime.label(),
                        f.condition,
                        if f.holds { "holds" } else { "fails" }
                    ));
                }
            }
            Err(e) => report.note(format!("flag: ({inputs}) not computable: {e}")),
        }
    }
}

/// Tabulates [`thresholds`] for the configured nonlinearity. The verdict is
/// whether every root satisfies its quadratic to `1e-12`.
pub fn run_thresholds(config: &RunConfig) -> Result<(Report, Vec<ThresholdReport>)> {
    let mut report = Report::new("thresholds", &["inputs", "name", "value", "residual", "anchor"]);
    report.echo_config(&config.to_text());
    let mut all = Vec::new();
    let mut ok = true;
    for inputs in threshold_inputs(config) {
        let t = thresholds(inputs)?;
        for f in &t.flags {
            report.note(format!(
                "flag: {} ({inputs}) requires {}: {}",
                f.regime.label(),
                f.condition,
                if f.holds { "holds" } else { "fails" }
            ));
        }
        for w in t.warnings() {
            report.note(format!("warning: ({inputs}) {w}"));
        }
        for n in &t.notes {
            report.note(format!("note: ({inputs}) {n}"));
        }
        for e in &t.entries {
            if let Some(r) = e.residual {
                ok &= r.abs() < 1e-12;
            }
            report.push_row(vec![
                Cell::Text(inputs.to_string()),
                e.name.into(),
                e.value.into(),
                Cell::Text(e.residual.map_or("none".into(), format_float)),
                e.regime.map_or("critical index", |r| r.label()).into(),
            ])?;
        }
        all.push(t);
    }
    report.verdict = Some(ok);
    Ok((report, all))
}

/// Header fields and basic measures of a checkpoint file.
pub fn checkpoint_summary(path: &Path) -> Result<Report> {
    let (field, t) = load_checkpoint(path)?;
    let g = field.grid();
    let mut report = Report::new("checkpoint-inspect", &["key", "value"]);
    report.note(format!("file: {}", path.display()));
    for (k, v) in [
        ("dim", Cell::from(g.dim())),
        ("n", Cell::from(g.n())),
        ("length", Cell::Float(g.length())),
        ("t", Cell::Float(t)),
        ("mass", Cell::Float(mass(&field))),
        ("max_modulus", Cell::Float(field.max_modulus())),
        ("boundary_mass", Cell::Float(field.boundary_mass_fraction())),
    ] {
        report.push_row(vec![k.into(), v])?;
    }
    Ok(report)
}

/// Every grid value of a checkpoint as `x[, y], re, im` rows.
pub fn checkpoint_table(path: &Path) -> Result<Report> {
    let (field, t) = load_checkpoint(path)?;
    let g = *field.grid();
    let cols: &[&str] = if g.dim() == 1 { &["x", "re", "im"] } else { &["x", "y", "re", "im"] };
    let mut report = Report::new("checkpoint-convert", cols);
    report.note(format!("file: {}", path.display()));
    report.note(format!("t = {}", format_float(t)));
    for (i, v) in field.values().iter().enumerate() {
        let [x, y] = g.point(i);
        let mut row = vec![Cell::Float(x)];
        if g.dim() == 2 {
            row.push(Cell::Float(y));
        }
        row.push(Cell::Float(v.re));
        row.push(Cell::Float(v.im));
        report.push_row(row)?;
    }
    Ok(report)
}

/// Small, fast configuration shared by the unit tests.
#[cfg(test)]
pub(crate) fn test_config() -> RunConfig {
    RunConfig {
        n: 32,
        length: 16.0,
        data: DataKind::Gaussian,
        amplitude: 0.5,
        width: 1.0,
        s: 0.9,
        dt: 0.01,
        horizon: 0.1,
        ..RunConfig::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_second_power_adds_the_pair_regime() {
        let cfg = RunConfig {
            p1: 3.0,
            p2: Some(4.0),
            ..RunConfig::default()
        };
        let inputs = threshold_inputs(&cfg);
        assert_eq!(inputs.len(), 4);
        assert!(inputs.contains(&ThresholdInputs::EvenPair { p: 3.0, k: 2 }));
        let (report, _) = run_thresholds(&cfg).unwrap();
        assert_eq!(report.verdict, Some(true));
        let text = String::from_utf8(report.to_bytes()).unwrap();
        assert!(text.contains("even-power pair threshold"));
    }

    #[test]
    fn checkpoint_tools() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("u.nlsf");
        let u = test_config().initial_data(1.0).unwrap();
        crate::dynamics::checkpoint::save_checkpoint(&path, &u, 0.25).unwrap();
        let summary = checkpoint_summary(&path).unwrap();
        assert_eq!(summary.rows.len(), 7);
        let table = checkpoint_table(&path).unwrap();
        assert_eq!(table.rows.len(), 32 * 32);
        assert_eq!(table.rows[5][2].as_f64(), Some(u.values()[5].re));
    }
}
