//! Per-instant diagnostics of a single trajectory.

use crate::dynamics::checkpoint::save_checkpoint;
use crate::dynamics::{energy, mass, simulate, NlsModel, Recorder, SimulateOptions, TimeSeries};
use crate::error::{Error, Result};
use crate::imethod::{modified_energy, IMultiplierSpec};
use crate::spacetime::{split_by_smallness, MorawetzVariant, SpaceTimeAccumulator};
use crate::spectral::{lebesgue_norm, sobolev_norm, DerivKind, Field};

use super::config::RunConfig;
use super::report::{Cell, Report};
use super::threshold_header;

/// One diagnostics row.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub mass: f64,
    pub energy: f64,
    pub modified_energy: f64,
    pub hs_norm: f64,
    pub h_half_norm: f64,
    /// Running `∫₀ᵗ ‖u‖_r^q` for each Morawetz variant of the dimension.
    pub morawetz: Vec<f64>,
    pub boundary_mass: f64,
    pub max_modulus: f64,
}

/// Collects a [`DiagnosticsRecord`] every `every` calls, and keeps the
/// Morawetz integrals current at every call with left-endpoint weights.
pub struct DiagnosticsRecorder {
    model: NlsModel,
    spec: IMultiplierSpec,
    every: usize,
    calls: usize,
    variants: Vec<MorawetzVariant>,
    accumulators: Vec<SpaceTimeAccumulator>,
    previous: Option<(f64, Vec<f64>)>,
    pub records: Vec<DiagnosticsRecord>,
}

impl DiagnosticsRecorder {
    pub fn new(model: NlsModel, spec: IMultiplierSpec, every: usize) -> Result<Self> {
        let variants: Vec<MorawetzVariant> = MorawetzVariant::ALL
            .into_iter()
            .filter(|v| v.dim() == model.dim())
            .collect();
        let accumulators = variants
            .iter()
            .map(|v| {
                let (q, r) = v.lhs_exponents();
                SpaceTimeAccumulator::new(q, r)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            model,
            spec,
            every: every.max(1),
            calls: 0,
            variants,
            accumulators,
            previous: None,
            records: Vec::new(),
        })
    }

    pub fn variants(&self) -> &[MorawetzVariant] {
        &self.variants
    }

    pub fn columns(&self) -> Vec<String> {
        let mut cols: Vec<String> = ["t", "mass", "energy", "modified_energy", "hs_norm", "h_half_norm"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        cols.extend(self.variants.iter().map(|v| format!("morawetz_{}", v.name())));
        cols.extend(["boundary_mass".to_string(), "max_modulus".to_string()]);
        cols
    }

    fn snapshot(&self, t: f64, u: &Field) -> Result<DiagnosticsRecord> {
        Ok(DiagnosticsRecord {
            t,
            mass: mass(u),
            energy: energy(u, &self.model),
            modified_energy: modified_energy(u, &self.model, &self.spec),
            hs_norm: sobolev_norm(u, self.spec.s, DerivKind::Inhomogeneous)?,
            h_half_norm: sobolev_norm(u, 0.5, DerivKind::Homogeneous)?,
            morawetz: self.accumulators.iter().map(|a| a.integral()).collect(),
            boundary_mass: u.boundary_mass_fraction(),
            max_modulus: u.max_modulus(),
        })
    }

    /// Adds a closing row at `t` unless the last row is already there.
    pub fn finish(&mut self, t: f64, u: &Field) -> Result<()> {
        if self.records.last().map(|r| r.t) != Some(t) {
            let row = self.snapshot(t, u)?;
            self.records.push(row);
        }
        Ok(())
    }
}

impl Recorder for DiagnosticsRecorder {
    fn record(&mut self, t: f64, u: &Field) -> Result<()> {
        if let Some((t_prev, norms)) = self.previous.take() {
            for (acc, n) in self.accumulators.iter_mut().zip(norms) {
                acc.accumulate_norm(n, t - t_prev)?;
            }
        }
        let norms = self
            .variants
            .iter()
            .map(|v| lebesgue_norm(u, v.lhs_exponents().1))
            .collect::<Result<Vec<_>>>()?;
        self.previous = Some((t, norms));
        if self.calls % self.every == 0 {
            let row = self.snapshot(t, u)?;
            self.records.push(row);
        }
        self.calls += 1;
        Ok(())
    }
}

/// Runs one trajectory and tabulates its diagnostics. Also reports how many
/// pieces of Morawetz-norm size at most `eta` the trajectory splits into,
/// and writes the final state to `config.checkpoint` when set.
pub fn run_simulation(config: &RunConfig) -> Result<(Report, TimeSeries)> {
    let model = config.model()?;
    let spec = config.i_spec(config.cutoff)?;
    let u0 = config.initial_data(1.0)?;
    let mut recorder = DiagnosticsRecorder::new(model, spec, config.record_every)?;
    let opts = SimulateOptions::new(config.horizon, config.dt).snapshot_every(Some(config.record_every));
    let series = simulate(&u0, &model, opts, &mut [&mut recorder])?;
    let (t_end, u_end) = series.last().ok_or(Error::EmptySeries)?;
    recorder.finish(t_end, u_end)?;

    let columns = recorder.columns();
    let col_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut report = Report::new("simulate", &col_refs);
    report.echo_config(&config.to_text());
    threshold_header(&mut report, config);

    let (q, r) = if config.dim == 2 { (5.0, 5.0) } else { (8.0, 8.0) };
    match split_by_smallness(&series, q, r, config.eta) {
        Ok(pieces) => report.note(format!(
            "smallness partition: {} pieces with L^{q}_t L^{r}_x norm <= eta",
            pieces.len()
        )),
        Err(Error::IndivisibleSample { time, value, .. }) => report.note(format!(
            "smallness partition: sample at t = {time} alone has norm {value} above eta"
        )),
        Err(e) => return Err(e),
    }
    for rec in &recorder.records {
        let mut row: Vec<Cell> = vec![
            rec.t.into(),
            rec.mass.into(),
            rec.energy.into(),
            rec.modified_energy.into(),
            rec.hs_norm.into(),
            rec.h_half_norm.into(),
        ];
        row.extend(rec.morawetz.iter().map(|&v| Cell::Float(v)));
        row.push(rec.boundary_mass.into());
        row.push(rec.max_modulus.into());
        report.push_row(row)?;
    }
    if let Some(path) = &config.checkpoint {
        save_checkpoint(path, u_end, t_end)?;
    }
    Ok((report, series))
}
