use crate::error::{Error, Result};
use crate::spectral::Field;

/// Field snapshots at strictly increasing times.
#[derive(Clone, Debug, Default)]
pub struct TimeSeries {
    t0: f64,
    dt: f64,
    times: Vec<f64>,
    snapshots: Vec<Field>,
}

impl TimeSeries {
    /// Empty series starting at `t0`; `dt` is the solver step that produced
    /// it (informational).
    pub fn new(t0: f64, dt: f64) -> Self {
        Self {
            t0,
            dt,
            times: Vec::new(),
            snapshots: Vec::new(),
        }
    }

    /// Builds a series from explicit samples.
    pub fn from_samples(samples: Vec<(f64, Field)>) -> Result<Self> {
        let t0 = samples.first().map(|s| s.0).unwrap_or(0.0);
        let dt = if samples.len() > 1 {
            samples[1].0 - samples[0].0
        } else {
            0.0
        };
        let mut s = Self::new(t0, dt);
        for (t, f) in samples {
            s.push(t, f)?;
        }
        Ok(s)
    }

    pub fn push(&mut self, t: f64, field: Field) -> Result<()> {
        if let Some(&last) = self.times.last() {
            if !(t > last) {
                return Err(Error::InvalidParameter(format!(
                    "sample times must increase strictly: {t} after {last}"
                )));
            }
        }
        if let Some(first) = self.snapshots.first() {
            field.require_same_grid(first)?;
        }
        self.times.push(t);
        self.snapshots.push(field);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn snapshots(&self) -> &[Field] {
        &self.snapshots
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &Field)> {
        self.times.iter().copied().zip(self.snapshots.iter())
    }

    pub fn first(&self) -> Option<(f64, &Field)> {
        self.iter().next()
    }

    pub fn last(&self) -> Option<(f64, &Field)> {
        self.times.last().copied().zip(self.snapshots.last())
    }

    /// Interval `[t_first, t_last]` covered by the samples.
    pub fn interval(&self) -> Option<(f64, f64)> {
        Some((*self.times.first()?, *self.times.last()?))
    }

    /// Left-endpoint quadrature weights: `t_{j+1} - t_j`, and 0 for the final
    /// sample (a lone sample contributes nothing to a time integral).
    pub fn left_weights(&self) -> Vec<f64> {
        let mut w: Vec<f64> = self.times.windows(2).map(|p| p[1] - p[0]).collect();
        if !self.times.is_empty() {
            w.push(0.0);
        }
        w
    }

    /// Prefix containing samples with `t <= t_end`.
    pub fn truncated(&self, t_end: f64) -> TimeSeries {
        let k = self.times.iter().take_while(|&&t| t <= t_end).count();
        TimeSeries {
            t0: self.t0,
            dt: self.dt,
            times: self.times[..k].to_vec(),
            snapshots: self.snapshots[..k].to_vec(),
        }
    }
}
