use crate::error::{Error, Result};
use crate::spectral::{lebesgue_norm, Field};

/// Running left-endpoint quadrature of `‖u‖_{L^q_t L^r_x}`.
///
/// Each sample contributes `‖u(t_j)‖_r^q · Δt_j`, where `Δt_j` is the time
/// until the next sample; for `q = ∞` the running maximum is kept instead.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpaceTimeAccumulator {
    q: f64,
    r: f64,
    sum: f64,
    max: f64,
    duration: f64,
    samples: usize,
}

impl SpaceTimeAccumulator {
    pub fn new(q: f64, r: f64) -> Result<Self> {
        for (name, e) in [("q", q), ("r", r)] {
            if !(e >= 1.0) {
                return Err(Error::InvalidExponent(format!("{name} = {e} below 1")));
            }
        }
        Ok(Self {
            q,
            r,
            sum: 0.0,
            max: 0.0,
            duration: 0.0,
            samples: 0,
        })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Adds the sample `f` with time weight `dt`.
    pub fn accumulate(&mut self, f: &Field, dt: f64) -> Result<()> {
        let norm = lebesgue_norm(&f.to_physical(), self.r)?;
        self.accumulate_norm(norm, dt)
    }

    /// Adds a sample whose spatial `L^r` norm is already known.
    pub fn accumulate_norm(&mut self, norm: f64, dt: f64) -> Result<()> {
        if !(dt >= 0.0) {
            return Err(Error::InvalidParameter(format!("time weight {dt} is negative")));
        }
        if self.q.is_infinite() {
            self.max = self.max.max(norm);
        } else {
            self.sum += norm.powf(self.q) * dt;
        }
        self.duration += dt;
        self.samples += 1;
        Ok(())
    }

    /// `∫ ‖u‖_r^q dt` (or the running max for `q = ∞`): the norm raised to
    /// the power `q`.
    pub fn integral(&self) -> f64 {
        if self.q.is_infinite() {
            self.max
        } else {
            self.sum
        }
    }

    /// The norm estimate.
    pub fn finalize(&self) -> f64 {
        if self.q.is_infinite() {
            self.max
        } else {
            self.sum.powf(1.0 / self.q)
        }
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn samples(&self) -> usize {
        self.samples
    }
}
