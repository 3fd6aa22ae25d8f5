use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::spectral::{Field, Grid};

/// Parameters of a random field sitting exactly at the `H^s` borderline.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoughSpec {
    /// Target regularity, in `(0, 1)`.
    pub s: f64,
    pub seed: u64,
    /// Pointwise scale of the field before localization.
    pub amplitude: f64,
    /// Width of the Gaussian envelope `exp(-|x|²/(2w²))`.
    pub width: f64,
}

impl RoughSpec {
    pub fn new(s: f64, seed: u64, amplitude: f64, width: f64) -> Result<Self> {
        let spec = Self {
            s,
            seed,
            amplitude,
            width,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s > 0.0 && self.s < 1.0) {
            return Err(Error::InvalidParameter(format!("regularity {} outside (0, 1)", self.s)));
        }
        if !(self.amplitude > 0.0) {
            return Err(Error::InvalidParameter(format!("amplitude {} must be positive", self.amplitude)));
        }
        if !(self.width > 0.0) {
            return Err(Error::InvalidParameter(format!("width {} must be positive", self.width)));
        }
        Ok(())
    }
}

/// Random rough data of regularity `s`.
///
/// Fourier-series coefficients are
/// `c_ξ = amplitude · (2π/L)^{d/2} · ⟨ξ⟩^{-(s + d/2)} · e^{iφ_ξ}` with
/// `⟨ξ⟩ = 1 + |ξ|` and phases drawn uniformly from a `ChaCha8` stream seeded
/// with `spec.seed`, one draw per mode in storage order. The `(2π/L)^{d/2}`
/// factor keeps the pointwise variance independent of the box. The
/// synthesized field is then multiplied by the envelope. Nyquist modes are
/// left empty.
pub fn rough_sample(grid: Grid, spec: &RoughSpec) -> Result<Field> {
    spec.validate()?;
    let d = grid.dim() as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let scale = spec.amplitude * (2.0 * PI / grid.length()).powf(d / 2.0);
    // unitary inverse transform carries n^{-d/2}; undo it to get Σ c_ξ e^{iξx}
    let to_series = (grid.len() as f64).sqrt();
    let mut values = Vec::with_capacity(grid.len());
    for i in 0..grid.len() {
        let phase = rng.gen_range(0.0..2.0 * PI);
        if grid.touches_nyquist(i) {
            values.push(Complex64::new(0.0, 0.0));
            continue;
        }
        let bracket = 1.0 + grid.abs_wavenumber(i);
        let magnitude = scale * bracket.powf(-(spec.s + d / 2.0)) * to_series;
        values.push(Complex64::from_polar(magnitude, phase));
    }
    let field = Field::new(grid, crate::spectral::Side::Spectral, values)?.into_physical();
    let w2 = spec.width * spec.width;
    let envelope = Field::from_fn(grid, |[x, y]| Complex64::new((-(x * x + y * y) / (2.0 * w2)).exp(), 0.0));
    field.pointwise_mul(&envelope)
}

/// Random field with independent uniform coefficients on `|ξ| <= band`,
/// Nyquist modes excluded.
pub fn random_band_limited(grid: Grid, seed: u64, band: f64) -> Field {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..grid.len())
        .map(|i| {
            let re = rng.gen_range(-1.0..1.0);
            let im = rng.gen_range(-1.0..1.0);
            if grid.touches_nyquist(i) || grid.abs_wavenumber(i) > band {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(re, im)
            }
        })
        .collect();
    Field::new(grid, crate::spectral::Side::Spectral, values)
        .expect("grid length")
        .into_physical()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let g = Grid::new(2, 32, 2.0 * PI).unwrap();
        let spec = RoughSpec::new(0.6, 42, 1.0, 0.5).unwrap();
        let a = rough_sample(g, &spec).unwrap();
        let b = rough_sample(g, &spec).unwrap();
        assert_eq!(a, b);
        let c = rough_sample(g, &RoughSpec { seed: 43, ..spec }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_out_of_range_regularity() {
        assert!(RoughSpec::new(1.0, 0, 1.0, 1.0).is_err());
        assert!(RoughSpec::new(0.0, 0, 1.0, 1.0).is_err());
        assert!(RoughSpec::new(0.5, 0, -1.0, 1.0).is_err());
    }

    #[test]
    fn band_limited_respects_band() {
        let g = Grid::new(2, 32, 2.0 * PI).unwrap();
        let f = random_band_limited(g, 1, 5.0).to_spectral();
        for (i, v) in f.values().iter().enumerate() {
            if g.abs_wavenumber(i) > 5.0 {
                assert!(v.norm() < 1e-13);
            }
        }
    }
}
