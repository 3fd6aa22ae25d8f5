use crate::error::{Error, Result};
use crate::spectral::Field;

/// Returned by [`measured_regularity`] when the spectrum decays faster than
/// any power (some shell in the fit range is numerically empty).
pub const SMOOTH_SENTINEL: f64 = f64::INFINITY;

/// One dyadic shell `N <= |ξ| < 2N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Shell {
    pub lower: f64,
    pub modes: usize,
    /// Mean of `log⟨ξ⟩` over the shell's modes.
    pub mean_log_bracket: f64,
    /// Mean `|û|²` per mode.
    pub mean_power: f64,
}

/// Dyadic shells `[N, 2N)` with `N` a power of two, `N >= 4Δξ` and
/// `2N <= πn/L`, so every shell is fully resolved and well populated.
pub fn dyadic_shells(f: &Field) -> Vec<Shell> {
    let grid = *f.grid();
    let spec = f.to_spectral();
    let lowest = (4.0 * grid.frequency_step()).log2().ceil();
    let mut shells = Vec::new();
    let mut lower = 2f64.powf(lowest);
    while 2.0 * lower <= grid.nyquist() + 1e-12 {
        let (mut count, mut logs, mut power) = (0usize, 0.0, 0.0);
        for (i, v) in spec.values().iter().enumerate() {
            let k = grid.abs_wavenumber(i);
            if k >= lower && k < 2.0 * lower {
                count += 1;
                logs += (1.0 + k).ln();
                power += v.norm_sqr();
            }
        }
        if count > 0 {
            shells.push(Shell {
                lower,
                modes: count,
                mean_log_bracket: logs / count as f64,
                mean_power: power / count as f64,
            });
        }
        lower *= 2.0;
    }
    shells
}

/// Estimates the Sobolev borderline `s` of a field whose coefficients behave
/// like `⟨ξ⟩^{-(s + d/2)}`.
///
/// Fits `log(mean |û|² per mode)` against `mean log⟨ξ⟩` over the dyadic
/// shells by least squares; under the power-law model the slope is
/// `-(2s + d)`, so `s = -(slope + d)/2`. A white spectrum gives `-d/2`.
/// Spectra with numerically empty shells return [`SMOOTH_SENTINEL`].
pub fn measured_regularity(f: &Field) -> Result<f64> {
    let shells = dyadic_shells(f);
    if shells.len() < 3 {
        return Err(Error::TooFewShells {
            needed: 3,
            found: shells.len(),
        });
    }
    let peak = shells.iter().map(|s| s.mean_power).fold(0.0, f64::max);
    if peak == 0.0 {
        return Err(Error::DegenerateInput("field has no spectral content in the fit range".into()));
    }
    if shells.iter().any(|s| s.mean_power < 1e-28 * peak) {
        return Ok(SMOOTH_SENTINEL);
    }
    let xs: Vec<f64> = shells.iter().map(|s| s.mean_log_bracket).collect();
    let ys: Vec<f64> = shells.iter().map(|s| s.mean_power.ln()).collect();
    let slope = least_squares_slope(&xs, &ys);
    let d = f.grid().dim() as f64;
    Ok(-(slope + d) / 2.0)
}

/// Ordinary least-squares slope of `ys` against `xs`.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
