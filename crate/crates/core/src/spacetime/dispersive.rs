use crate::data::REVIVAL_LIMIT;
use crate::dynamics::free_propagate;
use crate::error::{Error, Result};
use crate::spectral::{lebesgue_norm, Field};

/// `‖e^{itΔ}f‖_∞ · t^{d/2} / ‖f‖₁`, bounded by `(4π)^{-d/2}` on the whole
/// space.
///
/// Fails with [`Error::RevivalContamination`] once the evolved field puts
/// more than [`REVIVAL_LIMIT`] of its mass into the boundary strip.
pub fn dispersive_ratio(f: &Field, t: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("time {t} must be positive")));
    }
    let phys = f.to_physical();
    let l1 = lebesgue_norm(&phys, 1.0)?;
    if l1 == 0.0 {
        return Err(Error::DegenerateInput("zero field".into()));
    }
    let evolved = free_propagate(&phys, t).into_physical();
    let fraction = evolved.boundary_mass_fraction();
    if fraction > REVIVAL_LIMIT {
        return Err(Error::RevivalContamination {
            time: t,
            fraction,
            limit: REVIVAL_LIMIT,
        });
    }
    let d = f.grid().dim() as f64;
    Ok(evolved.max_modulus() * t.powf(d / 2.0) / l1)
}

/// Whole-space value of [`dispersive_ratio`] for `A exp(-|x|²/(2σ²))`:
/// `t^{d/2} (1 + 4t²/σ⁴)^{-d/4} / (2πσ²)^{d/2}`.
pub fn gaussian_dispersive_ratio(dim: usize, sigma: f64, t: f64) -> f64 {
    let d = dim as f64;
    let s2 = sigma * sigma;
    t.powf(d / 2.0) * (1.0 + 4.0 * t * t / (s2 * s2)).powf(-d / 4.0)
        / (2.0 * std::f64::consts::PI * s2).powf(d / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::gaussian_profile;
    use crate::spectral::Grid;
    use std::f64::consts::PI;

    #[test]
    fn matches_closed_form_and_increases() {
        let g = Grid::new(2, 256, 64.0).unwrap();
        let f = gaussian_profile(g, 1.0, 1.0, [0.0, 0.0]).unwrap();
        let mut last = 0.0;
        for t in [0.1, 0.2, 0.5, 1.0, 2.0] {
            let r = dispersive_ratio(&f, t).unwrap();
            let exact = gaussian_dispersive_ratio(2, 1.0, t);
            assert!((r - exact).abs() < 1e-6 * exact, "t = {t}: {r} vs {exact}");
            assert!(r > last && r < 1.0 / (4.0 * PI));
            last = r;
        }
    }

    #[test]
    fn one_dimensional_closed_form() {
        let g = Grid::new(1, 512, 128.0).unwrap();
        let f = gaussian_profile(g, 2.0, 1.5, [0.0, 0.0]).unwrap();
        let r = dispersive_ratio(&f, 0.7).unwrap();
        assert!((r - gaussian_dispersive_ratio(1, 1.5, 0.7)).abs() < 1e-9);
    }

    #[test]
    fn small_time_vanishes_and_bad_inputs() {
        let g = Grid::new(2, 64, 32.0).unwrap();
        let f = gaussian_profile(g, 1.0, 1.0, [0.0, 0.0]).unwrap();
        assert!(dispersive_ratio(&f, 1e-8).unwrap() < 1e-8);
        assert!(dispersive_ratio(&f, 0.0).is_err());
        assert!(matches!(dispersive_ratio(&f, 40.0), Err(Error::RevivalContamination { .. })));
    }
}
