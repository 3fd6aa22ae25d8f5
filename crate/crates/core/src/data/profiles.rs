use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{Field, Grid};

/// Boundary-strip mass fraction allowed for smooth initial data.
pub const INITIAL_BOUNDARY_LIMIT: f64 = 1e-10;

/// Boundary-strip mass fraction above which periodic wrap-around is deemed
/// to contaminate a whole-space comparison.
pub const REVIVAL_LIMIT: f64 = 1e-6;

/// `A exp(-|x - c|²/(2σ²))`.
pub fn gaussian_profile(grid: Grid, amplitude: f64, sigma: f64, center: [f64; 2]) -> Result<Field> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidParameter(format!("width {sigma} must be positive")));
    }
    let f = Field::from_fn(grid, |[x, y]| {
        let dx = x - center[0];
        let dy = if grid.dim() == 2 { y - center[1] } else { 0.0 };
        Complex64::new(amplitude * (-(dx * dx + dy * dy) / (2.0 * sigma * sigma)).exp(), 0.0)
    });
    let fraction = f.boundary_mass_fraction();
    if fraction > INITIAL_BOUNDARY_LIMIT {
        return Err(Error::BoundaryMass {
            fraction,
            limit: INITIAL_BOUNDARY_LIMIT,
        });
    }
    Ok(f)
}

/// Whole-space free evolution `e^{itΔ}` of the centered Gaussian
/// `A exp(-|x|²/(2σ²))`:
///
/// `A (σ²/(σ² + 2it))^{d/2} exp(-|x|²/(2(σ² + 2it)))`.
///
/// Its modulus peaks at `A (1 + 4t²/σ⁴)^{-d/4}`.
pub fn exact_free_gaussian(grid: Grid, amplitude: f64, sigma: f64, t: f64) -> Result<Field> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidParameter(format!("width {sigma} must be positive")));
    }
    let s2 = sigma * sigma;
    let width = Complex64::new(s2, 2.0 * t);
    let prefactor = amplitude * (Complex64::new(s2, 0.0) / width).powf(grid.dim() as f64 / 2.0);
    let f = Field::from_fn(grid, |[x, y]| {
        let r2 = x * x + y * y;
        prefactor * (-r2 / (2.0 * width)).exp()
    });
    let fraction = f.boundary_mass_fraction();
    if fraction > REVIVAL_LIMIT {
        return Err(Error::RevivalContamination {
            time: t,
            fraction,
            limit: REVIVAL_LIMIT,
        });
    }
    Ok(f)
}

/// Peak modulus of [`exact_free_gaussian`].
pub fn free_gaussian_peak(dim: usize, amplitude: f64, sigma: f64, t: f64) -> f64 {
    amplitude * (1.0 + 4.0 * t * t / sigma.powi(4)).powf(-(dim as f64) / 4.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::mass;
    use std::f64::consts::PI;

    #[test]
    fn unit_gaussian_mass() {
        let g = Grid::new(2, 128, 32.0).unwrap();
        let f = gaussian_profile(g, 1.0, 1.0, [0.0, 0.0]).unwrap();
        assert!((mass(&f) - PI).abs() < 1e-6 * PI);
    }

    #[test]
    fn zero_amplitude() {
        let g = Grid::new(2, 16, 8.0).unwrap();
        let f = gaussian_profile(g, 0.0, 1.0, [0.0, 0.0]).unwrap();
        assert_eq!(f.max_modulus(), 0.0);
    }

    #[test]
    fn too_wide_for_box() {
        let g = Grid::new(2, 32, 8.0).unwrap();
        assert!(matches!(
            gaussian_profile(g, 1.0, 3.0, [0.0, 0.0]),
            Err(Error::BoundaryMass { .. })
        ));
    }

    #[test]
    fn exact_solution_at_zero_is_profile() {
        let g = Grid::new(2, 64, 32.0).unwrap();
        let a = exact_free_gaussian(g, 1.3, 1.1, 0.0).unwrap();
        let b = gaussian_profile(g, 1.3, 1.1, [0.0, 0.0]).unwrap();
        assert!(crate::spectral::relative_l2_error(&a, &b) < 1e-15);
    }

    #[test]
    fn exact_solution_keeps_mass_and_peak() {
        let g = Grid::new(2, 128, 32.0).unwrap();
        let m0 = mass(&exact_free_gaussian(g, 1.0, 1.0, 0.0).unwrap());
        let f = exact_free_gaussian(g, 1.0, 1.0, 0.7).unwrap();
        assert!(((mass(&f) - m0) / m0).abs() < 1e-8);
        let peak = free_gaussian_peak(2, 1.0, 1.0, 0.7);
        assert!((f.max_modulus() - peak).abs() < 1e-6);
    }

    #[test]
    fn revival_flagged() {
        let g = Grid::new(2, 64, 16.0).unwrap();
        assert!(matches!(
            exact_free_gaussian(g, 1.0, 1.0, 10.0),
            Err(Error::RevivalContamination { .. })
        ));
    }
}
