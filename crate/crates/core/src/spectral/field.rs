use std::fmt;

use num_complex::Complex64;

use super::fft::fft_in_place;
use super::grid::Grid;
use crate::error::{Error, Result};

/// Which representation a [`Field`] currently holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Physical,
    Spectral,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Physical => "physical",
            Side::Spectral => "spectral",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// physical -> spectral
    Forward,
    /// spectral -> physical
    Inverse,
}

/// Complex samples of a function on a periodic grid, tagged with the side
/// they live on. Fields are values: every operation returns a new one.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    grid: Grid,
    side: Side,
    values: Vec<Complex64>,
}

impl Field {
    pub fn new(grid: Grid, side: Side, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        Ok(Self { grid, side, values })
    }

    pub fn zeros(grid: Grid, side: Side) -> Self {
        Self {
            grid,
            side,
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    /// Samples `f(x)` at every grid point; the closure receives `[x, y]`
    /// (with `y = 0` in 1D).
    pub fn from_fn(grid: Grid, mut f: impl FnMut([f64; 2]) -> Complex64) -> Self {
        let values = (0..grid.len()).map(|i| f(grid.point(i))).collect();
        Self {
            grid,
            side: Side::Physical,
            values,
        }
    }

    /// Builds a spectral field from a function of the wavevector.
    pub fn from_spectrum(grid: Grid, mut f: impl FnMut([f64; 2]) -> Complex64) -> Self {
        let values = (0..grid.len()).map(|i| f(grid.wavevector(i))).collect();
        Self {
            grid,
            side: Side::Spectral,
            values,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn to_spectral(&self) -> Field {
        match self.side {
            Side::Spectral => self.clone(),
            Side::Physical => self.clone().into_spectral(),
        }
    }

    pub fn to_physical(&self) -> Field {
        match self.side {
            Side::Physical => self.clone(),
            Side::Spectral => self.clone().into_physical(),
        }
    }

    pub fn into_spectral(mut self) -> Field {
        if self.side == Side::Physical {
            fft_in_place(&mut self.values, self.grid.n(), self.grid.dim(), false);
            self.side = Side::Spectral;
        }
        self
    }

    pub fn into_physical(mut self) -> Field {
        if self.side == Side::Spectral {
            fft_in_place(&mut self.values, self.grid.n(), self.grid.dim(), true);
            self.side = Side::Physical;
        }
        self
    }

    /// Returns a field on `side`, transforming only when needed.
    pub fn on_side(&self, side: Side) -> Field {
        match side {
            Side::Physical => self.to_physical(),
            Side::Spectral => self.to_spectral(),
        }
    }

    pub fn require_side(&self, side: Side) -> Result<()> {
        if self.side != side {
            return Err(Error::SideMismatch {
                expected: side.name(),
                got: self.side.name(),
            });
        }
        Ok(())
    }

    pub fn require_same_grid(&self, other: &Field) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(format!("{:?} vs {:?}", self.grid, other.grid)));
        }
        Ok(())
    }

    /// Multiplies each spectral coefficient by `m(index)`; the result is
    /// returned on the side of the input.
    pub fn apply_multiplier(&self, m: impl Fn(usize) -> f64) -> Field {
        let side = self.side;
        let mut spec = self.to_spectral();
        for (i, v) in spec.values.iter_mut().enumerate() {
            *v *= m(i);
        }
        spec.into_side(side)
    }

    /// Complex variant of [`Field::apply_multiplier`].
    pub fn apply_complex_multiplier(&self, m: impl Fn(usize) -> Complex64) -> Field {
        let side = self.side;
        let mut spec = self.to_spectral();
        for (i, v) in spec.values.iter_mut().enumerate() {
            *v *= m(i);
        }
        spec.into_side(side)
    }

    pub fn into_side(self, side: Side) -> Field {
        match side {
            Side::Physical => self.into_physical(),
            Side::Spectral => self.into_spectral(),
        }
    }

    pub fn map_pointwise(&self, f: impl Fn(Complex64) -> Complex64) -> Field {
        Field {
            grid: self.grid,
            side: self.side,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scale(&self, a: Complex64) -> Field {
        self.map_pointwise(|v| v * a)
    }

    /// `self + a * other`; both must share grid and side.
    pub fn axpy(&self, a: Complex64, other: &Field) -> Result<Field> {
        self.require_same_grid(other)?;
        other.require_side(self.side)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&x, &y)| x + a * y)
            .collect();
        Ok(Field {
            grid: self.grid,
            side: self.side,
            values,
        })
    }

    /// Pointwise product of two physical-side fields.
    pub fn pointwise_mul(&self, other: &Field) -> Result<Field> {
        self.require_same_grid(other)?;
        self.require_side(Side::Physical)?;
        other.require_side(Side::Physical)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(Field {
            grid: self.grid,
            side: Side::Physical,
            values,
        })
    }

    pub fn sub(&self, other: &Field) -> Result<Field> {
        self.axpy(Complex64::new(-1.0, 0.0), other)
    }

    /// Plain `ℓ²` norm of the stored coefficients.
    pub fn l2_coefficients(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_modulus(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// Fraction of the mass sitting in the outer boundary strip.
    pub fn boundary_mass_fraction(&self) -> f64 {
        let phys = self.to_physical();
        let mut total = 0.0;
        let mut edge = 0.0;
        for (i, v) in phys.values.iter().enumerate() {
            let w = v.norm_sqr();
            total += w;
            if self.grid.in_boundary_strip(i) {
                edge += w;
            }
        }
        if total == 0.0 {
            0.0
        } else {
            edge / total
        }
    }
}

/// Side-checked transform.
pub fn transform(f: &Field, direction: Direction) -> Result<Field> {
    match direction {
        Direction::Forward => {
            f.require_side(Side::Physical)?;
            Ok(f.clone().into_spectral())
        }
        Direction::Inverse => {
            f.require_side(Side::Spectral)?;
            Ok(f.clone().into_physical())
        }
    }
}

/// Relative `ℓ²` distance `‖a - b‖ / ‖b‖` (absolute when `b` vanishes),
/// computed on the physical side.
pub fn relative_l2_error(a: &Field, b: &Field) -> f64 {
    let a = a.to_physical();
    let b = b.to_physical();
    let diff: f64 = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let base = b.l2_coefficients();
    if base == 0.0 {
        diff
    } else {
        diff / base
    }
}
