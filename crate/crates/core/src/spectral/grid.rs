use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Uniform periodic grid on the box `[-L/2, L/2)^d`.
///
/// Frequencies follow the FFT ordering: index `k < n/2` carries wavenumber
/// `2πk/L`, index `k >= n/2` carries `2π(k - n)/L`. Index `n/2` is the
/// Nyquist mode and has no symmetric partner.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    dim: usize,
    n: usize,
    length: f64,
}

impl Grid {
    pub fn new(dim: usize, n: usize, length: f64) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::InvalidDimension(dim));
        }
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidPointCount(n));
        }
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::NonPositiveLength(length));
        }
        Ok(Self { dim, n, length })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Total number of samples, `n^d`.
    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.n as f64
    }

    /// Quadrature weight `h^d` of one sample.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Lattice step `Δξ = 2π/L`.
    pub fn frequency_step(&self) -> f64 {
        2.0 * PI / self.length
    }

    /// Largest representable per-axis wavenumber magnitude, `πn/L`.
    pub fn nyquist(&self) -> f64 {
        PI * self.n as f64 / self.length
    }

    /// Largest `|ξ|` present on the lattice (the corner in 2D).
    pub fn max_abs_wavenumber(&self) -> f64 {
        self.nyquist() * (self.dim as f64).sqrt()
    }

    /// Signed integer lattice index of an axis position.
    pub fn signed_index(&self, idx: usize) -> i64 {
        if idx < self.n / 2 {
            idx as i64
        } else {
            idx as i64 - self.n as i64
        }
    }

    pub fn axis_wavenumber(&self, idx: usize) -> f64 {
        self.signed_index(idx) as f64 * self.frequency_step()
    }

    pub fn axis_coordinate(&self, idx: usize) -> f64 {
        -0.5 * self.length + idx as f64 * self.spacing()
    }

    /// Per-axis indices of a flat row-major position (last axis fastest).
    pub fn axis_indices(&self, flat: usize) -> [usize; 2] {
        match self.dim {
            1 => [flat, 0],
            _ => [flat / self.n, flat % self.n],
        }
    }

    /// Wavevector of a flat spectral index; unused components are zero.
    pub fn wavevector(&self, flat: usize) -> [f64; 2] {
        let [a, b] = self.axis_indices(flat);
        match self.dim {
            1 => [self.axis_wavenumber(a), 0.0],
            _ => [self.axis_wavenumber(a), self.axis_wavenumber(b)],
        }
    }

    pub fn abs_wavenumber(&self, flat: usize) -> f64 {
        let [a, b] = self.wavevector(flat);
        a.hypot(b)
    }

    /// Physical coordinates of a flat index; unused components are zero.
    pub fn point(&self, flat: usize) -> [f64; 2] {
        let [a, b] = self.axis_indices(flat);
        match self.dim {
            1 => [self.axis_coordinate(a), 0.0],
            _ => [self.axis_coordinate(a), self.axis_coordinate(b)],
        }
    }

    /// True when any axis sits on the Nyquist index.
    pub fn touches_nyquist(&self, flat: usize) -> bool {
        let [a, b] = self.axis_indices(flat);
        a == self.n / 2 || (self.dim == 2 && b == self.n / 2)
    }

    /// `|ξ|` for every spectral index, in storage order.
    pub fn abs_wavenumbers(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.abs_wavenumber(i)).collect()
    }

    /// True for samples in the outer strip `max_i |x_i| >= 3L/8`, used to
    /// monitor wrap-around.
    pub fn in_boundary_strip(&self, flat: usize) -> bool {
        let [x, y] = self.point(flat);
        let edge = 0.375 * self.length;
        x.abs() >= edge || (self.dim == 2 && y.abs() >= edge)
    }

    /// Dyadic band ceilings `1, 2, 4, ...` up to the first power of two
    /// covering every lattice frequency.
    pub fn dyadic_bands(&self) -> Vec<f64> {
        let top = self.max_abs_wavenumber();
        let mut bands = vec![1.0];
        let mut n = 1.0;
        while n < top {
            n *= 2.0;
            bands.push(n);
        }
        bands
    }
}
