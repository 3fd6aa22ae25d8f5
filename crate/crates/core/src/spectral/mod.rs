//! Periodic-grid fields and frequency-side operators.

mod fft;
mod field;
mod grid;
mod ops;

pub use field::{relative_l2_error, transform, Direction, Field, Side};
pub use grid::Grid;
pub use ops::{
    bernstein_ratio, deriv_symbol, frac_deriv, gradient_norm_sq, l2_norm_spectral, laplacian,
    lebesgue_norm, lp_bump, lp_project, partial, smooth_step, sobolev_norm, DerivKind, LpBand,
};
pub(crate) use fft::fft_in_place;

/// Shorthand for [`Grid::new`].
pub fn make_grid(dim: usize, n: usize, length: f64) -> crate::Result<Grid> {
    Grid::new(dim, n, length)
}
