use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{Field, Grid, Side};

/// Boundary-strip mass fraction above which a rescaled field is rejected.
pub const SUPPORT_OVERFLOW_LIMIT: f64 = 1e-8;

/// Evaluates the trigonometric interpolant of `f` at `x / lambda` for every
/// point `x` of `target`, separably along each axis. The Nyquist coefficient
/// is split evenly between `±πn/L`.
fn interpolate_dilated(f: &Field, lambda: f64, target: Grid) -> Field {
    let src = *f.grid();
    let spec = f.to_spectral();
    let n = src.n();
    let half_len = 0.5 * src.length();
    let norm = (src.len() as f64).sqrt().recip();

    // basis[a][k] = (split) e^{iξ_k (x'_a/λ + L/2)}
    let basis: Vec<Vec<Complex64>> = (0..target.n())
        .map(|a| {
            let x = target.axis_coordinate(a) / lambda + half_len;
            (0..n)
                .map(|k| {
                    if k == n / 2 {
                        let xi = src.nyquist();
                        Complex64::new((xi * x).cos(), 0.0)
                    } else {
                        Complex64::from_polar(1.0, src.axis_wavenumber(k) * x)
                    }
                })
                .collect()
        })
        .collect();

    let m = target.n();
    let values = match src.dim() {
        1 => (0..m)
            .map(|a| {
                basis[a]
                    .iter()
                    .zip(spec.values())
                    .map(|(b, c)| b * c)
                    .sum::<Complex64>()
                    * norm
            })
            .collect(),
        _ => {
            // contract the first axis, then the second
            let coeffs = spec.values();
            let mut partial = vec![Complex64::new(0.0, 0.0); m * n];
            for a in 0..m {
                let row = &mut partial[a * n..(a + 1) * n];
                for (ka, b) in basis[a].iter().enumerate() {
                    let src_row = &coeffs[ka * n..(ka + 1) * n];
                    for (acc, c) in row.iter_mut().zip(src_row) {
                        *acc += b * c;
                    }
                }
            }
            let mut out = vec![Complex64::new(0.0, 0.0); m * m];
            for a in 0..m {
                let row = &partial[a * n..(a + 1) * n];
                for b in 0..m {
                    out[a * m + b] = row
                        .iter()
                        .zip(&basis[b])
                        .map(|(r, e)| r * e)
                        .sum::<Complex64>()
                        * norm;
                }
            }
            out
        }
    };
    Field::new(target, Side::Physical, values).expect("target grid length")
}

/// `u^λ(x) = λ^{-2/p} u(x/λ)`, sampled on `target` (the input grid when
/// `None`) by spectral interpolation.
///
/// Fails with [`Error::SupportOverflow`] when the rescaled field puts more
/// than [`SUPPORT_OVERFLOW_LIMIT`] of its mass in the boundary strip.
pub fn scale_transform(f: &Field, lambda: f64, p: f64, target: Option<Grid>) -> Result<Field> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!("scale {lambda} must be positive")));
    }
    if !(p > 0.0) {
        return Err(Error::InvalidParameter(format!("exponent {p} must be positive")));
    }
    let target = target.unwrap_or(*f.grid());
    if target.dim() != f.grid().dim() {
        return Err(Error::GridMismatch("target grid has a different dimension".into()));
    }
    let amplitude = lambda.powf(-2.0 / p);
    let out = if lambda == 1.0 && target == *f.grid() {
        f.to_physical()
    } else {
        interpolate_dilated(f, lambda, target)
    };
    let out = out.scale(Complex64::new(amplitude, 0.0));
    let fraction = out.boundary_mass_fraction();
    if fraction > SUPPORT_OVERFLOW_LIMIT {
        return Err(Error::SupportOverflow {
            fraction,
            limit: SUPPORT_OVERFLOW_LIMIT,
        });
    }
    Ok(out)
}
