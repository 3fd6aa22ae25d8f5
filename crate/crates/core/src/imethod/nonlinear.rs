use num_complex::Complex64;

use crate::dynamics::NlsModel;
use crate::spectral::{fft_in_place, Field, Grid, Side};

/// How `f(u)` is formed as a grid function.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NonlinearEval {
    /// Collocation on the simulation grid, the same values the split-step
    /// flow and the potential energy see.
    #[default]
    Pointwise,
    /// Trigonometric interpolation onto a grid with `3n/2` points per axis,
    /// pointwise evaluation there, then truncation back to the original
    /// modes. Suppresses aliasing of the high harmonics of `|u|^p u`.
    Oversampled,
}

impl NonlinearEval {
    pub fn name(self) -> &'static str {
        match self {
            NonlinearEval::Pointwise => "pointwise",
            NonlinearEval::Oversampled => "oversampled",
        }
    }
}

/// Padded length used by [`NonlinearEval::Oversampled`].
pub fn oversampled_len(n: usize) -> usize {
    3 * n / 2
}

/// `f(u)` on the grid of `u`, physical side.
pub fn nonlinear_field(u: &Field, model: &NlsModel, eval: NonlinearEval) -> Field {
    match eval {
        NonlinearEval::Pointwise => u.to_physical().map_pointwise(|v| model.nonlinearity(v)),
        NonlinearEval::Oversampled => oversampled(u, model),
    }
}

/// Flat index on an `m`-point axis of the mode with signed index `k`.
fn wrap(k: i64, m: usize) -> usize {
    k.rem_euclid(m as i64) as usize
}

fn oversampled(u: &Field, model: &NlsModel) -> Field {
    let grid: Grid = *u.grid();
    let (n, d) = (grid.n(), grid.dim());
    let m = oversampled_len(n);
    let big_len = m.pow(d as u32);
    let spec = u.to_spectral();
    let to_big = (big_len as f64 / grid.len() as f64).sqrt();

    let place = |flat: usize| -> usize {
        let idx = grid.axis_indices(flat);
        let signed = |a: usize| wrap(if a < n / 2 { a as i64 } else { a as i64 - n as i64 }, m);
        if d == 1 {
            signed(idx[0])
        } else {
            signed(idx[0]) * m + signed(idx[1])
        }
    };

    let mut big = vec![Complex64::new(0.0, 0.0); big_len];
    for (i, v) in spec.values().iter().enumerate() {
        big[place(i)] = v * to_big;
    }
    fft_in_place(&mut big, m, d, true);
    for v in big.iter_mut() {
        *v = model.nonlinearity(*v);
    }
    fft_in_place(&mut big, m, d, false);
    let values = (0..grid.len()).map(|i| big[place(i)] / to_big).collect();
    Field::new(grid, Side::Spectral, values)
        .expect("grid length")
        .into_physical()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::random_band_limited;
    use crate::spectral::relative_l2_error;
    use std::f64::consts::PI;

    #[test]
    fn pointwise_matches_model() {
        let g = Grid::new(2, 16, 4.0).unwrap();
        let model = NlsModel::pure_power(2, 3.0).unwrap();
        let u = random_band_limited(g, 2, 5.0);
        let f = nonlinear_field(&u, &model, NonlinearEval::Pointwise);
        for (a, b) in f.values().iter().zip(u.values()) {
            assert_eq!(*a, model.nonlinearity(*b));
        }
    }

    #[test]
    fn oversampling_removes_cubic_aliasing() {
        // cubic of a band-limited field: the exact product has modes up to
        // three times the band; both evaluations agree on the modes kept
        let g = Grid::new(1, 32, 2.0 * PI).unwrap();
        let model = NlsModel::pure_power(1, 2.0).unwrap();
        let u = random_band_limited(g, 8, 5.0);
        // exact cubic from a grid large enough to hold every harmonic
        let fine = Grid::new(1, 64, 2.0 * PI).unwrap();
        let u_fine = {
            let spec = u.to_spectral();
            let vals = (0..64)
                .map(|k| {
                    let signed = if k < 32 { k as i64 } else { k as i64 - 64 };
                    if signed.abs() < 16 {
                        spec.values()[wrap(signed, 32)] * 2f64.sqrt()
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect();
            Field::new(fine, Side::Spectral, vals).unwrap()
        };
        let exact_fine = nonlinear_field(&u_fine, &model, NonlinearEval::Pointwise).to_spectral();
        let exact = Field::new(
            g,
            Side::Spectral,
            (0..32)
                .map(|k| {
                    let signed = if k < 16 { k as i64 } else { k as i64 - 32 };
                    exact_fine.values()[wrap(signed, 64)] / 2f64.sqrt()
                })
                .collect(),
        )
        .unwrap();
        let over = nonlinear_field(&u, &model, NonlinearEval::Oversampled);
        let point = nonlinear_field(&u, &model, NonlinearEval::Pointwise);
        assert!(relative_l2_error(&over, &exact) < 1e-12);
        // band 5 cubed reaches 15, which stays below the Nyquist index 16:
        // plain collocation is exact too
        assert!(relative_l2_error(&point, &exact) < 1e-12);
    }

    #[test]
    fn oversampling_helps_when_harmonics_alias() {
        let g = Grid::new(1, 32, 2.0 * PI).unwrap();
        let model = NlsModel::pure_power(1, 2.0).unwrap();
        // band 9: cubic harmonics up to 27 alias on 32 points but not on 48
        let u = random_band_limited(g, 4, 9.0);
        let big = Grid::new(1, 128, 2.0 * PI).unwrap();
        let spec = u.to_spectral();
        let u_big = Field::new(
            big,
            Side::Spectral,
            (0..128)
                .map(|k| {
                    let signed = if k < 64 { k as i64 } else { k as i64 - 128 };
                    if signed.abs() < 16 {
                        spec.values()[wrap(signed, 32)] * 2.0
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect(),
        )
        .unwrap();
        let exact_big = nonlinear_field(&u_big, &model, NonlinearEval::Pointwise).to_spectral();
        let truncate = |f: &Field| -> Vec<Complex64> {
            let s = f.to_spectral();
            (0..32)
                .map(|k| {
                    let signed = if k < 16 { k as i64 } else { k as i64 - 32 };
                    s.values()[wrap(signed, 32)]
                })
                .collect()
        };
        let exact: Vec<Complex64> = (0..32)
            .map(|k| {
                let signed = if k < 16 { k as i64 } else { k as i64 - 32 };
                exact_big.values()[wrap(signed, 128)] / 2.0
            })
            .collect();
        let err = |v: Vec<Complex64>| -> f64 {
            v.iter().zip(&exact).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
        };
        let over = err(truncate(&nonlinear_field(&u, &model, NonlinearEval::Oversampled)));
        let point = err(truncate(&nonlinear_field(&u, &model, NonlinearEval::Pointwise)));
        assert!(over < 1e-3 * point, "oversampled {over}, pointwise {point}");
    }

    #[test]
    fn two_dimensional_constant_is_exact() {
        let g = Grid::new(2, 16, 3.0).unwrap();
        let model = NlsModel::pure_power(2, 4.0).unwrap();
        let c = Complex64::new(0.7, -0.2);
        let u = Field::from_fn(g, |_| c);
        let f = nonlinear_field(&u, &model, NonlinearEval::Oversampled);
        for v in f.values() {
            assert!((v - model.nonlinearity(c)).norm() < 1e-14);
        }
    }
}
