//! Free propagator, pointwise nonlinear phase, Strang steps and the
//! time-marching driver.

use num_complex::Complex64;

use super::model::NlsModel;
use super::series::TimeSeries;
use crate::error::{Error, Result};
use crate::spectral::{Field, Grid, Side};

/// Abort threshold for `max|u|`, relative to the initial maximum.
pub const BLOW_UP_FACTOR: f64 = 1e6;

/// `e^{itΔ} f`: multiplies every mode by `e^{-i|ξ|²t}`. Returned on the
/// input's side.
pub fn free_propagate(f: &Field, t: f64) -> Field {
    if t == 0.0 {
        return f.clone();
    }
    let grid = *f.grid();
    f.apply_complex_multiplier(|i| {
        let k = grid.abs_wavenumber(i);
        Complex64::from_polar(1.0, -k * k * t)
    })
}

/// Exact flow of `i u_t = f(u)` over `dt`: `u ↦ u e^{-i dt Σλⱼ|u|^{pⱼ}}`.
pub fn nonlinear_phase(f: &Field, dt: f64, model: &NlsModel) -> Result<Field> {
    f.require_side(Side::Physical)?;
    Ok(f.map_pointwise(|u| u * Complex64::from_polar(1.0, -dt * model.phase_rate(u.norm()))))
}

fn apply_phase_in_place(f: &mut Field, dt: f64, model: &NlsModel) {
    for u in f.values_mut() {
        *u *= Complex64::from_polar(1.0, -dt * model.phase_rate(u.norm()));
    }
}

/// One Strang step `e^{i(dt/2)Δ} ∘ N(dt) ∘ e^{i(dt/2)Δ}`.
pub fn strang_step(f: &Field, dt: f64, model: &NlsModel) -> Result<Field> {
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter(format!("dt = {dt} must be positive")));
    }
    let side = f.side();
    let mut stepper = StrangStepper::new(*f.grid(), dt, *model);
    let mut u = f.to_physical();
    stepper.step(&mut u);
    Ok(u.into_side(side))
}

/// Reusable Strang integrator with cached half-step propagator.
pub struct StrangStepper {
    dt: f64,
    model: NlsModel,
    half: Vec<Complex64>,
}

impl StrangStepper {
    pub fn new(grid: Grid, dt: f64, model: NlsModel) -> Self {
        let half = (0..grid.len())
            .map(|i| {
                let k = grid.abs_wavenumber(i);
                Complex64::from_polar(1.0, -k * k * 0.5 * dt)
            })
            .collect();
        Self { dt, model, half }
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Advances a physical-side field in place.
    pub fn step(&mut self, u: &mut Field) {
        self.half_free(u);
        if !self.model.is_linear() {
            apply_phase_in_place(u, self.dt, &self.model);
        }
        self.half_free(u);
    }

    fn half_free(&self, u: &mut Field) {
        let mut spec = std::mem::replace(u, Field::zeros(*u.grid(), Side::Physical)).into_spectral();
        for (v, m) in spec.values_mut().iter_mut().zip(&self.half) {
            *v *= m;
        }
        *u = spec.into_physical();
    }
}

/// Observer invoked at `t = t₀` and after every step.
pub trait Recorder {
    fn record(&mut self, t: f64, u: &Field) -> Result<()>;
}

impl<F> Recorder for F
where
    F: FnMut(f64, &Field) -> Result<()>,
{
    fn record(&mut self, t: f64, u: &Field) -> Result<()> {
        self(t, u)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimulateOptions {
    pub horizon: f64,
    pub dt: f64,
    /// Keep a snapshot every this many steps (plus the first and last).
    /// `None` stores only the endpoints.
    pub snapshot_every: Option<usize>,
}

impl SimulateOptions {
    pub fn new(horizon: f64, dt: f64) -> Self {
        Self {
            horizon,
            dt,
            snapshot_every: Some(10),
        }
    }

    pub fn snapshot_every(mut self, every: Option<usize>) -> Self {
        self.snapshot_every = every;
        self
    }

    /// Step sizes marching `[0, horizon]`; the last step may be partial.
    pub fn steps(&self) -> Vec<f64> {
        let full = (self.horizon / self.dt * (1.0 - 1e-12)).floor() as usize;
        let mut steps = vec![self.dt; full];
        let rest = self.horizon - full as f64 * self.dt;
        if rest > 1e-12 * self.dt {
            steps.push(rest);
        }
        steps
    }
}

/// Marches Strang steps from `t = 0` to `opts.horizon`.
///
/// Recorders see the initial state and the state after every step. Aborts
/// with [`Error::NonFinite`] or [`Error::BlowUp`] when the discretization
/// fails.
pub fn simulate(
    u0: &Field,
    model: &NlsModel,
    opts: SimulateOptions,
    recorders: &mut [&mut dyn Recorder],
) -> Result<TimeSeries> {
    if !(opts.horizon > 0.0) {
        return Err(Error::InvalidParameter(format!("horizon {} must be positive", opts.horizon)));
    }
    if !(opts.dt > 0.0) {
        return Err(Error::InvalidParameter(format!("dt = {} must be positive", opts.dt)));
    }
    if model.dim() != u0.grid().dim() {
        return Err(Error::InvalidParameter(format!(
            "model dimension {} does not match grid dimension {}",
            model.dim(),
            u0.grid().dim()
        )));
    }
    let grid = *u0.grid();
    let mut u = u0.to_physical();
    let limit = BLOW_UP_FACTOR * u.max_modulus().max(f64::MIN_POSITIVE);
    let mut series = TimeSeries::new(0.0, opts.dt);
    series.push(0.0, u.clone())?;
    for r in recorders.iter_mut() {
        r.record(0.0, &u)?;
    }

    let steps = opts.steps();
    let mut stepper = StrangStepper::new(grid, opts.dt, *model);
    let mut partial: Option<StrangStepper> = None;
    let mut t = 0.0;
    for (j, &h) in steps.iter().enumerate() {
        if h == opts.dt {
            stepper.step(&mut u);
        } else {
            partial
                .get_or_insert_with(|| StrangStepper::new(grid, h, *model))
                .step(&mut u);
        }
        let t_next = if j + 1 == steps.len() {
            opts.horizon
        } else {
            (j + 1) as f64 * opts.dt
        };
        if !u.is_finite() {
            return Err(Error::NonFinite { last_good_time: t });
        }
        let max = u.max_modulus();
        if max > limit {
            return Err(Error::BlowUp {
                time: t_next,
                max_modulus: max,
                limit,
            });
        }
        t = t_next;
        for r in recorders.iter_mut() {
            r.record(t, &u)?;
        }
        let last = j + 1 == steps.len();
        let keep = last || opts.snapshot_every.is_some_and(|k| k > 0 && (j + 1) % k == 0);
        if keep {
            series.push(t, u.clone())?;
        }
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::mass;
    use crate::spectral::relative_l2_error;

    fn gaussian(grid: Grid, a: f64, sigma: f64) -> Field {
        Field::from_fn(grid, |[x, y]| {
            Complex64::new(a * (-(x * x + y * y) / (2.0 * sigma * sigma)).exp(), 0.0)
        })
    }

    #[test]
    fn zero_time_is_identity() {
        let g = Grid::new(2, 16, 10.0).unwrap();
        let f = gaussian(g, 1.0, 1.0);
        assert_eq!(free_propagate(&f, 0.0), f);
    }

    #[test]
    fn group_law_and_unitarity() {
        let g = Grid::new(2, 32, 12.0).unwrap();
        let f = gaussian(g, 1.0, 1.0);
        let a = free_propagate(&free_propagate(&f, 0.3), 0.45);
        let b = free_propagate(&f, 0.75);
        assert!(relative_l2_error(&a, &b) < 1e-13);
        let m0 = mass(&f);
        let m1 = mass(&free_propagate(&f, 7.3));
        assert!(((m1 - m0) / m0).abs() < 1e-13);
    }

    #[test]
    fn phase_of_constant_field() {
        let g = Grid::new(1, 8, 1.0).unwrap();
        let c = Complex64::new(0.8, 0.6) * 1.5;
        let f = Field::from_fn(g, |_| c);
        let model = NlsModel::pure_power(1, 2.0).unwrap();
        let out = nonlinear_phase(&f, 0.1, &model).unwrap();
        let expected = c * Complex64::from_polar(1.0, -0.1 * c.norm_sqr());
        for v in out.values() {
            assert!((v - expected).norm() < 1e-15);
        }
        let z = Field::zeros(g, Side::Physical);
        assert_eq!(nonlinear_phase(&z, 0.1, &model).unwrap(), z);
        assert!(nonlinear_phase(&f.to_spectral(), 0.1, &model).is_err());
    }

    #[test]
    fn linear_model_step_is_free_flow() {
        let g = Grid::new(2, 32, 12.0).unwrap();
        let f = gaussian(g, 1.0, 1.0);
        let model = NlsModel::pure_power(2, 4.0).unwrap().linear();
        let a = strang_step(&f, 0.01, &model).unwrap();
        let b = free_propagate(&f, 0.01);
        assert!(relative_l2_error(&a, &b) < 1e-14);
        assert!(strang_step(&f, 0.0, &model).is_err());
    }

    #[test]
    fn step_partition_hits_horizon() {
        let o = SimulateOptions::new(1.0, 0.3);
        let s = o.steps();
        assert_eq!(s.len(), 4);
        assert!((s.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert_eq!(SimulateOptions::new(1.0, 1e-3).steps().len(), 1000);
    }

    #[test]
    fn single_step_when_horizon_equals_dt() {
        let g = Grid::new(2, 16, 10.0).unwrap();
        let f = gaussian(g, 1.0, 1.0);
        let model = NlsModel::pure_power(2, 4.0).unwrap();
        let series = simulate(&f, &model, SimulateOptions::new(0.01, 0.01), &mut []).unwrap();
        assert_eq!(series.len(), 2);
        let direct = strang_step(&f, 0.01, &model).unwrap();
        assert_eq!(series.last().unwrap().1, &direct);
    }

    #[test]
    fn non_finite_input_aborts() {
        let g = Grid::new(1, 16, 10.0).unwrap();
        let mut f = gaussian(g, 1.0, 1.0);
        f.values_mut()[3] = Complex64::new(f64::NAN, 0.0);
        let model = NlsModel::pure_power(1, 4.0).unwrap();
        let err = simulate(&f, &model, SimulateOptions::new(0.1, 0.01), &mut []).unwrap_err();
        assert!(matches!(err, Error::NonFinite { last_good_time } if last_good_time == 0.0));
    }
}
