use num_complex::Complex64;

use crate::dynamics::{kinetic_energy, potential_energy, NlsModel};
use crate::error::Result;
use crate::spectral::{laplacian, lebesgue_norm, partial, Field};

use super::multiplier::{apply_i, IMultiplierSpec};
use super::nonlinear::{nonlinear_field, NonlinearEval};

/// `E(Iu)` split into its two terms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModifiedEnergy {
    /// `½‖∇Iu‖²`
    pub kinetic: f64,
    /// `∫ F(Iu)`
    pub potential: f64,
}

impl ModifiedEnergy {
    pub fn total(&self) -> f64 {
        self.kinetic + self.potential
    }
}

pub fn modified_energy_parts(f: &Field, model: &NlsModel, spec: &IMultiplierSpec) -> ModifiedEnergy {
    let iu = apply_i(f, spec).into_physical();
    ModifiedEnergy {
        kinetic: kinetic_energy(&iu),
        potential: potential_energy(&iu, model),
    }
}

/// `E(Iu)`.
pub fn modified_energy(f: &Field, model: &NlsModel, spec: &IMultiplierSpec) -> f64 {
    modified_energy_parts(f, model, spec).total()
}

/// `I f(u) - f(Iu)` on the physical side.
pub fn commutator_field(u: &Field, model: &NlsModel, spec: &IMultiplierSpec, eval: NonlinearEval) -> Field {
    let ifu = apply_i(&nonlinear_field(u, model, eval), spec).into_physical();
    let fiu = nonlinear_field(&apply_i(u, spec), model, eval);
    ifu.sub(&fiu).expect("same grid and side")
}

/// `‖I f(u) - f(Iu)‖_{L^r}` with the nonlinear terms formed on the
/// `3/2`-oversampled grid.
pub fn commutator_norm(u: &Field, model: &NlsModel, spec: &IMultiplierSpec, r: f64) -> Result<f64> {
    lebesgue_norm(&commutator_field(u, model, spec, NonlinearEval::Oversampled), r)
}

/// `∫ conj(a) b` with the grid quadrature.
fn pairing(a: &Field, b: &Field) -> Complex64 {
    let s: Complex64 = a.values().iter().zip(b.values()).map(|(x, y)| x.conj() * y).sum();
    s * a.grid().cell_volume()
}

struct IncrementTerms {
    iu: Field,
    ifu: Field,
    bracket: Field,
}

fn increment_terms(u: &Field, model: &NlsModel, spec: &IMultiplierSpec, eval: NonlinearEval) -> IncrementTerms {
    let iu = apply_i(u, spec).into_physical();
    let ifu = apply_i(&nonlinear_field(u, model, eval), spec).into_physical();
    let bracket = nonlinear_field(&iu, model, eval).sub(&ifu).expect("same grid and side");
    IncrementTerms { iu, ifu, bracket }
}

/// `d/dt E(Iu) = Re ∫ conj(∂ₜIu) [f(Iu) - I f(u)]` with
/// `∂ₜIu = i(ΔIu - I f(u))` taken from the equation.
///
/// With [`NonlinearEval::Pointwise`] this is the exact time derivative of
/// [`modified_energy`] along the spatially discrete flow.
pub fn energy_increment_direct(u: &Field, model: &NlsModel, spec: &IMultiplierSpec, eval: NonlinearEval) -> f64 {
    let t = increment_terms(u, model, spec, eval);
    let rhs = laplacian(&t.iu).sub(&t.ifu).expect("same grid and side");
    let iu_t = rhs.scale(Complex64::new(0.0, 1.0));
    pairing(&iu_t, &t.bracket).re
}

/// Integrated-by-parts form of [`energy_increment_direct`]:
/// `-Im ∫ conj(∇Iu)·∇B - Im ∫ conj(I f(u)) B` with `B = f(Iu) - I f(u)`.
pub fn energy_increment_ibp(u: &Field, model: &NlsModel, spec: &IMultiplierSpec, eval: NonlinearEval) -> f64 {
    let t = increment_terms(u, model, spec, eval);
    let mut grad = Complex64::new(0.0, 0.0);
    for axis in 0..u.grid().dim() {
        grad += pairing(&partial(&t.iu, axis), &partial(&t.bracket, axis));
    }
    -grad.im - pairing(&t.ifu, &t.bracket).im
}

/// `(E(I_N u), dE(I_N u)/dt)` for several cutoffs at once, with pointwise
/// nonlinear terms. Equal to [`modified_energy`] and
/// [`energy_increment_direct`] with [`NonlinearEval::Pointwise`], but `f(u)`
/// is formed once and each cutoff costs three transforms.
pub fn energy_and_increment(u: &Field, model: &NlsModel, specs: &[IMultiplierSpec]) -> Vec<(f64, f64)> {
    let grid = *u.grid();
    let u_phys = u.to_physical();
    let fu_spec = nonlinear_field(&u_phys, model, NonlinearEval::Pointwise).into_spectral();
    let u_spec = u_phys.into_spectral();
    let i = Complex64::new(0.0, 1.0);
    specs
        .iter()
        .map(|spec| {
            let m: Vec<f64> = (0..grid.len())
                .map(|k| super::multiplier::i_multiplier(grid.abs_wavenumber(k), spec))
                .collect();
            let iu = u_spec.apply_multiplier(|k| m[k]);
            let ifu = fu_spec.apply_multiplier(|k| m[k]);
            let kinetic = kinetic_energy(&iu);
            let rhs = laplacian(&iu)
                .sub(&ifu)
                .expect("same grid and side")
                .scale(i)
                .into_physical();
            let iu = iu.into_physical();
            let potential = potential_energy(&iu, model);
            let bracket = nonlinear_field(&iu, model, NonlinearEval::Pointwise)
                .sub(&ifu.into_physical())
                .expect("same grid and side");
            (kinetic + potential, pairing(&rhs, &bracket).re)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{random_band_limited, rough_sample, RoughSpec};
    use crate::dynamics::energy;
    use crate::spectral::Grid;
    use std::f64::consts::PI;

    fn spec(n: f64, s: f64) -> IMultiplierSpec {
        IMultiplierSpec::new(n, s).unwrap()
    }

    #[test]
    fn reduces_to_energy_on_low_band() {
        let g = Grid::new(2, 64, 2.0 * PI).unwrap();
        let model = NlsModel::pure_power(2, 4.0).unwrap();
        let f = random_band_limited(g, 3, 6.0);
        let e = energy(&f, &model);
        assert!((modified_energy(&f, &model, &spec(8.0, 0.6)) - e).abs() < 1e-12 * e);
        assert_eq!(modified_energy(&Field::zeros(g, crate::spectral::Side::Physical), &model, &spec(8.0, 0.6)), 0.0);
    }

    #[test]
    fn kinetic_term_grows_with_cutoff() {
        let g = Grid::new(2, 128, 2.0 * PI).unwrap();
        let model = NlsModel::pure_power(2, 4.0).unwrap();
        let u = rough_sample(g, &RoughSpec::new(0.7, 1, 1.0, 1.0).unwrap()).unwrap();
        let mut last = 0.0;
        for n in [2.0, 4.0, 8.0, 16.0, 32.0] {
            let k = modified_energy_parts(&u, &model, &spec(n, 0.7)).kinetic;
            assert!(k >= last - 1e-10);
            last = k;
        }
    }

    #[test]
    fn single_mode_commutator() {
        let g = Grid::new(2, 64, 2.0 * PI).unwrap();
        let (n, s, p) = (4.0, 0.5, 2.0);
        let model = NlsModel::pure_power(2, p).unwrap();
        let c = Complex64::new(0.6, 0.3);
        let f = Field::from_fn(g, |[x, _]| c * Complex64::from_polar(1.0, 16.0 * x));
        let m: f64 = 0.5;
        let amp = (m - m.powf(p + 1.0)) * c.norm().powf(p) * c.norm();
        for r in [2.0, 4.0, f64::INFINITY] {
            let expected = amp * if r.is_infinite() { 1.0 } else { (4.0 * PI * PI).powf(1.0 / r) };
            let got = commutator_norm(&f, &model, &spec(n, s), r).unwrap();
            assert!((got - expected).abs() < 1e-12 * expected, "r = {r}: {got} vs {expected}");
        }
    }

    #[test]
    fn cubic_low_band_commutator_vanishes() {
        let g = Grid::new(2, 64, 2.0 * PI).unwrap();
        let model = NlsModel::pure_power(2, 2.0).unwrap();
        let u = random_band_limited(g, 12, 5.0);
        assert!(commutator_norm(&u, &model, &spec(16.0, 0.5), 2.0).unwrap() < 1e-11);
        for eval in [NonlinearEval::Pointwise, NonlinearEval::Oversampled] {
            assert!(energy_increment_direct(&u, &model, &spec(16.0, 0.5), eval).abs() < 1e-11);
            assert!(energy_increment_ibp(&u, &model, &spec(16.0, 0.5), eval).abs() < 1e-11);
        }
    }

    #[test]
    fn cutoff_past_the_grid_gives_zero_increment() {
        let g = Grid::new(2, 64, 2.0 * PI).unwrap();
        let model = NlsModel::pure_power(2, 4.0).unwrap();
        let u = rough_sample(g, &RoughSpec::new(0.6, 5, 1.0, 1.0).unwrap()).unwrap();
        let big = spec(1e3, 0.6);
        assert!(energy_increment_direct(&u, &model, &big, NonlinearEval::Pointwise).abs() < 1e-12);
        assert!(energy_increment_ibp(&u, &model, &big, NonlinearEval::Pointwise).abs() < 1e-12);
    }

    #[test]
    fn two_forms_agree() {
        let g = Grid::new(2, 64, 2.0 * PI).unwrap();
        for (seed, p) in [(1, 2.0), (2, 4.0), (3, 3.0)] {
            let model = NlsModel::pure_power(2, p).unwrap();
            let u = rough_sample(g, &RoughSpec::new(0.7, seed, 1.0, 1.0).unwrap()).unwrap();
            for eval in [NonlinearEval::Pointwise, NonlinearEval::Oversampled] {
                let a = energy_increment_direct(&u, &model, &spec(4.0, 0.7), eval);
                let b = energy_increment_ibp(&u, &model, &spec(4.0, 0.7), eval);
                assert!((a - b).abs() < 1e-9 * a.abs().max(1e-300), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn pointwise_increment_is_the_time_derivative() {
        // one-sided second-order difference of E(Iu) along tiny Strang steps
        let g = Grid::new(1, 64, 2.0 * PI).unwrap();
        let model = NlsModel::pure_power(1, 2.0).unwrap();
        let u = rough_sample(g, &RoughSpec::new(0.7, 9, 1.0, 1.0).unwrap()).unwrap();
        let sp = spec(4.0, 0.7);
        let h = 1e-5;
        let u1 = crate::dynamics::strang_step(&u, h, &model).unwrap();
        let u2 = crate::dynamics::strang_step(&u1, h, &model).unwrap();
        let e = |f: &Field| modified_energy(f, &model, &sp);
        let fd = (-3.0 * e(&u) + 4.0 * e(&u1) - e(&u2)) / (2.0 * h);
        let exact = energy_increment_direct(&u, &model, &sp, NonlinearEval::Pointwise);
        assert!((fd - exact).abs() < 1e-5 * exact.abs(), "{fd} vs {exact}");
    }

    #[test]
    fn fused_evaluation_matches_separate_calls() {
        let g = Grid::new(2, 64, 2.0 * PI).unwrap();
        let model = NlsModel::new(2, 2.0, 1.0, Some((4.0, 0.5))).unwrap();
        let u = rough_sample(g, &RoughSpec::new(0.7, 21, 1.0, 1.0).unwrap()).unwrap();
        let specs = [spec(2.0, 0.7), spec(4.0, 0.7), spec(16.0, 0.7), spec(1e3, 0.7)];
        for (sp, (e, de)) in specs.iter().zip(energy_and_increment(&u, &model, &specs)) {
            let e_ref = modified_energy(&u, &model, sp);
            let de_ref = energy_increment_direct(&u, &model, sp, NonlinearEval::Pointwise);
            assert!((e - e_ref).abs() <= 1e-13 * e_ref.abs(), "{e} vs {e_ref}");
            assert!((de - de_ref).abs() <= 1e-11 * de_ref.abs().max(1e-3), "{de} vs {de_ref}");
        }
    }
}
