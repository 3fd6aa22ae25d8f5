use super::model::NlsModel;
use crate::spectral::{gradient_norm_sq, Field};

/// `M(u) = ‖u‖²_{L²}`.
pub fn mass(f: &Field) -> f64 {
    let phys = f.to_physical();
    phys.values().iter().map(|v| v.norm_sqr()).sum::<f64>() * f.grid().cell_volume()
}

/// Kinetic part `½‖∇u‖²`.
pub fn kinetic_energy(f: &Field) -> f64 {
    0.5 * gradient_norm_sq(f)
}

/// Potential part `∫ F(u)`.
pub fn potential_energy(f: &Field, model: &NlsModel) -> f64 {
    if model.is_linear() {
        return 0.0;
    }
    let phys = f.to_physical();
    phys.values()
        .iter()
        .map(|v| model.potential_density(v.norm()))
        .sum::<f64>()
        * f.grid().cell_volume()
}

/// `E(u) = ½‖∇u‖² + Σ λⱼ/(pⱼ+2) ‖u‖^{pⱼ+2}_{pⱼ+2}`.
pub fn energy(f: &Field, model: &NlsModel) -> f64 {
    kinetic_energy(f) + potential_energy(f, model)
}
