//! The I-operator and the quantities built on it: the multiplier, modified
//! energy, commutators, the energy increment in two forms and the `Z_I`
//! space-time norm.

mod energy;
mod multiplier;
mod nonlinear;
mod zi;

pub use energy::{
    commutator_field, commutator_norm, energy_and_increment, energy_increment_direct, energy_increment_ibp,
    modified_energy, modified_energy_parts, ModifiedEnergy,
};
pub use multiplier::{apply_i, i_multiplier, sandwich_ratios, Bridge, IMultiplierSpec};
pub use nonlinear::{nonlinear_field, oversampled_len, NonlinearEval};
pub use zi::{zi_norm, ZiNormSpec};
