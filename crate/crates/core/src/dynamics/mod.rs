//! Time evolution: Strang split-step integration, the free propagator,
//! conserved quantities, the scaling transform and checkpoints.

pub mod checkpoint;
mod flow;
mod invariants;
mod model;
mod scaling;
mod series;

pub use flow::{
    free_propagate, nonlinear_phase, simulate, strang_step, Recorder, SimulateOptions,
    StrangStepper, BLOW_UP_FACTOR,
};
pub use invariants::{energy, kinetic_energy, mass, potential_energy};
pub use model::{critical_index, NlsModel, PowerTerm};
pub use scaling::{scale_transform, SUPPORT_OVERFLOW_LIMIT};
pub use series::TimeSeries;
