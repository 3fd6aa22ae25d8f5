//! Space-time norms: admissible exponent pairs, `L^q_t L^r_x` quadrature,
//! interaction Morawetz ratios, the dispersive ratio and partitioning a
//! trajectory into small-norm pieces.

mod accumulator;
mod admissible;
mod dispersive;
mod morawetz;
mod splitting;

pub use accumulator::SpaceTimeAccumulator;
pub use admissible::{is_admissible, is_admissible_exact, AdmissiblePair, Exponent};
pub use dispersive::{dispersive_ratio, gaussian_dispersive_ratio};
pub use morawetz::{morawetz_ratio, MorawetzRatio, MorawetzVariant};
pub use splitting::{split_by_smallness, Subinterval};
