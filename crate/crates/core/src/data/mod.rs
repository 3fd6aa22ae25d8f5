//! Initial data: smooth Gaussian probes with closed-form free evolution,
//! random rough data of prescribed Sobolev regularity, and a spectral
//! regularity estimator.

mod profiles;
mod regularity;
mod rough;

pub use profiles::{
    exact_free_gaussian, free_gaussian_peak, gaussian_profile, INITIAL_BOUNDARY_LIMIT,
    REVIVAL_LIMIT,
};
pub use regularity::{dyadic_shells, least_squares_slope, measured_regularity, Shell, SMOOTH_SENTINEL};
pub use rough::{random_band_limited, rough_sample, RoughSpec};
