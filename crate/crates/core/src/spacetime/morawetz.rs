use std::fmt;
use std::str::FromStr;

use crate::dynamics::{mass, TimeSeries};
use crate::error::{Error, Result};
use crate::spectral::{lebesgue_norm, sobolev_norm, DerivKind};

use super::accumulator::SpaceTimeAccumulator;

/// Interaction Morawetz inequalities checked as left-hand side over
/// right-hand side. Each variant fixes its dimension and exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MorawetzVariant {
    /// `‖u‖⁴_{L⁴_t L⁸_x} ≲ ‖u‖²_{L^∞_t Ḣ^{1/2}} ‖u(t₀)‖²₂` in the plane.
    ClassicalL4L8,
    /// `‖u‖⁵_{L⁵_{t,x}} ≲ ‖u‖²_{L^∞_t Ḣ^{1/2}} ‖u(t₀)‖³₂` in the plane.
    ClassicalL5,
    /// `‖u‖⁴_{L⁴_{t,x}} ≲ T^{1/3}‖u‖²_{L^∞_t Ḣ^{1/2}}‖u(t₀)‖²₂ + T^{1/3}‖u(t₀)‖⁴₂`
    /// in the plane.
    ImprovedL4,
    /// `‖u‖⁸_{L⁸_{t,x}} ≲ ‖u‖²_{L^∞_t Ḣ^{1/2}} ‖u(t₀)‖⁶₂` on the line.
    D1L8,
    /// `∫∫|u|⁶ ≲ T^{1/3}‖u(t₀)‖⁴₂‖u‖²_{L^∞_t Ḣ^{1/2}} + T^{1/3}‖u(t₀)‖⁶₂` on
    /// the line.
    D1ImprovedL6,
}

impl MorawetzVariant {
    pub const ALL: [MorawetzVariant; 5] = [
        MorawetzVariant::ClassicalL4L8,
        MorawetzVariant::ClassicalL5,
        MorawetzVariant::ImprovedL4,
        MorawetzVariant::D1L8,
        MorawetzVariant::D1ImprovedL6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MorawetzVariant::ClassicalL4L8 => "classical_L4L8",
            MorawetzVariant::ClassicalL5 => "classical_L5",
            MorawetzVariant::ImprovedL4 => "improved_L4",
            MorawetzVariant::D1L8 => "d1_L8",
            MorawetzVariant::D1ImprovedL6 => "d1_improved_L6",
        }
    }

    pub fn dim(self) -> usize {
        match self {
            MorawetzVariant::D1L8 | MorawetzVariant::D1ImprovedL6 => 1,
            _ => 2,
        }
    }

    /// `(q, r)` of the space-time norm on the left; the left side is that
    /// norm raised to the power `q`.
    pub fn lhs_exponents(self) -> (f64, f64) {
        match self {
            MorawetzVariant::ClassicalL4L8 => (4.0, 8.0),
            MorawetzVariant::ClassicalL5 => (5.0, 5.0),
            MorawetzVariant::ImprovedL4 => (4.0, 4.0),
            MorawetzVariant::D1L8 => (8.0, 8.0),
            MorawetzVariant::D1ImprovedL6 => (6.0, 6.0),
        }
    }

    /// Right-hand side from `H = ‖u‖_{L^∞_t Ḣ^{1/2}}`, `M = ‖u(t₀)‖₂` and
    /// the interval length `T`.
    pub fn rhs(self, h: f64, m: f64, duration: f64) -> f64 {
        let t3 = duration.cbrt();
        match self {
            MorawetzVariant::ClassicalL4L8 => h * h * m * m,
            MorawetzVariant::ClassicalL5 => h * h * m.powi(3),
            MorawetzVariant::ImprovedL4 => t3 * h * h * m * m + t3 * m.powi(4),
            MorawetzVariant::D1L8 => h * h * m.powi(6),
            MorawetzVariant::D1ImprovedL6 => t3 * m.powi(4) * h * h + t3 * m.powi(6),
        }
    }
}

impl fmt::Display for MorawetzVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MorawetzVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|v| v.name() == s.trim())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown Morawetz variant `{s}`")))
    }
}

/// The pieces of one Morawetz check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MorawetzRatio {
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    /// Max over the samples of `‖u(t)‖_{Ḣ^{1/2}}`.
    pub h_half_sup: f64,
    /// `‖u(t₀)‖₂` at the first sample.
    pub initial_l2: f64,
    pub duration: f64,
}

/// Evaluates a Morawetz inequality on a recorded trajectory. The left side
/// uses left-endpoint quadrature over the snapshots; the `Ḣ^{1/2}` sup is
/// the max over the same snapshots.
pub fn morawetz_ratio(series: &TimeSeries, variant: MorawetzVariant) -> Result<MorawetzRatio> {
    let (t0, field0) = series.first().ok_or(Error::EmptySeries)?;
    let (t1, _) = series.last().ok_or(Error::EmptySeries)?;
    if field0.grid().dim() != variant.dim() {
        return Err(Error::InvalidParameter(format!(
            "{variant} is a d = {} inequality, series has d = {}",
            variant.dim(),
            field0.grid().dim()
        )));
    }
    let (q, r) = variant.lhs_exponents();
    let mut acc = SpaceTimeAccumulator::new(q, r)?;
    let mut h_sup: f64 = 0.0;
    for ((_, f), w) in series.iter().zip(series.left_weights()) {
        let phys = f.to_physical();
        acc.accumulate_norm(lebesgue_norm(&phys, r)?, w)?;
        h_sup = h_sup.max(sobolev_norm(&phys, 0.5, DerivKind::Homogeneous)?);
    }
    let m = mass(field0).sqrt();
    let duration = t1 - t0;
    let rhs = variant.rhs(h_sup, m, duration);
    if !(rhs > 0.0) {
        return Err(Error::DegenerateInput(format!(
            "{variant} right-hand side vanishes"
        )));
    }
    let lhs = acc.integral();
    Ok(MorawetzRatio {
        lhs,
        rhs,
        ratio: lhs / rhs,
        h_half_sup: h_sup,
        initial_l2: m,
        duration,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{simulate, NlsModel, SimulateOptions};
    use crate::spectral::{Field, Grid, Side};
    use num_complex::Complex64;

    #[test]
    fn names_round_trip() {
        for v in MorawetzVariant::ALL {
            assert_eq!(v.name().parse::<MorawetzVariant>().unwrap(), v);
        }
        assert!("L7".parse::<MorawetzVariant>().is_err());
    }

    #[test]
    fn zero_series_is_degenerate() {
        let g = Grid::new(2, 16, 8.0).unwrap();
        let z = Field::zeros(g, Side::Physical);
        let s = TimeSeries::from_samples(vec![(0.0, z.clone()), (0.1, z)]).unwrap();
        assert!(matches!(
            morawetz_ratio(&s, MorawetzVariant::ClassicalL5),
            Err(Error::DegenerateInput(_))
        ));
        assert!(matches!(
            morawetz_ratio(&TimeSeries::new(0.0, 0.1), MorawetzVariant::ClassicalL5),
            Err(Error::EmptySeries)
        ));
    }

    #[test]
    fn dimension_is_enforced() {
        let g = Grid::new(1, 16, 8.0).unwrap();
        let f = Field::from_fn(g, |[x, _]| Complex64::new((-x * x).exp(), 0.0));
        let s = TimeSeries::from_samples(vec![(0.0, f)]).unwrap();
        assert!(morawetz_ratio(&s, MorawetzVariant::ClassicalL5).is_err());
        assert!(morawetz_ratio(&s, MorawetzVariant::D1L8).is_ok());
    }

    #[test]
    fn right_hand_sides() {
        let (h, m, t) = (2.0, 3.0, 8.0);
        assert_eq!(MorawetzVariant::ClassicalL4L8.rhs(h, m, t), 36.0);
        assert_eq!(MorawetzVariant::ClassicalL5.rhs(h, m, t), 108.0);
        assert_eq!(MorawetzVariant::ImprovedL4.rhs(h, m, t), 2.0 * 36.0 + 2.0 * 81.0);
        assert_eq!(MorawetzVariant::D1L8.rhs(h, m, t), 4.0 * 729.0);
        assert_eq!(MorawetzVariant::D1ImprovedL6.rhs(h, m, t), 2.0 * 81.0 * 4.0 + 2.0 * 729.0);
    }

    #[test]
    fn scaling_the_amplitude_of_a_linear_flow() {
        // both sides are homogeneous of equal degree, so a linear flow gives
        // the same ratio for every amplitude
        let g = Grid::new(2, 64, 24.0).unwrap();
        let u0 = Field::from_fn(g, |[x, y]| Complex64::new((-(x * x + y * y) / 2.0).exp(), 0.0));
        let model = NlsModel::pure_power(2, 4.0).unwrap().linear();
        let opts = SimulateOptions::new(0.2, 0.01);
        let s1 = simulate(&u0, &model, opts, &mut []).unwrap();
        let s2 = simulate(&u0.scale(Complex64::new(2.0, 0.0)), &model, opts, &mut []).unwrap();
        let r1 = morawetz_ratio(&s1, MorawetzVariant::ClassicalL5).unwrap();
        let r2 = morawetz_ratio(&s2, MorawetzVariant::ClassicalL5).unwrap();
        assert!((r2.ratio / r1.ratio - 1.0).abs() < 1e-12);
        let a1 = morawetz_ratio(&s1, MorawetzVariant::ClassicalL4L8).unwrap();
        let a2 = morawetz_ratio(&s2, MorawetzVariant::ClassicalL4L8).unwrap();
        assert!((a2.ratio / a1.ratio - 1.0).abs() < 1e-12);
    }
}
