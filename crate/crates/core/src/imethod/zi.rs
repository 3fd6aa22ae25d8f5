use crate::dynamics::TimeSeries;
use crate::error::{Error, Result};
use crate::spacetime::{AdmissiblePair, Exponent, SpaceTimeAccumulator};
use crate::spectral::{lebesgue_norm, lp_project, partial, Field, LpBand, Side};

use super::multiplier::{apply_i, IMultiplierSpec};

/// Exponent pairs and band ceiling of the `Z_I` norm
/// `sup_{(q,r)} (Σ_N ‖∇P_N Iu‖²_{L^q_t L^r_x})^{1/2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZiNormSpec {
    pairs: Vec<AdmissiblePair>,
    /// Largest dyadic band; `None` uses the grid's full band list.
    pub band_ceiling: Option<f64>,
}

impl ZiNormSpec {
    /// Every pair must be admissible and `(∞, 2)` must be among them.
    pub fn new(pairs: Vec<AdmissiblePair>, band_ceiling: Option<f64>) -> Result<Self> {
        let Some(first) = pairs.first() else {
            return Err(Error::InvalidParameter("empty pair set".into()));
        };
        let dim = first.dim();
        if pairs.iter().any(|p| p.dim() != dim) {
            return Err(Error::InvalidParameter("pairs mix dimensions".into()));
        }
        if !pairs
            .iter()
            .any(|p| p.q() == Exponent::Infinite && p.r() == Exponent::integer(2))
        {
            return Err(Error::InvalidParameter("pair set must contain (inf, 2)".into()));
        }
        if let Some(c) = band_ceiling {
            if !(c >= 1.0) {
                return Err(Error::InvalidParameter(format!("band ceiling {c} below 1")));
            }
        }
        Ok(Self { pairs, band_ceiling })
    }

    /// `{(∞,2), (8,8/3), (4,4), (3,6)}` in the plane and
    /// `{(∞,2), (8,4), (6,6), (4,∞)}` on the line.
    pub fn default_for(dim: usize) -> Result<Self> {
        let list: &[(&str, &str)] = match dim {
            2 => &[("inf", "2"), ("8", "8/3"), ("4", "4"), ("3", "6")],
            1 => &[("inf", "2"), ("8", "4"), ("6", "6"), ("4", "inf")],
            other => return Err(Error::InvalidDimension(other)),
        };
        let pairs = list
            .iter()
            .map(|(q, r)| AdmissiblePair::new(q.parse()?, r.parse()?, dim))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pairs, None)
    }

    pub fn pairs(&self) -> &[AdmissiblePair] {
        &self.pairs
    }
}

/// `|∇g|` as a physical-side field.
fn gradient_modulus(g: &Field) -> Field {
    let dim = g.grid().dim();
    let parts: Vec<Field> = (0..dim).map(|a| partial(g, a).into_physical()).collect();
    let values = (0..g.grid().len())
        .map(|i| {
            let s: f64 = parts.iter().map(|p| p.values()[i].norm_sqr()).sum();
            num_complex::Complex64::new(s.sqrt(), 0.0)
        })
        .collect();
    Field::new(*g.grid(), Side::Physical, values).expect("grid length")
}

/// Evaluates `Z_I` over a recorded trajectory with left-endpoint time
/// quadrature. Bands are `P_{≤1}` followed by `P_N`, `N = 2, 4, …`.
pub fn zi_norm(series: &TimeSeries, spec: &IMultiplierSpec, zspec: &ZiNormSpec) -> Result<f64> {
    let (_, first) = series.first().ok_or(Error::EmptySeries)?;
    let grid = *first.grid();
    if zspec.pairs.iter().any(|p| p.dim() != grid.dim()) {
        return Err(Error::InvalidParameter("pair dimension differs from the grid".into()));
    }
    let mut bands = grid.dyadic_bands();
    if let Some(c) = zspec.band_ceiling {
        bands.retain(|&n| n <= c);
    }
    let weights = series.left_weights();
    let pairs: Vec<(f64, f64)> = zspec
        .pairs
        .iter()
        .map(|p| (p.q().to_f64(), p.r().to_f64()))
        .collect();
    // acc[pair][band]
    let mut acc: Vec<Vec<SpaceTimeAccumulator>> = pairs
        .iter()
        .map(|&(q, r)| {
            bands
                .iter()
                .map(|_| SpaceTimeAccumulator::new(q, r))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    for ((_, u), &w) in series.iter().zip(&weights) {
        let iu = apply_i(u, spec).into_spectral();
        for (b, &n) in bands.iter().enumerate() {
            let band = if n == 1.0 { LpBand::Leq(1.0) } else { LpBand::Eq(n) };
            let g = gradient_modulus(&lp_project(&iu, band)?);
            for (k, &(_, r)) in pairs.iter().enumerate() {
                acc[k][b].accumulate_norm(lebesgue_norm(&g, r)?, w)?;
            }
        }
    }
    Ok(acc
        .iter()
        .map(|per_band| per_band.iter().map(|a| a.finalize().powi(2)).sum::<f64>().sqrt())
        .fold(0.0, f64::max))
}
