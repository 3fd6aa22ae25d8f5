use crate::error::{Error, Result};
use crate::spectral::{smooth_step, sobolev_norm, DerivKind, Field};

/// Monotone step used to blend `1` into `(|ξ|/N)^{s-1}` on `N <= |ξ| <= 2N`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Bridge {
    /// The C^∞ step shared with the Littlewood–Paley bump.
    #[default]
    Smooth,
    /// The C² polynomial step `6x⁵ - 15x⁴ + 10x³`.
    Quintic,
}

impl Bridge {
    /// Step value at `r = |ξ|/N`: 0 for `r <= 1`, 1 for `r >= 2`.
    pub fn step(self, r: f64) -> f64 {
        match self {
            Bridge::Smooth => smooth_step(r),
            Bridge::Quintic => {
                let x = (r - 1.0).clamp(0.0, 1.0);
                x * x * x * (10.0 + x * (-15.0 + 6.0 * x))
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Bridge::Smooth => "smooth",
            Bridge::Quintic => "quintic",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "smooth" => Ok(Bridge::Smooth),
            "quintic" => Ok(Bridge::Quintic),
            other => Err(Error::InvalidParameter(format!("unknown bridge `{other}`"))),
        }
    }
}

/// Cutoff `N`, target regularity `s` and bridge defining the multiplier `m`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IMultiplierSpec {
    pub cutoff: f64,
    pub s: f64,
    pub bridge: Bridge,
}

impl IMultiplierSpec {
    pub fn new(cutoff: f64, s: f64) -> Result<Self> {
        Self::with_bridge(cutoff, s, Bridge::Smooth)
    }

    pub fn with_bridge(cutoff: f64, s: f64, bridge: Bridge) -> Result<Self> {
        if !(cutoff > 1.0) {
            return Err(Error::InvalidParameter(format!("cutoff N = {cutoff} must exceed 1")));
        }
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::InvalidParameter(format!("regularity {s} outside (0, 1)")));
        }
        Ok(Self { cutoff, s, bridge })
    }
}

/// `m(ξ)`: 1 on `|ξ| <= N`, `(|ξ|/N)^{s-1}` on `|ξ| >= 2N`, and
/// `exp(χ(|ξ|/N)(s-1) log(|ξ|/N))` in between. Since `χ` and the logarithm
/// both increase there, `m` is nonincreasing.
pub fn i_multiplier(abs_xi: f64, spec: &IMultiplierSpec) -> f64 {
    let r = abs_xi / spec.cutoff;
    if r <= 1.0 {
        1.0
    } else if r >= 2.0 {
        r.powf(spec.s - 1.0)
    } else {
        (spec.bridge.step(r) * (spec.s - 1.0) * r.ln()).exp()
    }
}

/// `I f`, returned on the input's side.
pub fn apply_i(f: &Field, spec: &IMultiplierSpec) -> Field {
    let grid = *f.grid();
    f.apply_multiplier(|i| i_multiplier(grid.abs_wavenumber(i), spec))
}

/// `(‖f‖_{H^s} / ‖If‖_{H^1}, ‖If‖_{H^1} / (N^{1-s}‖f‖_{H^s}))`.
pub fn sandwich_ratios(f: &Field, spec: &IMultiplierSpec) -> Result<(f64, f64)> {
    let hs = sobolev_norm(f, spec.s, DerivKind::Inhomogeneous)?;
    let ih1 = sobolev_norm(&apply_i(f, spec), 1.0, DerivKind::Inhomogeneous)?;
    if hs == 0.0 || ih1 == 0.0 {
        return Err(Error::DegenerateInput("zero field".into()));
    }
    Ok((hs / ih1, ih1 / (spec.cutoff.powf(1.0 - spec.s) * hs)))
}
