//! Frequency-side operators: fractional derivatives, Littlewood–Paley
//! projections, Lebesgue/Sobolev norms and the Bernstein ratio.

use num_complex::Complex64;

use super::field::{Field, Side};
use crate::error::{Error, Result};

/// Which Japanese-bracket convention a derivative uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivKind {
    /// `|ξ|^σ`
    Homogeneous,
    /// `(1 + |ξ|)^σ`
    Inhomogeneous,
}

/// Smooth monotone step: 0 for `r <= 1`, 1 for `r >= 2`, C^∞ in between.
///
/// Built from `ψ(x) = exp(-1/x)` as `ψ(r-1) / (ψ(r-1) + ψ(2-r))`; all
/// derivatives vanish at both seams.
pub fn smooth_step(r: f64) -> f64 {
    if r <= 1.0 {
        return 0.0;
    }
    if r >= 2.0 {
        return 1.0;
    }
    let psi = |x: f64| if x > 0.0 { (-1.0 / x).exp() } else { 0.0 };
    let a = psi(r - 1.0);
    let b = psi(2.0 - r);
    a / (a + b)
}

/// The Littlewood–Paley bump: 1 on `|ξ| <= 1`, 0 on `|ξ| >= 2`.
pub fn lp_bump(r: f64) -> f64 {
    1.0 - smooth_step(r)
}

/// Symbol of a fractional derivative at `|ξ|`.
pub fn deriv_symbol(abs_xi: f64, order: f64, kind: DerivKind) -> f64 {
    match kind {
        DerivKind::Homogeneous => {
            if abs_xi == 0.0 {
                if order == 0.0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                abs_xi.powf(order)
            }
        }
        DerivKind::Inhomogeneous => (1.0 + abs_xi).powf(order),
    }
}

/// `|∇|^σ f` or `⟨∇⟩^σ f`.
///
/// The Nyquist modes are dropped for every nonzero order; `σ = 0` is the
/// identity for both kinds. The result stays on the input's side.
pub fn frac_deriv(f: &Field, order: f64, kind: DerivKind) -> Result<Field> {
    if !(order >= -1.0) || !order.is_finite() {
        return Err(Error::InvalidExponent(format!(
            "derivative order {order} below -1"
        )));
    }
    if order == 0.0 {
        return Ok(f.clone());
    }
    let grid = *f.grid();
    if order < 0.0 && kind == DerivKind::Homogeneous {
        let spec = f.to_spectral();
        let zero = spec.values()[0].norm();
        let scale = spec.l2_coefficients();
        if zero > 1e-12 * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::NonzeroZeroMode { order });
        }
    }
    Ok(f.apply_multiplier(|i| {
        if grid.touches_nyquist(i) {
            0.0
        } else {
            deriv_symbol(grid.abs_wavenumber(i), order, kind)
        }
    }))
}

/// Frequency selector for a Littlewood–Paley projection.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LpBand {
    /// `P_{≤N}`
    Leq(f64),
    /// `P_N`
    Eq(f64),
    /// `P_{>N}`
    Gt(f64),
}

impl LpBand {
    pub fn symbol(&self, abs_xi: f64) -> f64 {
        match *self {
            LpBand::Leq(n) => lp_bump(abs_xi / n),
            LpBand::Gt(n) => 1.0 - lp_bump(abs_xi / n),
            LpBand::Eq(n) => lp_bump(abs_xi / n) - lp_bump(2.0 * abs_xi / n),
        }
    }

    fn cutoff(&self) -> f64 {
        match *self {
            LpBand::Leq(n) | LpBand::Eq(n) | LpBand::Gt(n) => n,
        }
    }
}

pub fn lp_project(f: &Field, band: LpBand) -> Result<Field> {
    let n = band.cutoff();
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::InvalidParameter(format!("band cutoff {n} must be positive")));
    }
    let grid = *f.grid();
    Ok(f.apply_multiplier(|i| band.symbol(grid.abs_wavenumber(i))))
}

/// `(Σ |f|^r h^d)^{1/r}`, or `max |f|` for `r = ∞`.
pub fn lebesgue_norm(f: &Field, r: f64) -> Result<f64> {
    f.require_side(Side::Physical)?;
    lebesgue_norm_unchecked(f, r)
}

fn lebesgue_norm_unchecked(f: &Field, r: f64) -> Result<f64> {
    if !(r >= 1.0) {
        return Err(Error::InvalidExponent(format!("Lebesgue exponent {r} < 1")));
    }
    if r.is_infinite() {
        return Ok(f.max_modulus());
    }
    let w = f.grid().cell_volume();
    let sum: f64 = if r == 2.0 {
        f.values().iter().map(|v| v.norm_sqr()).sum()
    } else {
        f.values().iter().map(|v| v.norm().powf(r)).sum()
    };
    Ok((sum * w).powf(1.0 / r))
}

/// L² norm computed from the spectral coefficients (Plancherel).
pub fn l2_norm_spectral(f: &Field) -> f64 {
    let spec = f.to_spectral();
    spec.l2_coefficients() * f.grid().cell_volume().sqrt()
}

/// `‖f‖_{Ḣ^σ}` or `‖f‖_{H^σ}` computed as the L² norm of [`frac_deriv`].
pub fn sobolev_norm(f: &Field, order: f64, kind: DerivKind) -> Result<f64> {
    let d = frac_deriv(f, order, kind)?;
    Ok(l2_norm_spectral(&d))
}

/// `‖P_{≤N} f‖_{L^q} / (N^{d/p - d/q} ‖P_{≤N} f‖_{L^p})`.
pub fn bernstein_ratio(f: &Field, n: f64, p: f64, q: f64) -> Result<f64> {
    if !(p >= 1.0 && q >= p) {
        return Err(Error::InvalidExponent(format!(
            "Bernstein ratio needs 1 <= p <= q, got p = {p}, q = {q}"
        )));
    }
    let proj = lp_project(f, LpBand::Leq(n))?.to_physical();
    let num = lebesgue_norm_unchecked(&proj, q)?;
    let den = lebesgue_norm_unchecked(&proj, p)?;
    if den == 0.0 {
        return Err(Error::DegenerateInput("projection vanishes".into()));
    }
    if p == q {
        return Ok(1.0);
    }
    let d = f.grid().dim() as f64;
    let inv = |x: f64| if x.is_infinite() { 0.0 } else { 1.0 / x };
    let exponent = d * inv(p) - d * inv(q);
    Ok(num / (n.powf(exponent) * den))
}

/// Spectral partial derivative along `axis` (symbol `iξ_axis`, Nyquist kept
/// so that `Σ_j ∂_j∂_j` matches the Laplacian used by the propagator).
pub fn partial(f: &Field, axis: usize) -> Field {
    let grid = *f.grid();
    f.apply_complex_multiplier(|i| Complex64::new(0.0, grid.wavevector(i)[axis]))
}

/// Spectral Laplacian, symbol `-|ξ|²`.
pub fn laplacian(f: &Field) -> Field {
    let grid = *f.grid();
    f.apply_multiplier(|i| {
        let k = grid.abs_wavenumber(i);
        -k * k
    })
}

/// `‖∇f‖²_{L²}` via Plancherel, every mode included.
pub fn gradient_norm_sq(f: &Field) -> f64 {
    let spec = f.to_spectral();
    let grid = *f.grid();
    let sum: f64 = spec
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let k = grid.abs_wavenumber(i);
            k * k * v.norm_sqr()
        })
        .sum();
    sum * grid.cell_volume()
}
