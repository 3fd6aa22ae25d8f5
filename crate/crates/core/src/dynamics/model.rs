use num_complex::Complex64;

use crate::error::{Error, Result};

/// One power-type term `λ|u|^p u`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerTerm {
    pub exponent: f64,
    pub coupling: f64,
}

/// Defocusing nonlinearity `f(u) = λ₁|u|^{p₁}u + λ₂|u|^{p₂}u` in dimension
/// `d`; the second term is optional.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NlsModel {
    dim: usize,
    first: PowerTerm,
    second: Option<PowerTerm>,
}

impl NlsModel {
    pub fn new(dim: usize, p1: f64, lambda1: f64, second: Option<(f64, f64)>) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::InvalidDimension(dim));
        }
        if !(p1 > 0.0 && p1.is_finite()) {
            return Err(Error::InvalidParameter(format!("p1 = {p1} must be positive")));
        }
        if !(lambda1 >= 0.0 && lambda1.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "lambda1 = {lambda1}: couplings must be nonnegative (defocusing)"
            )));
        }
        let second = match second {
            None => None,
            Some((p2, lambda2)) => {
                if !(p2 > p1 && p2.is_finite()) {
                    return Err(Error::InvalidParameter(format!("p2 = {p2} must exceed p1 = {p1}")));
                }
                if !(lambda2 >= 0.0 && lambda2.is_finite()) {
                    return Err(Error::InvalidParameter(format!(
                        "lambda2 = {lambda2}: couplings must be nonnegative (defocusing)"
                    )));
                }
                Some(PowerTerm {
                    exponent: p2,
                    coupling: lambda2,
                })
            }
        };
        Ok(Self {
            dim,
            first: PowerTerm {
                exponent: p1,
                coupling: lambda1,
            },
            second,
        })
    }

    /// `f(u) = |u|^p u` with unit coupling.
    pub fn pure_power(dim: usize, p: f64) -> Result<Self> {
        Self::new(dim, p, 1.0, None)
    }

    /// Same exponents with every coupling set to zero (free flow).
    pub fn linear(&self) -> Self {
        let mut m = *self;
        m.first.coupling = 0.0;
        if let Some(t) = m.second.as_mut() {
            t.coupling = 0.0;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn first(&self) -> PowerTerm {
        self.first
    }

    pub fn second(&self) -> Option<PowerTerm> {
        self.second
    }

    pub fn terms(&self) -> impl Iterator<Item = PowerTerm> + '_ {
        std::iter::once(self.first).chain(self.second)
    }

    pub fn is_linear(&self) -> bool {
        self.terms().all(|t| t.coupling == 0.0)
    }

    /// Critical regularity `d/2 - 2/p` of the leading term.
    pub fn critical_index(&self) -> f64 {
        critical_index(self.dim, self.first.exponent)
    }

    /// `Σ λⱼ|u|^{pⱼ}`: rate of the pointwise phase rotation.
    pub fn phase_rate(&self, modulus: f64) -> f64 {
        self.terms()
            .map(|t| t.coupling * modulus.powf(t.exponent))
            .sum()
    }

    /// `f(u)`; continuous extension `f(0) = 0` for every exponent.
    pub fn nonlinearity(&self, u: Complex64) -> Complex64 {
        u * self.phase_rate(u.norm())
    }

    /// `F(u) = Σ λⱼ|u|^{pⱼ+2}/(pⱼ+2)`.
    pub fn potential_density(&self, modulus: f64) -> f64 {
        self.terms()
            .map(|t| t.coupling * modulus.powf(t.exponent + 2.0) / (t.exponent + 2.0))
            .sum()
    }
}

/// `s_c = d/2 - 2/p`.
pub fn critical_index(dim: usize, p: f64) -> f64 {
    dim as f64 / 2.0 - 2.0 / p
}
