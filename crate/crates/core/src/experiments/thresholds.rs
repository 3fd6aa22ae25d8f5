//! Regularity thresholds above which the I-method argument closes.

use std::fmt;

use crate::error::{Error, Result};

/// A root of `a s² + b s + c = 0` with its residual.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraticRoot {
    pub coefficients: [f64; 3],
    pub root: f64,
    pub residual: f64,
}

impl QuadraticRoot {
    /// The larger real root, computed without cancellation.
    pub fn larger(a: f64, b: f64, c: f64) -> Result<Self> {
        let disc = b * b - 4.0 * a * c;
        if !(a != 0.0 && disc >= 0.0) {
            return Err(Error::DegenerateInput(format!(
                "quadratic {a} s² + {b} s + {c} has no real root"
            )));
        }
        let sq = disc.sqrt();
        let root = if b >= 0.0 {
            if b + sq == 0.0 {
                0.0
            } else {
                -2.0 * c / (b + sq)
            }
        } else {
            (-b + sq) / (2.0 * a)
        };
        let residual = (a * root + b) * root + c;
        Ok(Self {
            coefficients: [a, b, c],
            root,
            residual,
        })
    }
}

/// Which theorem's threshold formula an entry comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// Single power, global well-posedness and scattering.
    Scattering,
    /// Single power, global well-posedness with polynomial growth.
    Growth,
    /// Power `p` plus the even power `2k`.
    EvenPair,
    /// Two general powers.
    TwoPowers,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::Scattering => "scattering threshold",
            Regime::Growth => "polynomial-growth threshold",
            Regime::EvenPair => "even-power pair threshold",
            Regime::TwoPowers => "two-power threshold",
        }
    }
}

/// Inputs to [`thresholds`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ThresholdInputs {
    /// `f(u) = |u|^p u` in dimension `dim`.
    Single { dim: usize, p: f64 },
    /// `f(u) = |u|^{2k} u + |u|^p u` in the plane.
    EvenPair { p: f64, k: u32 },
    /// `f(u) = |u|^{p1} u + |u|^{p2} u` in dimension `dim`.
    TwoPowers { dim: usize, p1: f64, p2: f64 },
}

/// One applicability condition with its verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct Applicability {
    pub regime: Regime,
    pub condition: String,
    pub holds: bool,
}

/// One named number of the report.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdEntry {
    pub name: &'static str,
    pub value: f64,
    /// Residual in the defining quadratic, for roots.
    pub residual: Option<f64>,
    pub regime: Option<Regime>,
}

/// All thresholds for one nonlinearity.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdReport {
    pub inputs: ThresholdInputs,
    pub entries: Vec<ThresholdEntry>,
    pub flags: Vec<Applicability>,
    pub notes: Vec<String>,
}

impl ThresholdReport {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|e| e.name == name).map(|e| e.value)
    }

    pub fn flag(&self, regime: Regime) -> Option<bool> {
        self.flags.iter().find(|f| f.regime == regime).map(|f| f.holds)
    }

    pub fn warnings(&self) -> Vec<String> {
        self.flags
            .iter()
            .filter(|f| !f.holds)
            .map(|f| format!("{} requires {}; values reported anyway", f.regime.label(), f.condition))
            .collect()
    }

    fn push(&mut self, name: &'static str, value: f64, regime: Option<Regime>) {
        self.entries.push(ThresholdEntry {
            name,
            value,
            residual: None,
            regime,
        });
    }

    /// Records a root, or NaN with a note when the quadratic has none.
    fn push_root(&mut self, name: &'static str, root: Result<QuadraticRoot>, regime: Regime) -> f64 {
        match root {
            Ok(r) => {
                self.entries.push(ThresholdEntry {
                    name,
                    value: r.root,
                    residual: Some(r.residual),
                    regime: Some(regime),
                });
                r.root
            }
            Err(e) => {
                self.notes.push(format!("{name}: {e}"));
                self.push(name, f64::NAN, Some(regime));
                f64::NAN
            }
        }
    }
}

impl fmt::Display for ThresholdInputs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ThresholdInputs::Single { dim, p } => write!(f, "d = {dim}, p = {p}"),
            ThresholdInputs::EvenPair { p, k } => write!(f, "d = 2, p = {p}, 2k = {}", 2 * k),
            ThresholdInputs::TwoPowers { dim, p1, p2 } => write!(f, "d = {dim}, p1 = {p1}, p2 = {p2}"),
        }
    }
}

/// Max of three; NaN when any of them is (a missing root leaves the
/// threshold undefined).
fn max3(a: f64, b: f64, c: f64) -> f64 {
    if a.is_nan() || b.is_nan() || c.is_nan() {
        f64::NAN
    } else {
        a.max(b).max(c)
    }
}

/// Critical index `d/2 - 2/p`.
fn sc(dim: usize, p: f64) -> f64 {
    dim as f64 / 2.0 - 2.0 / p
}

/// Scattering-regime root: `s² + 2s_c s + s_c² - 4s_c` in the plane,
/// `s² + 5s_c s + s_c² - 7s_c` on the line.
fn scattering_root(dim: usize, s_c: f64) -> Result<QuadraticRoot> {
    match dim {
        2 => QuadraticRoot::larger(1.0, 2.0 * s_c, s_c * s_c - 4.0 * s_c),
        1 => QuadraticRoot::larger(1.0, 5.0 * s_c, s_c * s_c - 7.0 * s_c),
        other => Err(Error::InvalidDimension(other)),
    }
}

/// Growth-regime root of `3(s - s_c)² - 2(1 + c s_c)(1 - s)` with `c = 6` in
/// the plane and `c = 9` on the line.
fn growth_root(dim: usize, s_c: f64) -> Result<QuadraticRoot> {
    let c = match dim {
        2 => 6.0,
        1 => 9.0,
        other => return Err(Error::InvalidDimension(other)),
    };
    let g = 2.0 * (1.0 + c * s_c);
    QuadraticRoot::larger(3.0, -6.0 * s_c + g, 3.0 * s_c * s_c - g)
}

/// Exponent of `(1 + T)` in the `H^s` growth bound, before the `+ε`:
/// `(1 - s) / (3(s - s_c)² - 2(1 + c s_c)(1 - s))`.
pub fn growth_exponent(dim: usize, p: f64, s: f64) -> Result<f64> {
    let s_c = sc(dim, p);
    let c = match dim {
        2 => 6.0,
        1 => 9.0,
        other => return Err(Error::InvalidDimension(other)),
    };
    let den = 3.0 * (s - s_c).powi(2) - 2.0 * (1.0 + c * s_c) * (1.0 - s);
    if !(den > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "s = {s} is not above the growth-regime root"
        )));
    }
    Ok((1.0 - s) / den)
}

/// `p/(p+1)` in the plane, `p/(2(p+1))` on the line.
fn power_term(dim: usize, p: f64) -> f64 {
    dim as f64 * p / (2.0 * (p + 1.0))
}

/// Computes every threshold for the given nonlinearity. Roots are reported
/// even when the corresponding theorem does not apply; the flags say which
/// do.
pub fn thresholds(inputs: ThresholdInputs) -> Result<ThresholdReport> {
    let mut report = ThresholdReport {
        inputs,
        entries: Vec::new(),
        flags: Vec::new(),
        notes: Vec::new(),
    };
    match inputs {
        ThresholdInputs::Single { dim, p } => {
            if !(p > 0.0) {
                return Err(Error::InvalidExponent(format!("p = {p} must be positive")));
            }
            if !(dim == 1 || dim == 2) {
                return Err(Error::InvalidDimension(dim));
            }
            let s_c = sc(dim, p);
            report.push("s_c", s_c, None);
            let base = (1.0 + s_c) / 2.0;
            let s1 = report.push_root("s1", scattering_root(dim, s_c), Regime::Scattering);
            report.push("s0", max3(base, power_term(dim, p), s1), Some(Regime::Scattering));
            let t1 = report.push_root("s1_tilde", growth_root(dim, s_c), Regime::Growth);
            report.push("s0_tilde", max3(base, power_term(dim, p), t1), Some(Regime::Growth));
            let (scatter_cond, scatter_ok, growth_cond, growth_ok) = if dim == 2 {
                ("p >= 11/4", 4.0 * p >= 11.0, "p > 2", p > 2.0)
            } else {
                ("p >= 17/3", 3.0 * p >= 17.0, "p >= 4", p >= 4.0)
            };
            report.flags.push(Applicability {
                regime: Regime::Scattering,
                condition: scatter_cond.into(),
                holds: scatter_ok,
            });
            report.flags.push(Applicability {
                regime: Regime::Growth,
                condition: growth_cond.into(),
                holds: growth_ok,
            });
            let c = if dim == 2 { 6 } else { 9 };
            report.notes.push(format!(
                "growth exponent (1 - s) / (3(s - s_c)^2 - 2(1 + {c} s_c)(1 - s)) + epsilon, for any epsilon > 0"
            ));
        }
        ThresholdInputs::EvenPair { p, k } => {
            if !(p > 0.0) {
                return Err(Error::InvalidExponent(format!("p = {p} must be positive")));
            }
            let kf = k as f64;
            let s_c1 = sc(2, p);
            let s_c2 = 1.0 - 1.0 / kf;
            let alpha = 4.0 * s_c2 - 9.0 * (2.0 - p / kf) / (2.0 * (p + 2.0));
            report.push("s_c1", s_c1, None);
            report.push("s_c2", s_c2, None);
            report.push("alpha", alpha, Some(Regime::EvenPair));
            let s3 = report.push_root(
                "s3",
                QuadraticRoot::larger(1.0, -(s_c1 + s_c2 - alpha), -alpha),
                Regime::EvenPair,
            );
            let base = max3((1.0 + s_c1) / 2.0, 2.0 * kf / (2.0 * kf + 1.0), s3);
            let ratio_term = 5.0 * s_c2 / (4.0 * s_c2 + 1.0);
            report.push("s3_tilde", max3(base, ratio_term, ratio_term), Some(Regime::EvenPair));
            report.push("s3_tilde_without_ratio_term", base, Some(Regime::EvenPair));
            report.flags.push(Applicability {
                regime: Regime::EvenPair,
                condition: "2k > p >= 11/4 and integer k > 1".into(),
                holds: 2.0 * kf > p && 4.0 * p >= 11.0 && k > 1,
            });
            report.notes.push(
                "s3_tilde includes 5 s_c2 / (4 s_c2 + 1); the variant without that term is listed separately"
                    .into(),
            );
        }
        ThresholdInputs::TwoPowers { dim, p1, p2 } => {
            if !(p1 > 0.0 && p2 > p1) {
                return Err(Error::InvalidExponent(format!(
                    "need 0 < p1 < p2, got p1 = {p1}, p2 = {p2}"
                )));
            }
            if !(dim == 1 || dim == 2) {
                return Err(Error::InvalidDimension(dim));
            }
            let s_c1 = sc(dim, p1);
            let s_c2 = sc(dim, p2);
            report.push("s_c1", s_c1, None);
            report.push("s_c2", s_c2, None);
            let s2 = report.push_root("s2", scattering_root(dim, s_c2), Regime::TwoPowers);
            report.push(
                "s2_threshold",
                max3((1.0 + s_c2) / 2.0, power_term(dim, p2), s2),
                Some(Regime::TwoPowers),
            );
            let (cond, ok) = if dim == 2 {
                ("11/4 <= p1 < p2", 4.0 * p1 >= 11.0)
            } else {
                ("17/3 <= p1 < p2", 3.0 * p1 >= 17.0)
            };
            report.flags.push(Applicability {
                regime: Regime::TwoPowers,
                condition: cond.into(),
                holds: ok,
            });
        }
    }
    Ok(report)
}
