use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use crate::error::{Error, Result};

/// A Lebesgue exponent held exactly: a positive rational or `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    Finite(Rational64),
    Infinite,
}

impl Exponent {
    pub fn integer(k: i64) -> Self {
        Exponent::Finite(Rational64::from_integer(k))
    }

    /// Recovers the exact exponent behind a float such as `8.0 / 3.0`:
    /// the reciprocal is matched to the closest fraction with denominator at
    /// most 1000, accepted only within `1e-12`.
    pub fn from_f64(x: f64) -> Result<Self> {
        if x == f64::INFINITY {
            return Ok(Exponent::Infinite);
        }
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::InvalidExponent(format!("{x} is not a positive exponent")));
        }
        let inv = closest_fraction(1.0 / x, 1000)
            .filter(|r| (*r.numer() as f64 / *r.denom() as f64 - 1.0 / x).abs() < 1e-12)
            .ok_or_else(|| Error::InvalidExponent(format!("{x} is not a simple rational")))?;
        Ok(Exponent::Finite(inv.recip()))
    }

    /// `1/q`, with `1/∞ = 0`.
    pub fn reciprocal(&self) -> Rational64 {
        match self {
            Exponent::Finite(q) => q.recip(),
            Exponent::Infinite => Rational64::from_integer(0),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Exponent::Finite(q) => *q.numer() as f64 / *q.denom() as f64,
            Exponent::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Infinite => write!(f, "inf"),
            Exponent::Finite(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Exponent::Finite(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts `inf`, integers and fractions such as `8/3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Exponent::Infinite);
        }
        let bad = || Error::InvalidExponent(format!("cannot parse exponent `{s}`"));
        let value = match s.split_once('/') {
            Some((a, b)) => {
                let a: i64 = a.trim().parse().map_err(|_| bad())?;
                let b: i64 = b.trim().parse().map_err(|_| bad())?;
                if b == 0 {
                    return Err(bad());
                }
                Rational64::new(a, b)
            }
            None => Rational64::from_integer(s.parse().map_err(|_| bad())?),
        };
        if value <= Rational64::from_integer(0) {
            return Err(bad());
        }
        Ok(Exponent::Finite(value))
    }
}

/// Best rational approximation of `x >= 0` with denominator `<= max_den`
/// (continued-fraction convergents and semiconvergents).
fn closest_fraction(x: f64, max_den: i64) -> Option<Rational64> {
    if !(x >= 0.0 && x.is_finite()) {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut rest = x;
    loop {
        let a = rest.floor();
        if a > 1e15 {
            break;
        }
        let a = a as i64;
        let q2 = q0 + a * q1;
        if q2 > max_den {
            let k = (max_den - q0) / q1;
            let semi = Rational64::new(p0 + k * p1, q0 + k * q1);
            let conv = Rational64::new(p1, q1);
            let err = |r: &Rational64| (*r.numer() as f64 / *r.denom() as f64 - x).abs();
            return Some(if err(&semi) < err(&conv) { semi } else { conv });
        }
        let p2 = p0 + a * p1;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = rest - a as f64;
        if frac < 1e-15 {
            break;
        }
        rest = 1.0 / frac;
    }
    Some(Rational64::new(p1, q1))
}

/// Whether `(q, r)` satisfies the Strichartz scaling relation in dimension
/// `d`: `1/q + 1/r = 1/2` with `(2, ∞)` excluded in the plane, and
/// `2/q + 1/r = 1/2` on the line. Decided in exact rational arithmetic.
pub fn is_admissible_exact(q: Exponent, r: Exponent, d: usize) -> Result<bool> {
    let half = Rational64::new(1, 2);
    for e in [q, r] {
        if e.reciprocal() > half {
            return Err(Error::InvalidExponent(format!("exponent {e} below 2")));
        }
    }
    match d {
        1 => Ok(Rational64::from_integer(2) * q.reciprocal() + r.reciprocal() == half),
        2 => {
            let endpoint = q == Exponent::integer(2) && r == Exponent::Infinite;
            Ok(q.reciprocal() + r.reciprocal() == half && !endpoint)
        }
        other => Err(Error::InvalidDimension(other)),
    }
}

/// Float front end of [`is_admissible_exact`].
pub fn is_admissible(q: f64, r: f64, d: usize) -> Result<bool> {
    is_admissible_exact(Exponent::from_f64(q)?, Exponent::from_f64(r)?, d)
}

/// An admissible exponent pair `(q, r)` for a given dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AdmissiblePair {
    q: Exponent,
    r: Exponent,
    dim: usize,
}

impl AdmissiblePair {
    pub fn new(q: Exponent, r: Exponent, dim: usize) -> Result<Self> {
        if !is_admissible_exact(q, r, dim)? {
            return Err(Error::InvalidExponent(format!("({q}, {r}) is not admissible in d = {dim}")));
        }
        Ok(Self { q, r, dim })
    }

    pub fn from_f64(q: f64, r: f64, dim: usize) -> Result<Self> {
        Self::new(Exponent::from_f64(q)?, Exponent::from_f64(r)?, dim)
    }

    pub fn q(&self) -> Exponent {
        self.q
    }

    pub fn r(&self) -> Exponent {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl fmt::Display for AdmissiblePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.q, self.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn planar_examples() {
        assert!(is_admissible(4.0, 4.0, 2).unwrap());
        assert!(!is_admissible(2.0, f64::INFINITY, 2).unwrap());
        assert!(is_admissible(f64::INFINITY, 2.0, 2).unwrap());
        assert!(is_admissible(8.0, 8.0 / 3.0, 2).unwrap());
        assert!(is_admissible(3.0, 6.0, 2).unwrap());
        assert!(!is_admissible(4.0, 8.0, 2).unwrap());
    }

    #[test]
    fn line_examples() {
        assert!(is_admissible(4.0, f64::INFINITY, 1).unwrap());
        assert!(is_admissible(8.0, 4.0, 1).unwrap());
        assert!(is_admissible(6.0, 6.0, 1).unwrap());
        assert!(!is_admissible(4.0, 4.0, 1).unwrap());
    }

    #[test]
    fn rejects_small_exponents_and_dimensions() {
        assert!(is_admissible(1.5, 6.0, 2).is_err());
        assert!(is_admissible(4.0, 4.0, 3).is_err());
        assert!(Exponent::from_f64(std::f64::consts::PI).is_err());
    }

    #[test]
    fn parse_and_display() {
        let e: Exponent = "8/3".parse().unwrap();
        assert_eq!(e, Exponent::Finite(Rational64::new(8, 3)));
        assert_eq!(e.to_string(), "8/3");
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinite);
        assert_eq!(Exponent::from_f64(8.0 / 3.0).unwrap(), e);
        assert!("0".parse::<Exponent>().is_err());
        assert!("x/2".parse::<Exponent>().is_err());
    }

    proptest! {
        #[test]
        fn generated_pairs_are_admissible(r_inv in 1i64..50) {
            // 1/r = k/100 in (0, 1/2), q from the relation
            let r = Exponent::Finite(Rational64::new(100, r_inv));
            let q_inv = Rational64::new(1, 2) - Rational64::new(r_inv, 100);
            let q = Exponent::Finite(q_inv.recip());
            prop_assert!(is_admissible_exact(q, r, 2).unwrap());
            let q1 = Exponent::Finite((q_inv / 2).recip());
            prop_assert!(is_admissible_exact(q1, r, 1).unwrap());
            // perturbing r breaks the relation
            let r2 = Exponent::Finite(Rational64::new(100, r_inv) + Rational64::new(1, 7));
            prop_assert!(!is_admissible_exact(q, r2, 2).unwrap());
        }
    }
}
