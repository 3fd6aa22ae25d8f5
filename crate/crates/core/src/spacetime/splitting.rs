use crate::dynamics::TimeSeries;
use crate::error::{Error, Result};
use crate::spectral::lebesgue_norm;

use super::accumulator::SpaceTimeAccumulator;

/// One piece `[t_start, t_end]` of a partition, covering the snapshots
/// `first..last` (exclusive end).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Subinterval {
    pub first: usize,
    pub last: usize,
    pub t_start: f64,
    pub t_end: f64,
    /// `‖u‖_{L^q_t L^r_x}` over the piece.
    pub norm: f64,
}

/// Greedy left-to-right partition of a trajectory into pieces on which the
/// `L^q_t L^r_x` norm stays at or below `eta`.
///
/// Every piece except possibly the last is maximal: adding the next sample
/// would push its norm above `eta`. The pieces tile the sample range and
/// the time interval exactly.
pub fn split_by_smallness(series: &TimeSeries, q: f64, r: f64, eta: f64) -> Result<Vec<Subinterval>> {
    if !(eta > 0.0) {
        return Err(Error::InvalidParameter(format!("threshold {eta} must be positive")));
    }
    if series.is_empty() {
        return Err(Error::EmptySeries);
    }
    let times = series.times();
    let weights = series.left_weights();
    let mut pieces = Vec::new();
    let mut acc = SpaceTimeAccumulator::new(q, r)?;
    let mut first = 0;
    for (j, (f, &w)) in series.snapshots().iter().zip(&weights).enumerate() {
        let norm = lebesgue_norm(&f.to_physical(), r)?;
        let mut single = SpaceTimeAccumulator::new(q, r)?;
        single.accumulate_norm(norm, w)?;
        if single.finalize() > eta {
            return Err(Error::IndivisibleSample {
                time: times[j],
                value: single.finalize(),
                eta,
            });
        }
        let mut trial = acc;
        trial.accumulate_norm(norm, w)?;
        if trial.finalize() > eta {
            pieces.push(Subinterval {
                first,
                last: j,
                t_start: times[first],
                t_end: times[j],
                norm: acc.finalize(),
            });
            first = j;
            acc = single;
        } else {
            acc = trial;
        }
    }
    let n = times.len();
    pieces.push(Subinterval {
        first,
        last: n,
        t_start: times[first],
        t_end: times[n - 1],
        norm: acc.finalize(),
    });
    Ok(pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{Field, Grid};
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn constant_series(c: f64, steps: usize, dt: f64) -> (TimeSeries, f64) {
        let g = Grid::new(2, 8, 1.0).unwrap();
        let f = Field::from_fn(g, |_| Complex64::new(c, 0.0));
        let samples = (0..=steps).map(|j| (j as f64 * dt, f.clone())).collect();
        let norm5 = lebesgue_norm(&f, 5.0).unwrap();
        (TimeSeries::from_samples(samples).unwrap(), norm5)
    }

    #[test]
    fn whole_series_when_small() {
        let (s, _) = constant_series(1.0, 20, 0.01);
        let parts = split_by_smallness(&s, 5.0, 5.0, 1e6).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!((parts[0].first, parts[0].last), (0, 21));
    }

    #[test]
    fn constant_integrand_count() {
        let (s, c) = constant_series(1.3, 2000, 0.001);
        let eta = 0.5 * c;
        let parts = split_by_smallness(&s, 5.0, 5.0, eta).unwrap();
        let expected = (2.0 * c.powi(5) / eta.powi(5)).ceil() as i64;
        assert!((parts.len() as i64 - expected).abs() <= 1, "{} vs {expected}", parts.len());
    }

    #[test]
    fn indivisible_sample() {
        let (s, c) = constant_series(1.0, 10, 0.1);
        let eta = 0.5 * c * 0.1f64.powf(0.2);
        assert!(matches!(
            split_by_smallness(&s, 5.0, 5.0, eta),
            Err(Error::IndivisibleSample { .. })
        ));
    }

    proptest! {
        #[test]
        fn pieces_tile_and_respect_threshold(
            amps in proptest::collection::vec(0.0f64..2.0, 2..60),
            eta in 0.9f64..3.0,
        ) {
            let g = Grid::new(1, 8, 1.0).unwrap();
            let samples: Vec<_> = amps
                .iter()
                .enumerate()
                .map(|(j, &a)| (j as f64 * 0.01, Field::from_fn(g, |_| Complex64::new(a, 0.0))))
                .collect();
            let s = TimeSeries::from_samples(samples).unwrap();
            // a single sample weighs at most 2 · 0.01^{1/5} < 0.9
            let parts = split_by_smallness(&s, 5.0, 5.0, eta).unwrap();
            prop_assert_eq!(parts[0].first, 0);
            prop_assert_eq!(parts.last().unwrap().last, amps.len());
            for w in parts.windows(2) {
                prop_assert_eq!(w[0].last, w[1].first);
                prop_assert_eq!(w[0].t_end, w[1].t_start);
            }
            for p in &parts {
                prop_assert!(p.norm <= eta);
            }
        }
    }
}
