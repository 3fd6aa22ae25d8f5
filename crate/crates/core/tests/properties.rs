use nls_imethod::data::{gaussian_profile, random_band_limited, rough_sample, RoughSpec};
use nls_imethod::dynamics::checkpoint::{read_checkpoint, write_checkpoint};
use nls_imethod::dynamics::{free_propagate, mass, scale_transform, strang_step, NlsModel};
use nls_imethod::experiments::{DataKind, RunConfig};
use nls_imethod::imethod::Bridge;
use nls_imethod::spectral::{lp_project, relative_l2_error, transform, Direction, Field, Grid, LpBand};
use proptest::prelude::*;

fn grid() -> impl Strategy<Value = Grid> {
    (1usize..=2, 3u32..=6, 1.0f64..40.0).prop_map(|(d, k, l)| Grid::new(d, 1 << k, l).unwrap())
}

fn field() -> impl Strategy<Value = Field> {
    (grid(), any::<u64>(), 0.2f64..1.0).prop_map(|(g, seed, frac)| {
        let band = frac * g.max_abs_wavenumber();
        random_band_limited(g, seed, band)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transform_round_trip(f in field()) {
        let back = transform(&transform(&f, Direction::Forward).unwrap(), Direction::Inverse).unwrap();
        prop_assert!(relative_l2_error(&back, &f) < 1e-12);
    }

    #[test]
    fn dyadic_bands_tile_frequency_space(f in field()) {
        let bands = f.grid().dyadic_bands();
        let mut sum = lp_project(&f, LpBand::Leq(1.0)).unwrap();
        for &n in &bands[1..] {
            sum = sum.axpy(1.0.into(), &lp_project(&f, LpBand::Eq(n)).unwrap()).unwrap();
        }
        // the top band still leaves the tail beyond 2·max; one more closes it
        let top = 2.0 * bands.last().unwrap();
        sum = sum.axpy(1.0.into(), &lp_project(&f, LpBand::Eq(top)).unwrap()).unwrap();
        prop_assert!(relative_l2_error(&sum, &f) < 1e-12);
    }

    #[test]
    fn free_flow_is_a_group(f in field(), a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let two = free_propagate(&free_propagate(&f, a), b);
        // phases |ξ|²t are large on small boxes; rounding scales with them
        let phase = f.grid().max_abs_wavenumber().powi(2) * (a.abs() + b.abs());
        let err = relative_l2_error(&two, &free_propagate(&f, a + b));
        prop_assert!(err < 1e-13 + 1e-15 * phase, "{} at phase {}", err, phase);
    }

    #[test]
    fn strang_step_keeps_mass(f in field(), p in 0.5f64..6.0, dt in 1e-4f64..0.1) {
        let model = NlsModel::pure_power(f.grid().dim(), p).unwrap();
        let next = strang_step(&f, dt, &model).unwrap();
        let (m0, m1) = (mass(&f), mass(&next));
        prop_assert!((m1 - m0).abs() <= 1e-12 * m0);
    }

    #[test]
    fn scaling_inverts(lambda in 0.8f64..1.25, sigma in 0.6f64..1.0, p in 1.0f64..6.0) {
        let g = Grid::new(2, 128, 32.0).unwrap();
        let u = gaussian_profile(g, 1.0, sigma, [0.0, 0.0]).unwrap();
        let there = scale_transform(&u, lambda, p, None).unwrap();
        let back = scale_transform(&there, 1.0 / lambda, p, None).unwrap();
        prop_assert!(relative_l2_error(&back, &u) < 1e-9);
    }

    #[test]
    fn rough_sample_is_a_function_of_its_seed(seed in any::<u64>(), s in 0.1f64..0.95) {
        let g = Grid::new(2, 32, 12.0).unwrap();
        let spec = RoughSpec::new(s, seed, 1.0, 1.0).unwrap();
        let a = rough_sample(g, &spec).unwrap();
        let b = rough_sample(g, &spec).unwrap();
        prop_assert!(a.values().iter().zip(b.values()).all(|(x, y)| x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits()));
    }

    #[test]
    fn checkpoint_is_bit_exact(f in field(), t in -1e6f64..1e6) {
        let mut buf = Vec::new();
        write_checkpoint(&mut buf, &f, t).unwrap();
        let (back, t2) = read_checkpoint(buf.as_slice()).unwrap();
        prop_assert_eq!(t2.to_bits(), t.to_bits());
        prop_assert_eq!(back.grid(), f.grid());
        let (x, y) = (back.to_physical(), f.to_physical());
        prop_assert!(x.values().iter().zip(y.values()).all(|(a, b)| a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits()));
    }

    #[test]
    fn config_text_round_trips(
        seed in any::<u64>(),
        dt in 1e-6f64..0.1,
        s in 0.05f64..0.99,
        amplitude in 1e-3f64..10.0,
        cutoffs in prop::collection::vec(1.0f64..512.0, 1..6),
        quintic in any::<bool>(),
        rough in any::<bool>(),
    ) {
        let cfg = RunConfig {
            seed,
            dt,
            s,
            amplitude,
            sweep_n: cutoffs,
            bridge: if quintic { Bridge::Quintic } else { Bridge::Smooth },
            data: if rough { DataKind::Rough } else { DataKind::Gaussian },
            ..RunConfig::default()
        };
        prop_assert_eq!(RunConfig::parse(&cfg.to_text()).unwrap(), cfg);
    }
}
