use approx::assert_relative_eq;
use hypfl_core::embedding::{besov_embeds_fl, triebel_embeds_fl, IndexTuple};
use hypfl_core::function_spaces::fl_norm;
use hypfl_core::index::{Exponent, Rational};
use hypfl_core::spectral::{bessel_potential, forward_transform, inverse_transform};
use hypfl_core::{Complex64, GridFunction, GridSpec};
use proptest::prelude::*;

fn grid() -> impl Strategy<Value = GridSpec> {
    prop_oneof![
        (3u32..7).prop_map(|k| GridSpec::new(1, 1 << k).unwrap()),
        (3u32..5).prop_map(|k| GridSpec::new(2, 1 << k).unwrap()),
    ]
}

fn field() -> impl Strategy<Value = GridFunction> {
    grid().prop_flat_map(|g| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), g.len()).prop_map(move |v| {
            GridFunction::new(g, v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap()
        })
    })
}

fn pair() -> impl Strategy<Value = (GridFunction, GridFunction)> {
    grid().prop_flat_map(|g| {
        let one = move || {
            prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), g.len()).prop_map(move |v| {
                GridFunction::new(g, v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap()
            })
        };
        (one(), one())
    })
}

fn exponent() -> impl Strategy<Value = Exponent> {
    prop::sample::select(vec!["1/2", "2/3", "1", "4/3", "3/2", "2", "3", "4", "inf"]).prop_map(|s| s.parse().unwrap())
}

fn banach() -> impl Strategy<Value = Exponent> {
    prop::sample::select(vec!["1", "4/3", "3/2", "2", "3", "inf"]).prop_map(|s| s.parse().unwrap())
}

fn tuple() -> impl Strategy<Value = (Exponent, Exponent, Exponent, u32)> {
    (exponent(), exponent(), banach(), 1u32..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trip_and_plancherel(f in field()) {
        let spec = forward_transform(&f);
        let back = inverse_transform(&spec);
        prop_assert!(back.sub(&f).unwrap().max_abs() < 1e-12);
        let lhs: f64 = spec.coeffs().iter().map(|c| c.norm_sqr()).sum();
        let rhs = f.values().iter().map(|c| c.norm_sqr()).sum::<f64>() / f.grid().len() as f64;
        assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
    }

    #[test]
    fn transform_is_linear((f, g) in pair(), a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let combo = f.scale(Complex64::new(a, 0.0)).add(&g.scale(Complex64::new(0.0, b))).unwrap();
        let lhs = forward_transform(&combo);
        let (sf, sg) = (forward_transform(&f), forward_transform(&g));
        for ((l, x), y) in lhs.coeffs().iter().zip(sf.coeffs()).zip(sg.coeffs()) {
            prop_assert!((l - (x * a + y * Complex64::new(0.0, b))).norm() < 1e-12);
        }
    }

    #[test]
    fn norm_is_homogeneous(f in field(), p in exponent(), s in -2.0f64..2.0, lambda in 0.1f64..5.0) {
        let scaled = fl_norm(&f.scale(Complex64::new(0.0, -lambda)), p, s).value;
        assert_relative_eq!(scaled, lambda * fl_norm(&f, p, s).value, max_relative = 1e-12);
    }

    #[test]
    fn norm_grows_with_smoothness(f in field(), p in exponent(), s in -2.0f64..2.0, ds in 0.0f64..2.0) {
        prop_assert!(fl_norm(&f, p, s).value <= fl_norm(&f, p, s + ds).value * (1.0 + 1e-14));
    }

    #[test]
    fn triangle_inequality((f, g) in pair(), p in banach(), s in -1.0f64..1.0) {
        let lhs = fl_norm(&f.add(&g).unwrap(), p, s).value;
        let rhs = fl_norm(&f, p, s).value + fl_norm(&g, p, s).value;
        prop_assert!(lhs <= rhs * (1.0 + 1e-14));
    }

    #[test]
    fn bessel_potential_shifts_smoothness(f in field(), p in exponent(), a in -1.5f64..1.5, sigma in -1.5f64..1.5) {
        let lhs = fl_norm(&bessel_potential(&f, sigma), p, a).value;
        assert_relative_eq!(lhs, fl_norm(&f, p, a + sigma).value, max_relative = 1e-12);
    }

    #[test]
    fn predicates_are_monotone_in_s((p, q, r, d) in tuple(), num in -40i128..40) {
        let s = Rational::new(num, 10);
        let lo = IndexTuple::new(p, q, r, s, d).unwrap();
        let hi = IndexTuple::new(p, q, r, s + Rational::new(1, 7), d).unwrap();
        if besov_embeds_fl(&lo).holds {
            prop_assert!(besov_embeds_fl(&hi).holds);
        }
        if !p.is_infinite() && triebel_embeds_fl(&lo).unwrap().holds {
            prop_assert!(triebel_embeds_fl(&hi).unwrap().holds);
        }
    }

    #[test]
    fn besov_boundary_is_closed_iff_q_at_most_r((p, q, r, d) in tuple()) {
        let crit = IndexTuple::new(p, q, r, Rational::from_integer(0), d).unwrap().critical_smoothness();
        let at = besov_embeds_fl(&IndexTuple::new(p, q, r, crit, d).unwrap());
        let below = besov_embeds_fl(&IndexTuple::new(p, q, r, crit - Rational::new(1, 1000), d).unwrap());
        let above = besov_embeds_fl(&IndexTuple::new(p, q, r, crit + Rational::new(1, 1000), d).unwrap());
        let base = p <= "2".parse().unwrap() && p.recip() + r.recip() >= Rational::from_integer(1);
        prop_assert!(!below.holds);
        prop_assert_eq!(above.holds, base);
        prop_assert_eq!(at.holds, base && q <= r);
    }
}
