//! Cross-module invariants checked on random inputs.

use dunkl::heat::{heat_kernel, heat_kernel_component, parity_vectors};
use dunkl::hermite_basis::{hermite_fn_1d, indices_up_to, AlphaParams, MultiIndex};
use dunkl::poly_dunkl::{dunkl_t, Polynomial};
use dunkl::quadrature::SpectralCoeffs;
use dunkl::riesz::{orbit_distance, riesz_apply_spectral, riesz_operator_norm, KernelConfig, RieszKernel};
use dunkl::{AlphaF64, Rational};
use proptest::prelude::*;

fn alpha_vec(d: std::ops::Range<usize>) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-0.5f64..2.0, d)
}

fn point(d: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-2.5f64..2.5, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn heat_kernel_symmetric_and_decomposed(
        (a, x, y) in alpha_vec(1..3).prop_flat_map(|a| { let d = a.len(); (Just(a), point(d), point(d)) }),
        t in 0.05f64..3.0,
    ) {
        let alpha = AlphaF64::new(a).unwrap();
        let g = heat_kernel(&alpha, t, &x, &y).unwrap();
        prop_assert!(g > 0.0);
        prop_assert!((g - heat_kernel(&alpha, t, &y, &x).unwrap()).abs() <= 1e-12 * g);
        let parts: f64 = parity_vectors(alpha.dim())
            .iter()
            .map(|e| heat_kernel_component(&alpha, e, t, &x, &y).unwrap())
            .sum();
        prop_assert!((parts - g).abs() <= 1e-12 * g);
    }

    #[test]
    fn riesz_spectral_norm_bound(
        a in alpha_vec(1..3),
        seed in proptest::collection::vec(-1.0f64..1.0, 28),
    ) {
        let alpha = AlphaF64::new(a).unwrap();
        let degree = if alpha.dim() == 1 { 20 } else { 5 };
        let mut c = SpectralCoeffs::zeros(alpha.clone(), degree);
        for (n, v) in indices_up_to(alpha.dim(), degree).into_iter().zip(seed.iter().cycle()) {
            c.set(n, *v).unwrap();
        }
        for j in 0..alpha.dim() {
            let bound = riesz_operator_norm(&alpha, j, degree).unwrap().analytic;
            let r = riesz_apply_spectral(&c, j).unwrap();
            prop_assert!(r.norm() <= bound * c.norm() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn single_precision_tracks_double(n in 0usize..12, a in -0.5f64..2.0, x in -3.0f64..3.0) {
        let h64 = hermite_fn_1d(n, a, x);
        let h32 = hermite_fn_1d(n, a as f32, x as f32) as f64;
        prop_assert!((h64 - h32).abs() <= 1e-4);
    }

    #[test]
    fn dunkl_operators_commute_exactly(
        num in proptest::collection::vec(0i64..6, 2),
        terms in proptest::collection::vec((0usize..4, 0usize..4, -5i64..5), 1..6),
    ) {
        let alpha: Vec<Rational> = num.iter().map(|&k| Rational::new(2 * k - 1, 2)).collect();
        let mut p = Polynomial::zero(2);
        for (i, j, c) in terms {
            p.add_term(MultiIndex::new(vec![i, j]), Rational::from_integer(c));
        }
        let a = dunkl_t(0, &alpha, &dunkl_t(1, &alpha, &p).unwrap()).unwrap();
        let b = dunkl_t(1, &alpha, &dunkl_t(0, &alpha, &p).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn riesz_kernel_reflection_parity(
        a in -0.5f64..1.5,
        x in point(2),
        y in point(2),
    ) {
        prop_assume!(orbit_distance(&x, &y) > 0.2);
        let alpha = AlphaParams::new(vec![a, 0.4]).unwrap();
        let k = RieszKernel::new(alpha, KernelConfig::default()).unwrap();
        let r = k.kernel(0, &x, &y).unwrap();
        // Flipping coordinate 0 of both points negates R_0; flipping the
        // other coordinate leaves it unchanged.
        let f0 = |p: &[f64]| vec![-p[0], p[1]];
        let f1 = |p: &[f64]| vec![p[0], -p[1]];
        let tol = 1e-9 * r.abs().max(1e-6);
        prop_assert!((k.kernel(0, &f0(&x), &f0(&y)).unwrap() + r).abs() <= tol);
        prop_assert!((k.kernel(0, &f1(&x), &f1(&y)).unwrap() - r).abs() <= tol);
    }
}
