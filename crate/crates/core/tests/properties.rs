//! Property-based invariants over randomly drawn parameters and points.

use num_complex::Complex64;
use proptest::prelude::*;

use nrdyn_core::embedding::{omega, omega_residual, z_eval, z_preimages};
use nrdyn_core::numrange::{
    coefficient_matrix, ellipse_contains, hermitian_eigenvalues, hermitian_split,
    numerical_range_2x2, rayleigh, support_function, ComplexMatrix,
};
use nrdyn_core::ratmap::{eval_map, range_membership, ExtReal, Params};

/// Valid parameter pairs with margin inside `a > b > 0`.
fn params() -> impl Strategy<Value = Params> {
    (1.5f64..6.0)
        .prop_flat_map(|a| (Just(a), 0.3f64..(a - 0.2)))
        .prop_map(|(a, b)| Params::new(a, b).unwrap())
}

proptest! {
    #[test]
    fn embedded_points_lie_on_omega(p in params(), x in -40.0f64..40.0) {
        let w = z_eval(&p, x.into());
        prop_assert!(omega_residual(&p, w) <= 1e-9);
    }

    #[test]
    fn embedding_is_conjugate_symmetric(p in params(), x in -40.0f64..40.0) {
        let w = z_eval(&p, x.into());
        let d = (z_eval(&p, (-x).into()) - w.conj()).norm();
        prop_assert!(d <= 1e-9 * (1.0 + w.norm()));
    }

    #[test]
    fn map_is_even_and_range_constrained(p in params(), x in -40.0f64..40.0) {
        let fx = eval_map(&p, x.into());
        let fmx = eval_map(&p, (-x).into());
        prop_assert_eq!(fx, fmx);
        if let ExtReal::Finite(y) = fx {
            // f(x) < 1 or f(x) >= a/b for every real x
            prop_assert!(range_membership(&p, y), "y = {} escaped the range", y);
        }
    }

    #[test]
    fn embedded_points_inside_numerical_range(p in params(), x in -40.0f64..40.0) {
        let e = numerical_range_2x2(&coefficient_matrix(p.a(), p.b())).unwrap();
        prop_assert!(ellipse_contains(&e, z_eval(&p, x.into()), 1e-8));
    }

    #[test]
    fn rayleigh_quotients_inside_numerical_range(
        p in params(),
        re1 in -1.0f64..1.0, im1 in -1.0f64..1.0,
        re2 in -1.0f64..1.0, im2 in -1.0f64..1.0,
    ) {
        let v = [Complex64::new(re1, im1), Complex64::new(re2, im2)];
        prop_assume!(v[0].norm_sqr() + v[1].norm_sqr() > 1e-6);
        let m = coefficient_matrix(p.a(), p.b());
        let e = numerical_range_2x2(&m).unwrap();
        prop_assert!(ellipse_contains(&e, rayleigh(&m, &v).unwrap(), 1e-9));
    }

    #[test]
    fn rayleigh_projections_inside_spectra(
        p in params(),
        re1 in -1.0f64..1.0, im1 in -1.0f64..1.0,
        re2 in -1.0f64..1.0, im2 in -1.0f64..1.0,
    ) {
        let v = [Complex64::new(re1, im1), Complex64::new(re2, im2)];
        prop_assume!(v[0].norm_sqr() + v[1].norm_sqr() > 1e-6);
        let m = coefficient_matrix(p.a(), p.b());
        let (h, s) = hermitian_split(&m);
        let mut k = ComplexMatrix::zero(2);
        for i in 0..2 {
            for j in 0..2 {
                k.set(i, j, -Complex64::i() * s.get(i, j));
            }
        }
        let q = rayleigh(&m, &v).unwrap();
        let eh = hermitian_eigenvalues(&h);
        let ek = hermitian_eigenvalues(&k);
        let eps = 1e-10 * (1.0 + m.max_abs_entry());
        prop_assert!(q.re >= eh[0] - eps && q.re <= eh[1] + eps);
        prop_assert!(q.im >= ek[0] - eps && q.im <= ek[1] + eps);
    }

    #[test]
    fn support_function_bounds_vertices(p in params(), theta in 0.0f64..6.28) {
        // every boundary parameterization point obeys the support inequality
        let m = coefficient_matrix(p.a(), p.b());
        let d = support_function(&m, theta);
        let om = omega(&p);
        for k in 0..16 {
            let w = om.point(std::f64::consts::TAU * k as f64 / 16.0);
            let proj = w.re * theta.cos() + w.im * theta.sin();
            prop_assert!(proj <= d + 1e-9);
        }
    }

    #[test]
    fn preimages_map_back(p in params(), x in -6.0f64..6.0) {
        prop_assume!(!p.is_pole(x));
        let w = z_eval(&p, x.into());
        let pre = z_preimages(&p, w, -8.0, 8.0).unwrap();
        // x itself must be recovered
        prop_assert!(
            pre.iter().any(|&y| (y - x).abs() <= 1e-6 * (1.0 + x.abs())),
            "missing {} among {:?}", x, pre
        );
        // and each returned preimage maps back onto w
        for &y in &pre {
            prop_assert!((z_eval(&p, y.into()) - w).norm() <= 1e-7 * (1.0 + w.norm()));
        }
    }
}
