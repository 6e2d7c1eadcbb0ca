use proptest::prelude::*;

use hardyscope::green::green_weight;
use hardyscope::quad::QuadConfig;
use hardyscope::radial::{hilfe_lhs, hilfe_rhs, laplacian_radial, p_laplacian_radial, RadialScalar};
use hardyscope::space::{damek_ricci_catalog, DensityModel, Radius};
use hardyscope::sturm::EigenProblem;
use hardyscope::verify::{p_rayleigh_gap, supersolution_surplus, TestFunction, GAP_QUAD_TOL};
use hardyscope::weights::WeightPair;

fn dr_model(i: usize) -> DensityModel {
    let specs = damek_ricci_catalog();
    DensityModel::new(specs[i % specs.len()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hilfe_closed_form(i in 0usize..4, a in -4.0f64..4.0, b in -4.0f64..4.0, lr in -2.0f64..1.3) {
        let m = dr_model(i);
        let (p, q) = m.spec.heisenberg_params().unwrap();
        let r = 10f64.powf(lr);
        let lhs = hilfe_lhs(a, b, &m, r).unwrap();
        let rhs = hilfe_rhs(a, b, p, q, r).unwrap();
        let l = m.log_df(Radius::new(r).unwrap());
        let scale = a.abs() * l * l + b.abs() * m.dd_ratio(Radius::new(r).unwrap()).abs();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * scale, "{lhs} vs {rhs}");
    }

    #[test]
    fn p_two_is_the_laplacian(i in 0usize..4, k in -3.0f64..3.0, r in 0.05f64..15.0) {
        let m = dr_model(i);
        let u = RadialScalar::power(k);
        let a = laplacian_radial(&u, &m, r).unwrap();
        let b = p_laplacian_radial(&u, &m, 2.0, r).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn mean_curvature_dominates_h(i in 0usize..4, r in 1e-3f64..40.0) {
        let m = dr_model(i);
        let l = m.log_df(Radius::new(r).unwrap());
        prop_assert!(l * l >= m.h * m.h * (1.0 - 1e-15));
    }

    #[test]
    fn supersolution_bracket_at_least_h_squared(i in 0usize..4, r in 1e-3f64..40.0) {
        let m = dr_model(i);
        let (p, q) = m.spec.heisenberg_params().unwrap();
        let mut pp = 2.0;
        while f64::from(p + q) >= pp * (pp - 1.0) {
            prop_assert!(supersolution_surplus(p, q, pp, r) >= 0.0);
            pp += 1.0;
        }
    }

    #[test]
    fn green_weight_above_lambda(i in 0usize..4, exponent in 1.5f64..3.5, lr in -2.0f64..1.5) {
        let m = dr_model(i);
        let w = green_weight(&m, exponent, 10f64.powf(lr)).unwrap();
        prop_assert!(w.w_tilde >= -1e-12 * w.lambda_p, "{w:?}");
    }

    #[test]
    fn sliding_bumps_keep_positive_gaps(i in 0usize..4, center in 0.6f64..12.0, width in 0.1f64..0.5) {
        let m = dr_model(i);
        let phi = TestFunction::bump(center, width);
        let cfg = QuadConfig::relative(GAP_QUAD_TOL);
        let g = p_rayleigh_gap(&m, &WeightPair::theorem_a(m).unwrap(), &phi, cfg).unwrap();
        prop_assert!(g.holds(1e-8), "{g:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn dirichlet_bottom_decreases_in_radius(i in 0usize..4, r1 in 8.0f64..15.0, extra in 2.0f64..10.0) {
        let m = dr_model(i);
        let mesh = 0.05;
        let l1 = EigenProblem::new(m, r1, mesh).lowest(mesh).unwrap();
        let l2 = EigenProblem::new(m, r1 + extra, mesh).lowest(mesh).unwrap();
        prop_assert!(l1 >= l2 && l2 >= m.lambda0 * (1.0 - 1e-9), "{l1} {l2}");
    }

    #[test]
    fn constant_potential_shifts_spectrum(i in 0usize..4, c in -5.0f64..5.0) {
        let m = dr_model(i);
        let base = EigenProblem::new(m, 10.0, 0.05);
        let l0 = base.lowest(0.05).unwrap();
        let l1 = base.clone().with_potential(move |_| c).lowest(0.05).unwrap();
        prop_assert!(((l1 - l0) - c).abs() <= 1e-10 * l1.abs().max(1.0));
    }
}
