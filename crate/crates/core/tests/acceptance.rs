//! One test per acceptance criterion. Each prints a `PASS` or `FAIL` line
//! straight to stderr (bypassing libtest capture) before asserting.

use std::f64::consts::PI;
use std::io::Write;

use hardyscope::green::{green_value_rel, green_weight};
use hardyscope::quad::QuadConfig;
use hardyscope::radial::{hilfe_lhs, hilfe_rhs};
use hardyscope::space::{catalog, damek_ricci_catalog, DensityModel, SpaceSpec};
use hardyscope::sturm::EigenProblem;
use hardyscope::verify::{
    default_suite, green_asymptotics, log_space, null_criticality_mass, ode_residual, p_rayleigh_gap, rayleigh_pairs,
    rellich_gap, uncertainty_gap, GAMMAS, GAP_QUAD_TOL, GAP_TOL_REL,
};
use hardyscope::weights::{hpw_g, hpw_g_complement, AuxH, Basis, WeightPair};
use rand::{Rng, SeedableRng};

fn report(id: u32, title: &str, ok: bool, detail: String) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "acceptance {id:02} {verdict} {title}: {detail}");
    assert!(ok, "criterion {id} ({title}) failed: {detail}");
}

fn default_grid() -> Vec<f64> {
    log_space(1e-3, 60.0, 400)
}

fn model(s: &str) -> DensityModel {
    DensityModel::new(s.parse().unwrap())
}

fn dr_models() -> Vec<DensityModel> {
    damek_ricci_catalog().into_iter().map(DensityModel::new).collect()
}

fn suite20() -> hardyscope::verify::TestFunctionSuite {
    let s = default_suite((0.2, 6.0), 18).unwrap();
    assert_eq!(s.members.len(), 20);
    s
}

#[test]
fn criterion_01_euclidean_hardy_reduction() {
    let mut worst: f64 = 0.0;
    for n in 3..=6 {
        let m = DensityModel::new(SpaceSpec::euclidean(n).unwrap());
        let pair = WeightPair::theorem_b(m);
        let c = f64::from((n - 2) * (n - 2)) / 4.0;
        for r in default_grid() {
            let s = pair.sample(r).unwrap();
            worst = worst.max((s.w_total - c / (r * r)).abs());
        }
    }
    report(1, "Hardy reduction on R^n", worst <= 1e-12, format!("max abs error {worst:e}"));
}

#[test]
fn criterion_02_hyperbolic_constants() {
    let mut worst: f64 = 0.0;
    for n in 3..=5 {
        let m = DensityModel::new(SpaceSpec::real_hyperbolic(n).unwrap());
        let nf = f64::from(n);
        let expected = [
            (Basis::Unit, (nf - 1.0).powi(2) / 4.0),
            (Basis::InvR2, 0.25),
            (Basis::InvSinh2, (nf - 1.0) * (nf - 3.0) / 4.0),
        ];
        for r in [1e-3, 0.5, 2.0, 30.0] {
            let s = WeightPair::theorem_b(m).sample(r).unwrap();
            for (b, c) in expected {
                worst = worst.max((s.coefficient(b) - c).abs());
            }
        }
    }
    report(2, "hyperbolic constants", worst <= 1e-12, format!("max coefficient error {worst:e}"));
}

#[test]
fn criterion_03_ground_state_identities() {
    let grid = default_grid();
    let (mut worst_a, mut worst_g): (f64, f64) = (0.0, 0.0);
    for m in dr_models() {
        let a = WeightPair::theorem_a(m).unwrap();
        worst_a = worst_a.max(ode_residual(&a, &grid).unwrap().max_relative);
        for g in GAMMAS {
            let pair = WeightPair::gamma_family(m, g, AuxH::DensityRoot).unwrap();
            worst_g = worst_g.max(ode_residual(&pair, &grid).unwrap().max_relative);
        }
    }
    report(
        3,
        "ground-state identities",
        worst_a <= 1e-10 && worst_g <= 1e-8,
        format!("theorem A {worst_a:e}, gamma family {worst_g:e}"),
    );
}

#[test]
fn criterion_04_rayleigh_gaps() {
    let suite = suite20();
    let cfg = QuadConfig::relative(GAP_QUAD_TOL);
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut worst = f64::INFINITY;
    for m in dr_models() {
        for (label, pair) in rayleigh_pairs(m) {
            for (i, phi) in suite.members.iter().enumerate() {
                let g = p_rayleigh_gap(&m, &pair, phi, cfg).unwrap();
                checked += 1;
                if g.scale > 0.0 {
                    worst = worst.min(g.gap / g.scale);
                }
                if !g.holds(GAP_TOL_REL) {
                    failures.push(format!("{} {label} member {i}", m.spec));
                }
            }
        }
    }
    report(
        4,
        "Rayleigh gaps",
        failures.is_empty(),
        format!("{checked} gaps, smallest gap/scale {worst:e}, failures {failures:?}"),
    );
}

#[test]
fn criterion_05_hilfe_identity() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x4d1f);
    let mut worst: f64 = 0.0;
    for m in dr_models() {
        let (p, q) = m.spec.heisenberg_params().unwrap();
        for _ in 0..200 {
            let a: f64 = rng.gen_range(-5.0..5.0);
            let b: f64 = rng.gen_range(-5.0..5.0);
            let r: f64 = 10f64.powf(rng.gen_range(-2.0..1.3));
            let lhs = hilfe_lhs(a, b, &m, r).unwrap();
            let rhs = hilfe_rhs(a, b, p, q, r).unwrap();
            let scale = hilfe_lhs(a.abs(), 0.0, &m, r).unwrap() + hilfe_lhs(0.0, -b.abs(), &m, r).unwrap().abs();
            worst = worst.max((lhs - rhs).abs() / scale);
        }
    }
    report(5, "auxiliary identity", worst <= 1e-10, format!("max relative error {worst:e}"));
}

#[test]
fn criterion_06_spectral_bottom() {
    let h3 = EigenProblem::new(model("hyperbolic:3"), 40.0, 0.005).bottom_eigenvalue().unwrap();
    let exact = 1.0 + PI * PI / 1600.0;
    let mut ok = (h3.extrapolated - exact).abs() <= 1e-4;
    let mut detail = format!("H3 {:.7} vs {exact:.7}", h3.extrapolated);
    for m in dr_models() {
        let est = EigenProblem::new(m, 40.0, 0.005).bottom_eigenvalue().unwrap();
        let (p, q) = m.spec.heisenberg_params().unwrap();
        let target = f64::from(p + 2 * q).powi(2) / 16.0;
        let rel = (est.extrapolated - target).abs() / target;
        ok &= rel <= 0.02;
        detail.push_str(&format!("; {} rel {rel:.2e}", m.spec));
    }
    report(6, "spectral bottom", ok, detail);
}

#[test]
fn criterion_07_null_criticality() {
    let mut worst: f64 = 0.0;
    for spec in catalog() {
        let m = DensityModel::new(spec);
        for eps in [1e-4, 1e-2] {
            for outer in [10.0, 1000.0] {
                worst = worst.max(null_criticality_mass(&m, eps, outer).unwrap().relative_error);
            }
        }
    }
    report(7, "null-criticality mass", worst <= 1e-10, format!("max relative error {worst:e}"));
}

#[test]
fn criterion_08_green_oracles() {
    let e3 = green_value_rel(&model("euclidean:3"), 2.0, 1.0, 1e-12).unwrap().value;
    let e4 = green_value_rel(&model("euclidean:4"), 2.0, 2.0, 1e-12).unwrap().value;
    let err3 = (e3 - 1.0 / (4.0 * PI)).abs() * 4.0 * PI;
    let err4 = (e4 - 1.0 / (16.0 * PI * PI)).abs() * 16.0 * PI * PI;
    let h3 = model("hyperbolic:3");
    let mut worst_h: f64 = 0.0;
    for r in log_space(0.01, 20.0, 60) {
        let g = green_value_rel(&h3, 2.0, r, 1e-12).unwrap().value;
        // coth r - 1 = 2/(e^{2r} - 1).
        let exact = 2.0 / (2.0 * r).exp_m1() / (4.0 * PI);
        worst_h = worst_h.max((g - exact).abs() / exact);
    }
    report(
        8,
        "Green oracles",
        err3 <= 1e-8 && err4 <= 1e-8 && worst_h <= 1e-8,
        format!("R3 {err3:e}, R4 {err4:e}, H3 {worst_h:e}"),
    );
}

#[test]
fn criterion_09_small_radius_regimes() {
    let m = model("dr:2,1");
    let sub = green_asymptotics(&m, 2.0, 1e-4, 1e-2, 9).unwrap();
    let crit = green_asymptotics(&m, 4.0, 1e-4, 1e-2, 9).unwrap();
    let sup = green_asymptotics(&m, 6.0, 1e-4, 1e-2, 9).unwrap();
    let ok = (sub.fit.slope + 2.0).abs() <= 0.02
        && (0.9..=1.1).contains(&crit.ratio_at_rmin)
        && (sup.fit.slope + 3.6).abs() <= 0.02;
    report(
        9,
        "small-radius regimes",
        ok,
        format!(
            "P=2 slope {:.4}; P=4 ratio {:.4}; P=6 slope {:.4}",
            sub.fit.slope, crit.ratio_at_rmin, sup.fit.slope
        ),
    );
}

#[test]
fn criterion_10_green_weight_bounds() {
    let grid = default_grid();
    let (mut min_tilde, mut max_far) = (f64::INFINITY, f64::NEG_INFINITY);
    for m in dr_models() {
        for pp in [2.0, 2.5] {
            for &r in &grid {
                min_tilde = min_tilde.min(green_weight(&m, pp, r).unwrap().w_tilde);
            }
            max_far = max_far.max(green_weight(&m, pp, 40.0).unwrap().w_tilde);
        }
    }
    report(
        10,
        "Green weight bounds",
        min_tilde >= -1e-12 && max_far <= 1e-10,
        format!("min W-Λ {min_tilde:e}, max W-Λ at 40 {max_far:e}"),
    );
}

#[test]
fn criterion_11_corollaries() {
    let suite = suite20();
    let cfg = QuadConfig::relative(GAP_QUAD_TOL);
    let mut ok = true;
    let mut min_ratio = f64::INFINITY;
    for (p, q) in [(2, 1), (8, 7)] {
        for phi in &suite.members {
            if let Some(ratio) = uncertainty_gap(p, q, phi, cfg).unwrap() {
                min_ratio = min_ratio.min(ratio);
                ok &= ratio >= 1.0;
            }
            ok &= rellich_gap(p, q, phi, cfg).unwrap().holds(GAP_TOL_REL);
        }
    }
    let mut g_range = (f64::INFINITY, f64::INFINITY);
    for spec in damek_ricci_catalog() {
        let (p, q) = spec.heisenberg_params().unwrap();
        if q == 2 {
            continue;
        }
        for r in default_grid() {
            g_range.0 = g_range.0.min(hpw_g(p, q, r).unwrap());
            g_range.1 = g_range.1.min(hpw_g_complement(p, q, r).unwrap());
        }
    }
    ok &= g_range.0 > 0.0 && g_range.1 > 0.0;
    report(
        11,
        "uncertainty and Rellich",
        ok,
        format!("min ratio {min_ratio:.4}, min g {:e}, min 1-g {:e}", g_range.0, g_range.1),
    );
}

fn rel_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    if d == 0.0 { 0.0 } else { d / a.abs().max(b.abs()) }
}

#[test]
fn criterion_12_reduction_chains() {
    let grid = default_grid();
    let mut worst: f64 = 0.0;
    // `split` also compares V and W separately; the closed Damek-Ricci form
    // of the gamma family moves the curvature terms from V into W.
    let mut compare = |x: &WeightPair, y: &WeightPair, split: bool| {
        for &r in &grid {
            let (s, t) = (x.sample(r).unwrap(), y.sample(r).unwrap());
            worst = worst.max(rel_diff(s.w_total, t.w_total));
            if split {
                worst = worst.max(rel_diff(s.v, t.v)).max(rel_diff(s.w, t.w));
            }
        }
    };
    for spec in catalog() {
        let m = DensityModel::new(spec);
        let b = WeightPair::theorem_b(m);
        if m.n >= 3 {
            compare(&WeightPair::gamma_family(m, 0.0, AuxH::DensityRoot).unwrap(), &b, true);
            compare(&WeightPair::weighted(m, 0.0).unwrap(), &b, true);
        }
        if let Ok(a) = WeightPair::theorem_a(m) {
            compare(&WeightPair::p_dr(m, 2.0).unwrap(), &a, true);
            compare(&WeightPair::gamma_dr(m, 0.0).unwrap(), &a, true);
            for g in GAMMAS {
                compare(
                    &WeightPair::gamma_dr(m, g).unwrap(),
                    &WeightPair::gamma_family(m, g, AuxH::DensityRoot).unwrap(),
                    false,
                );
            }
        }
    }
    report(12, "reduction chains", worst <= 1e-10, format!("max relative difference {worst:e}"));
}
