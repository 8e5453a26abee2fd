use edgecascade::basis::{eval_element, ParamValues};
use edgecascade::cascade::{corrected_table, paper_table};
use edgecascade::catalog::{gue_unscaled_operator, lue_raw_operator, Edge, EdgeCase};
use edgecascade::exact::{q, qi, Q};
use edgecascade::numerics::{
    apply_operator, convergence_study, exact_density, finite_n_density, lue_density_christoffel_darboux, scaled_density,
    verify_finite_ode, NumericError, PrecisionContext, StudyConfig, Weight,
};
use proptest::prelude::*;
use rug::Float;

fn ctx(d: u32) -> PrecisionContext {
    PrecisionContext::new(d).unwrap()
}

fn gue() -> EdgeCase {
    EdgeCase::gue_soft()
}

fn lue() -> EdgeCase {
    EdgeCase::lue(Edge::Hard)
}

fn rel(a: &Float, b: &Float) -> f64 {
    (Float::with_val(a.prec(), a - b) / b).to_f64().abs()
}

/// Trapezoid rule in s = ln x on [smin, smax]; the integrand decays doubly
/// exponentially at both ends, so the rule converges geometrically.
fn log_trapezoid<F: Fn(f64) -> f64>(f: F, smin: f64, smax: f64, h: f64) -> f64 {
    let n = ((smax - smin) / h) as usize;
    (0..=n)
        .map(|i| {
            let s = smin + h * i as f64;
            let x = s.exp();
            f(x) * x * if i == 0 || i == n { 0.5 } else { 1.0 }
        })
        .sum::<f64>()
        * h
}

#[test]
fn gue_one_point_density_by_hand() {
    // N = 1: ρ = e^{−x²}/√π; N = 2 adds 2x²·e^{−x²}/√π
    let d1 = exact_density(&gue(), 1, &qi(0)).unwrap();
    assert_eq!(d1.poly.len(), 1);
    assert_eq!(d1.poly[&0], qi(1));
    let d2 = exact_density(&gue(), 2, &qi(0)).unwrap();
    assert_eq!(d2.poly[&2], qi(2));
    assert_eq!(d2.poly[&0], qi(1));
    // LUE N = 1, a = 0: e^{−x}; N = 2, a = 0: e^{−x}(1 + (1 − x)²)
    let l2 = exact_density(&lue(), 2, &qi(0)).unwrap();
    assert_eq!(l2.weight, Weight::Laguerre { a: 0 });
    assert_eq!((l2.poly[&0].clone(), l2.poly[&1].clone(), l2.poly[&2].clone()), (qi(2), qi(-2), qi(1)));
}

#[test]
fn exact_densities_integrate_to_n() {
    for n in 1..=8 {
        assert_eq!(exact_density(&gue(), n, &qi(0)).unwrap().mass(), qi(n as i64));
        for a in 0..=3 {
            assert_eq!(exact_density(&lue(), n, &qi(a)).unwrap().mass(), qi(n as i64), "N={n} a={a}");
        }
    }
}

#[test]
fn exact_density_rejects_bad_input() {
    assert!(exact_density(&gue(), 0, &qi(0)).is_err());
    assert!(exact_density(&gue(), 9, &qi(0)).is_err());
    assert!(exact_density(&lue(), 3, &q(1, 2)).is_err());
    let goe = EdgeCase::new(edgecascade::catalog::Ensemble::Gaussian, 1, Edge::SoftFixedA).unwrap();
    assert!(matches!(exact_density(&goe, 3, &qi(0)), Err(NumericError::Unsupported(_))));
}

#[test]
fn exact_and_recurrence_densities_agree() {
    let c = ctx(50);
    let x = c.float(2.0);
    let exact = exact_density(&lue(), 4, &qi(1)).unwrap().eval(&x);
    let num = finite_n_density(&lue(), 4, &qi(1), &x, &c).unwrap();
    assert!(rel(&num, &exact) < 1e-30);
    for (n, xv) in [(1, 0.3), (3, -1.1), (6, 0.7), (8, 2.5)] {
        let x = c.float(xv);
        let exact = exact_density(&gue(), n, &qi(0)).unwrap().eval(&x);
        let num = finite_n_density(&gue(), n, &qi(0), &x, &c).unwrap();
        assert!(rel(&num, &exact) < 1e-30, "GUE N={n} x={xv}");
    }
}

#[test]
fn finite_ode_residuals_vanish() {
    for n in 1..=4 {
        for a in 0..=2 {
            let chk = verify_finite_ode(&lue(), n, &qi(a)).unwrap();
            assert!(chk.passed, "LUE N={n} a={a}: {}", chk.residual);
        }
        let chk = verify_finite_ode(&gue(), n, &qi(0)).unwrap();
        assert!(chk.passed, "GUE N={n}: {}", chk.residual);
    }
    // beyond the acceptance range as well
    assert!(verify_finite_ode(&lue(), 8, &qi(3)).unwrap().passed);
    assert!(verify_finite_ode(&gue(), 8, &qi(0)).unwrap().passed);
}

#[test]
fn finite_ode_detects_wrong_parameters() {
    // the density for N = 3 is not annihilated by the operator for N = 4
    let d = exact_density(&lue(), 3, &qi(1)).unwrap();
    assert!(!apply_operator(&lue_raw_operator(&qi(4), &qi(1)), d.weight, &d.poly).unwrap().is_empty());
    assert!(!apply_operator(&lue_raw_operator(&qi(3), &qi(2)), d.weight, &d.poly).unwrap().is_empty());
    let g = exact_density(&gue(), 3, &qi(0)).unwrap();
    assert!(!apply_operator(&gue_unscaled_operator(&qi(2)), g.weight, &g.poly).unwrap().is_empty());
    // and a perturbed polynomial fails
    let mut p = d.poly.clone();
    *p.get_mut(&0).unwrap() += q(1, 1000);
    assert!(!apply_operator(&lue_raw_operator(&qi(3), &qi(1)), d.weight, &p).unwrap().is_empty());
}

#[test]
fn christoffel_darboux_matches_sum_of_squares() {
    let c = ctx(40);
    for n in [1, 2, 5, 12, 20] {
        for a in [qi(0), q(1, 2), qi(3)] {
            for xv in [0.2, 1.5, 7.0, 30.0] {
                let x = c.float(xv);
                let s = finite_n_density(&lue(), n, &a, &x, &c).unwrap();
                let cd = lue_density_christoffel_darboux(n, &a, &x, &c).unwrap();
                assert!(rel(&cd, &s) < 1e-20, "N={n} a={a} x={xv}");
            }
        }
    }
}

#[test]
fn numeric_densities_are_normalized() {
    let c = ctx(30);
    let n = 10;
    let f = |x: f64| finite_n_density(&lue(), n, &q(1, 2), &c.float(x), &c).unwrap().to_f64();
    let mass = log_trapezoid(f, -40.0, 5.0, 0.02);
    assert!((mass - n as f64).abs() < 1e-10, "LUE mass {mass}");
    let g = |x: f64| finite_n_density(&gue(), n, &qi(0), &c.float(x), &c).unwrap().to_f64();
    let h = 0.02;
    let gm: f64 = (-600..=600).map(|i| g(h * i as f64)).sum::<f64>() * h;
    assert!((gm - n as f64).abs() < 1e-10, "GUE mass {gm}");
}

#[test]
fn scaled_density_at_hard_edge_approaches_bessel_limit() {
    // r0 at y = 4, a = 0: (J0(2)² + J1(2)²)/4
    let c = ctx(40);
    let (v, _) = scaled_density(&lue(), 400, &qi(0), None, 4.0, &c).unwrap();
    let j0 = 0.223_890_779_141_235_7_f64;
    let j1 = 0.576_724_807_756_873_4_f64;
    let limit = (j0 * j0 + j1 * j1) / 4.0;
    assert!((v.to_f64() - limit).abs() < 1e-5);
    assert!(matches!(scaled_density(&lue(), 10, &qi(0), None, -1.0, &c), Err(NumericError::Domain(_))));
}

fn study(case: EdgeCase, j: usize, ns: &[u32], ys: Vec<f64>, a: Q, gamma: Option<Q>) -> edgecascade::numerics::StudyReport {
    convergence_study(&StudyConfig { case, j, ns: ns.to_vec(), ys, a, gamma, ctx: ctx(40) }).unwrap()
}

#[test]
fn hard_edge_orders() {
    let ys: Vec<f64> = (1..=8).map(f64::from).collect();
    let r0 = study(lue(), 0, &[20, 40, 80], ys.clone(), qi(1), None);
    assert_eq!(r0.predicted_order, 2.0);
    assert!(r0.max_deviation() < 0.2, "{}", r0.to_text());
    let r1 = study(lue(), 1, &[20, 40, 80], ys, qi(1), None);
    assert!(r1.max_deviation() < 0.3, "{}", r1.to_text());
}

#[test]
fn gue_soft_edge_orders() {
    let ys: Vec<f64> = (0..9).map(|i| -2.0 + 0.5 * i as f64).collect();
    let r0 = study(gue(), 0, &[50, 100, 200], ys.clone(), qi(0), None);
    assert!(r0.max_deviation() < 0.1, "{}", r0.to_text());
    let r1 = study(gue(), 1, &[50, 100, 200], ys, qi(0), None);
    assert!(r1.max_deviation() < 0.15, "{}", r1.to_text());
}

#[test]
fn right_soft_edge_order() {
    let ys: Vec<f64> = (0..9).map(|i| -2.0 + 0.5 * i as f64).collect();
    let r = study(EdgeCase::lue(Edge::SoftRight), 1, &[50, 100, 200], ys, qi(0), Some(qi(4)));
    assert!((r.predicted_order - 4.0 / 3.0).abs() < 1e-12);
    assert!(r.max_deviation() < 0.2, "{}", r.to_text());
}

#[test]
fn study_rejects_degenerate_grids() {
    let cfg = StudyConfig { case: gue(), j: 0, ns: vec![50], ys: vec![0.0], a: qi(0), gamma: None, ctx: ctx(40) };
    assert!(convergence_study(&cfg).is_err());
    let cfg = StudyConfig { ns: vec![50, 100], ys: vec![], ..cfg };
    assert!(convergence_study(&cfg).is_err());
    let cfg = StudyConfig { case: lue(), j: 5, ns: vec![10, 20], ys: vec![1.0], ..cfg };
    assert!(convergence_study(&cfg).is_err());
}

#[test]
fn study_csv_has_header_and_rows() {
    let r = study(lue(), 0, &[10, 20], vec![1.0, 2.0], qi(0), None);
    let csv = r.to_csv().unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,size,y,density,approximation,residual");
    assert_eq!(lines.len(), 5);
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["pointwise"].as_array().unwrap().len(), 2);
}

#[test]
fn fixed_a_second_correction_matches_corrected_entry() {
    // (ρ̃ − r0 − h·r1)/h² at large N tracks r2; the printed constant term does not
    let case = EdgeCase::lue(Edge::SoftFixedA);
    let c = ctx(60);
    let a = qi(4);
    let y = -1.0;
    let (dens, sc) = scaled_density(&case, 1600, &a, None, y, &c).unwrap();
    let params = ParamValues::with_a(4.0);
    let fixed = corrected_table(&case).unwrap();
    let printed = paper_table(&case).unwrap();
    let ev = |e| eval_element(e, y, &params, &c).unwrap();
    let h = sc.step.clone();
    let lower = ev(&fixed.entries[0]) + Float::with_val(c.bits(), &h * ev(&fixed.entries[1]));
    let remainder = (Float::with_val(c.bits(), &dens - &lower) / Float::with_val(c.bits(), h.square_ref())).to_f64();
    let want = ev(&fixed.entries[2]).to_f64();
    let bad = ev(&printed.entries[2]).to_f64();
    assert!((remainder - want).abs() < 0.05, "remainder {remainder} vs corrected {want}");
    assert!((remainder - bad).abs() > 0.5, "printed {bad}");
}

#[test]
fn precision_context_validation() {
    assert!(matches!(PrecisionContext::new(10), Err(NumericError::BadPrecision(_))));
    assert!(PrecisionContext::with_target(30, 25).is_err());
    assert_eq!(PrecisionContext::for_size(200).working_digits, 40);
    assert_eq!(PrecisionContext::for_size(201).working_digits, 60);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn densities_are_positive_and_bounded(n in 1u32..30, xv in 0.01f64..60.0, a in 0u32..4) {
        let c = ctx(30);
        let x = c.float(xv);
        let v = finite_n_density(&lue(), n, &qi(a as i64), &x, &c).unwrap().to_f64();
        prop_assert!(v > 0.0);
        // ρ_N(x)·x is bounded by N·max_k over the one-point functions; a crude but safe cap
        prop_assert!(v < n as f64 * 10.0);
        let g = finite_n_density(&gue(), n, &qi(0), &c.float(xv - 30.0), &c).unwrap().to_f64();
        prop_assert!(g >= 0.0);
    }

    #[test]
    fn christoffel_darboux_agrees_everywhere(n in 1u32..20, xv in 0.05f64..50.0) {
        let c = ctx(40);
        let x = c.float(xv);
        let s = finite_n_density(&lue(), n, &qi(2), &x, &c).unwrap();
        let cd = lue_density_christoffel_darboux(n, &qi(2), &x, &c).unwrap();
        prop_assert!(rel(&cd, &s) < 1e-20);
    }

    #[test]
    fn exact_and_numeric_agree(n in 1u32..=8, xv in -3.0f64..3.0) {
        let c = ctx(40);
        let x = c.float(xv);
        let e = exact_density(&gue(), n, &qi(0)).unwrap().eval(&x);
        let v = finite_n_density(&gue(), n, &qi(0), &x, &c).unwrap();
        prop_assert!(rel(&v, &e) < 1e-25);
    }
}

#[test]
fn cancellation_is_reported_as_shortfall() {
    use edgecascade::numerics::cross_checked;
    // ((1 + 10^-45) − 1)·10^45 is exactly 1 but loses every digit at 40-digit precision
    let f = |c: &PrecisionContext| {
        let t = Float::with_val(c.bits(), Float::u_pow_u(10, 45)).recip();
        let one = Float::with_val(c.bits(), 1);
        let d = Float::with_val(c.bits(), &one + &t) - one;
        Ok(d * Float::with_val(c.bits(), Float::u_pow_u(10, 45)))
    };
    assert!(matches!(cross_checked(&ctx(40), f), Err(NumericError::PrecisionShortfall { .. })));
    let v = cross_checked(&PrecisionContext::with_target(80, 20).unwrap(), f).unwrap();
    assert!((v.to_f64() - 1.0).abs() < 1e-15);
}
