use edgecascade::basis::DiffOperator;
use edgecascade::catalog::*;
use edgecascade::exact::*;

fn op(items: &[(&str, u32)]) -> DiffOperator {
    DiffOperator::parse(Var::Y, items).unwrap()
}

fn case(s: &str) -> EdgeCase {
    s.parse().unwrap()
}

#[test]
fn gue_soft_operators() {
    let ops = get_operators(&case("gue-soft")).unwrap();
    assert_eq!(ops.len(), 2);
    assert_eq!(ops[0].terms(), op(&[("1", 3), ("-4y", 1), ("2", 0)]).terms());
    assert_eq!(ops[1].terms(), op(&[("-y^2", 1), ("y", 0)]).terms());
}

#[test]
fn lue_hard_operators_and_euler_forms() {
    let ops = get_operators(&case("lue-hard")).unwrap();
    assert_eq!(ops[1].terms(), op(&[("-y^3", 1)]).terms());
    for c in all_cases().into_iter().filter(|c| c.is_hard()) {
        for d in get_operators(&c).unwrap() {
            d.euler_normalize().unwrap();
        }
    }
}

#[test]
fn left_edge_is_right_edge_with_t_negated() {
    let right = get_operators(&case("lue-soft-right")).unwrap();
    let left = get_operators(&case("lue-soft-left")).unwrap();
    let minus_t = -ParamPoly::param(Var::Y, Param::T);
    for (r, l) in right.iter().zip(&left) {
        assert_eq!(r.substitute_param(Param::T, &minus_t).terms(), l.terms());
    }
}

#[test]
fn grading_integrity_for_gue_and_all_lue_regimes() {
    for d in ["gue-soft", "lue-soft-a", "lue-soft-right", "lue-soft-left", "lue-hard"] {
        check_grading(&case(d)).unwrap_or_else(|e| panic!("{d}: {e}"));
    }
}

#[test]
fn corrupted_operator_fails_grading() {
    // Compare the substituted operator against a perturbed copy.
    let got = grading_expansion(&case("lue-soft-a")).unwrap();
    let bad = got[2].add(&op(&[("1", 0)]));
    assert_ne!(bad.terms(), get_operators(&case("lue-soft-a")).unwrap()[2].terms());
}

#[test]
fn gaussian_rescaled_operators_are_beta_free() {
    let ops = scale_beta(&case("goe-soft")).unwrap();
    assert_eq!(ops[0].terms(), op(&[("1", 5), ("-5y", 3), ("3", 2), ("4y^2", 1), ("-2y", 0)]).terms());
    assert_eq!(ops[1].terms(), op(&[("-5y^2", 3), ("6y", 2), ("8y^3 - 6", 1), ("-6y^2", 0)]).terms());
    assert_eq!(ops[2].terms(), op(&[("4y^4", 1), ("-4y^3", 0)]).terms());
    assert_eq!(scale_beta(&case("gse-soft")).unwrap(), ops);
}

/// Oracle: for β = 1 the substitution y ↦ β^{−1/3}y is the identity, so the
/// rescaled operators are the printed ones times 1/4; β = 4 must agree.
#[test]
fn laguerre_rescaled_operators_match_direct_substitution() {
    let l1 = scale_beta(&case("loe-soft-right")).unwrap();
    let l4 = scale_beta(&case("lse-soft-right")).unwrap();
    assert_eq!(l1, l4);
    let raw = get_operators(&case("loe-soft-right")).unwrap();
    for (k, (r, s)) in raw.iter().zip(&l1).enumerate() {
        assert_eq!(r.scale(&q(1, 4)).terms(), s.terms(), "k = {k}");
    }
}

#[test]
fn tau_zero_limit_matches_gaussian() {
    check_tau_zero_limit().unwrap();
    let lag = scale_beta(&case("loe-soft-right")).unwrap();
    let gau = scale_beta(&case("goe-soft")).unwrap();
    assert_eq!(lag[1].bind(Param::T, &qi(0)).terms(), gau[1].terms());
}

#[test]
fn beta6_data_matches_printed_leading_terms() {
    let d = gaussian_beta6_d1();
    assert_eq!(d.order(), 5);
    assert_eq!(d.coeff(5).unwrap(), &ParamPoly::parse(Var::Y, "-42y^2").unwrap());
    assert_eq!(d.coeff(0).unwrap(), &ParamPoly::parse(Var::Y, "3456y^3 - 234").unwrap());
    assert_eq!(d.coeff(1).unwrap(), &ParamPoly::parse(Var::Y, "-5184y^4 + 1620y").unwrap());
    assert!(matches!(EdgeCase::new(Ensemble::Gaussian, 6, Edge::SoftFixedA), Err(CatalogError::Unsupported(_))));
}

#[test]
fn descriptors_roundtrip() {
    for c in all_cases() {
        let s = c.descriptor();
        assert_eq!(case(&s), c, "{s}");
    }
    assert_eq!(case("lbe-hard:beta=1"), case("loe-hard"));
    let spec: CaseSpec = "lue-soft-right:gamma=4".parse().unwrap();
    assert_eq!(spec.gamma, Some(qi(4)));
    assert!("lue-soft-left:gamma=1".parse::<CaseSpec>().is_err());
    assert!("xyz-soft".parse::<CaseSpec>().is_err());
    assert!("gue-hard".parse::<CaseSpec>().is_err());
}

#[test]
fn scaling_map_examples() {
    let g = scaling_map(&case("gue-soft"));
    assert_eq!(g.center, "sqrt(2N)");
    assert_eq!(g.nprime, "N");
    let o = scaling_map(&case("goe-soft"));
    assert!(o.nprime.contains("(beta - 2)/(2 beta)"));
    let h = scaling_map(&case("lue-hard"));
    assert_eq!(h.nprime, "N'h = N + a/2");
    assert!((tau_right(4.0) - 8.0 / 9.0).abs() < 1e-15);
    assert!((tau_left(4.0).unwrap() - 8.0).abs() < 1e-12);
    assert!(tau_left(1.0).is_err());
}

#[test]
fn numeric_scaling_values() {
    let c = case("lue-soft-right");
    let s = NumericScaling::new(&c, 10, &qi(0), Some(&qi(4)), 200).unwrap();
    // γ = 4: center 9N, scale 4^{-1/6}·3^{4/3}·N^{1/3}, N̂ = 2·2·(8/9)·N.
    assert!((s.center.to_f64() - 90.0).abs() < 1e-12);
    assert!((s.size.to_f64() - 320.0 / 9.0).abs() < 1e-12);
    let want = 4f64.powf(-1.0 / 6.0) * 3f64.powf(4.0 / 3.0) * 10f64.cbrt();
    assert!((s.scale.to_f64() - want).abs() < 1e-12);
    assert_eq!(s.a, qi(30));
    let left = NumericScaling::new(&case("lue-soft-left"), 10, &qi(0), Some(&qi(4)), 200).unwrap();
    assert!(left.scale.to_f64() < 0.0);
    assert!((left.center.to_f64() - 10.0).abs() < 1e-12);
}

#[test]
fn catalog_dumps() {
    for c in all_cases() {
        let j = dump_json(&c).unwrap();
        assert_eq!(j["case"], c.descriptor());
        assert!(dump_text(&c).unwrap().contains("D0 = "));
    }
    for (name, r) in verify_catalog() {
        assert!(r.is_ok(), "{name}: {r:?}");
    }
}
