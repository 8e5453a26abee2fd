use edgecascade::exact::*;
use proptest::prelude::*;

fn p(s: &str) -> ParamPoly {
    ParamPoly::parse(Var::Y, s).unwrap()
}

fn c(x: i64) -> MPoly {
    MPoly::constant(qi(x))
}

#[test]
fn derivative_of_table_coefficient() {
    assert_eq!(p("-3/5*y^2").derivative(), p("-6/5*y"));
}

#[test]
fn additive_identity_and_difference_of_squares() {
    let x = p("y^3 - 2A*y + 7/3");
    assert_eq!(&x + &ParamPoly::zero(Var::Y), x);
    assert_eq!(p("y - A") * p("y + A"), p("y^2 - A^2"));
}

#[test]
fn poly_arith_contract() {
    let a = p("y + A");
    let b = ParamPoly::parse(Var::Gamma, "g").unwrap();
    assert!(matches!(poly_arith(PolyOp::Add(&b), &a, true), Err(ExactError::VarMismatch(..))));
    let t = p("T*y");
    assert!(matches!(poly_arith(PolyOp::Mul(&t), &a, false), Err(ExactError::ParamMismatch(_))));
    let prod = poly_arith(PolyOp::Mul(&t), &a, true).unwrap();
    assert_eq!(prod, p("T*y^2 + A*T*y"));
    assert!(prod.params().contains(Param::A) && prod.params().contains(Param::T));
    let at_two = poly_arith(PolyOp::Evaluate(&qi(2)), &p("y^2 - A"), true).unwrap();
    assert_eq!(at_two, p("4 - A"));
    assert_eq!(poly_arith(PolyOp::Derivative, &p("y^3"), true).unwrap(), p("3y^2"));
}

#[test]
fn parser_matches_constructed_values() {
    let built = &(&ParamPoly::monomial(Var::Y, 3, q(39, 175)) + &ParamPoly::constant(Var::Y, q(9, 100)));
    assert_eq!(&p("39/175*y^3 + 9/100"), built);
    assert_eq!(p("(2y+A)y/192"), p("y^2/96 + A*y/192"));
    assert_eq!(p("-(y + 2A - 2)/48"), p("-y/48 - A/24 + 1/24"));
    assert!(ParamPoly::parse(Var::Y, "y/(y+1)").is_err());
    assert!(ParamPoly::parse(Var::Y, "z").is_err());
}

#[test]
fn display_is_readable() {
    assert_eq!(p("-3/5*y^2").to_string(), "-3/5*y^2");
    assert_eq!(p("y^4/25 + 99/175*y").to_string(), "1/25*y^4 + 99/175*y");
    assert_eq!(p("(A - 4)*y").to_string(), "(A - 4)*y");
    assert_eq!(ParamPoly::zero(Var::Y).to_string(), "0");
}

#[test]
fn param_substitution() {
    let e = p("At^2 - 3At*y");
    let sub = e.substitute_param(Param::At, &p("A - 1"));
    assert_eq!(sub, p("A^2 - 2A + 1 - 3A*y + 3y"));
    assert!(!sub.params().contains(Param::At));
    assert_eq!(p("T*y + T^2").bind(Param::T, &qi(0)), ParamPoly::zero(Var::Y));
}

#[test]
fn canonical_json_roundtrip() {
    let x = p("-3/5*A*y^2 + T^2/7 - 1");
    let js = serde_json::to_string(&x).unwrap();
    assert_eq!(js, r#"{"var":"y","params":["A","T"],"terms":[[0,"1","-1"],[0,"T^2","1/7"],[2,"A","-3/5"]]}"#);
    let back: ParamPoly = serde_json::from_str(&js).unwrap();
    assert_eq!(back, x);
    assert_eq!(serde_json::to_string(&back).unwrap(), js);
}

#[test]
fn gcd_and_rational_functions() {
    let a = MPoly::var_pow(1, 1);
    let t = MPoly::var_pow(2, 1);
    let f = &(&a - &c(1)) * &(&a + &t);
    let g = &(&a - &c(1)) * &(&t - &c(3));
    let gcd = MPoly::gcd(&f, &g);
    assert_eq!(gcd, &a - &c(1));
    let r = RatFunc::new(f.clone(), g.clone()).unwrap();
    assert_eq!(r.num(), &(&a + &t));
    assert_eq!(r.den(), &(&t - &c(3)));
    // (A+T)/(T-3) * (T-3) = A+T
    let back = r.mul(&RatFunc::from_poly(&t - &c(3))).unwrap();
    assert_eq!(back.as_poly().unwrap(), &a + &t);
    // Degree guard.
    let big = MPoly::var_pow(1, 17);
    assert!(matches!(RatFunc::new(big, MPoly::one()), Err(ExactError::DegreeBound { .. })));
}

#[test]
fn identity_system() {
    let m = vec![vec![c(1), c(0)], vec![c(0), c(1)]];
    let sol = solve_exact(&m, &[c(1), c(0)]).unwrap();
    assert!(sol.consistent);
    assert_eq!(sol.particular, vec![RatFunc::one(), RatFunc::zero()]);
    assert!(sol.nullspace.is_empty());
}

#[test]
fn underdetermined_system() {
    let sol = solve_exact(&[vec![c(1), c(1)]], &[c(0)]).unwrap();
    assert!(sol.consistent);
    assert_eq!(sol.nullspace.len(), 1);
    assert_eq!(sol.nullspace[0], vec![RatFunc::from_q(qi(-1)), RatFunc::one()]);
}

#[test]
fn inconsistent_system_has_certificate() {
    let m = vec![vec![c(1), c(1)], vec![c(2), c(2)]];
    let sol = solve_exact(&m, &[c(1), c(3)]).unwrap();
    assert!(!sol.consistent);
    assert_eq!(sol.certificate_row, Some(1));
}

#[test]
fn parametric_system() {
    // [A 1; 1 A] x = [1; 0]  ->  x = (A, -1)/(A^2 - 1)
    let a = MPoly::var_pow(1, 1);
    let m = vec![vec![a.clone(), c(1)], vec![c(1), a.clone()]];
    let sol = solve_exact(&m, &[c(1), c(0)]).unwrap();
    let den = &(&a * &a) - &c(1);
    assert_eq!(sol.particular[0], RatFunc::new(a.clone(), den.clone()).unwrap());
    assert_eq!(sol.particular[1], RatFunc::new(c(-1), den).unwrap());
}

fn small_poly() -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec((0u32..3, 0u32..2, 0u32..2, -4i64..5, 1i64..4), 0..5).prop_map(|ts| {
        ParamPoly::from_terms(
            Var::Y,
            ParamSet::of(&[Param::A, Param::T]),
            ts.into_iter().map(|(k, a, t, n, d)| (k, [a, t, 0], q(n, d))),
        )
        .unwrap()
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        // Leibniz rule for the main-variable derivative.
        prop_assert_eq!((&a * &b).derivative(), &(&a.derivative() * &b) + &(&a * &b.derivative()));
    }

    #[test]
    fn canonical_form_is_unique(a in small_poly(), b in small_poly()) {
        let s1 = serde_json::to_string(&(&a + &b)).unwrap();
        let s2 = serde_json::to_string(&(&b + &a)).unwrap();
        prop_assert_eq!(s1, s2);
    }

    #[test]
    fn solve_reproduces_rhs(
        entries in prop::collection::vec(-3i64..4, 12),
        v in prop::collection::vec(-3i64..4, 4),
    ) {
        let m: Vec<Vec<MPoly>> = entries.chunks(4).map(|r| r.iter().map(|&x| c(x)).collect()).collect();
        let rhs: Vec<MPoly> = m.iter().map(|row| {
            row.iter().zip(&v).fold(MPoly::zero(), |acc, (a, &x)| &acc + &a.scale(&qi(x)))
        }).collect();
        let sol = solve_exact(&m, &rhs).unwrap();
        prop_assert!(sol.consistent);
        for (row, b) in m.iter().zip(&rhs) {
            let mut acc = RatFunc::zero();
            for (a, x) in row.iter().zip(&sol.particular) {
                acc = acc.add(&RatFunc::from_poly(a.clone()).mul(x).unwrap()).unwrap();
            }
            prop_assert_eq!(acc, RatFunc::from_poly(b.clone()));
            for nv in &sol.nullspace {
                let mut z = RatFunc::zero();
                for (a, x) in row.iter().zip(nv) {
                    z = z.add(&RatFunc::from_poly(a.clone()).mul(x).unwrap()).unwrap();
                }
                prop_assert!(z.is_zero());
            }
        }
        prop_assert_eq!(sol.rank() + sol.nullspace.len(), 4);
    }

    #[test]
    fn gcd_divides_both(a in small_poly(), b in small_poly(), g in small_poly()) {
        let f1 = a.mpoly() * g.mpoly();
        let f2 = b.mpoly() * g.mpoly();
        let d = MPoly::gcd(&f1, &f2);
        if !f1.is_zero() {
            prop_assert!(f1.div_exact(&d).is_ok());
        }
        if !f2.is_zero() {
            prop_assert!(f2.div_exact(&d).is_ok());
        }
        if !g.is_zero() && !(f1.is_zero() && f2.is_zero()) {
            prop_assert!(d.div_exact(&g.mpoly().monic()).is_ok());
        }
    }
}
