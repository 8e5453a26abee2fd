//! Acceptance harness: one PASS/FAIL line per criterion.
//!
//! Two criteria compare against printed correction terms that do not satisfy
//! their own cascades. Those are reported as FAIL with the reason, and the
//! process exits nonzero only when some other criterion fails.

use std::time::Instant;

use edgecascade::cascade::{
    corrected_table, decompose_homogeneous, errata, laguerre_beta_hard_particular, paper_table, relation_ids, check_relation,
    solve_next, verify_tables, AnsatzSpec, CorrectionTable,
};
use edgecascade::catalog::{Edge, EdgeCase};
use edgecascade::exact::{q, qi, ParamPoly, RatFunc, Var, Q};
use edgecascade::numerics::{convergence_study, verify_finite_ode, PrecisionContext, StudyConfig};
use edgecascade::transforms::{
    hypergeom_ops, recursion_residual, recursion_step, saddle_expand, transform_element, GammaOperator, RecursionCase,
    TransformElement,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(ctx: &str) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("{ctx}: {e}")
}

// Closed forms of the GUE Laplace transforms, written out independently.

fn sector_a(scale: Q, terms: &[(i64, i64, i32)]) -> TransformElement {
    let mut t = TransformElement::zero();
    for &(n, d, k) in terms {
        t.add_assign(&TransformElement::a_term(k, q(n, d) * &scale));
    }
    t
}

fn u0() -> TransformElement {
    sector_a(qi(1), &[(1, 2, -3)])
}

fn u1() -> TransformElement {
    sector_a(q(-1, 160), &[(60, 1, -5), (20, 1, 1), (1, 1, 7)])
}

fn u2() -> TransformElement {
    sector_a(q(1, 179200), &[(-42000, 1, -7), (28000, 1, -1), (14840, 1, 5), (680, 1, 11), (7, 1, 17)])
}

fn u3(b: &Q) -> TransformElement {
    let mut t = sector_a(
        qi(-64),
        &[(105, 16384, -9), (1099, 196608, 3), (223, 229376, 9), (17089, 412876800, 15), (27, 45875200, 21), (1, 393216000, 27)],
    );
    t.add_assign(&TransformElement::a_term(-3, qi(-64) * b));
    t
}

fn u4() -> TransformElement {
    sector_a(
        qi(256),
        &[
            (-4725, 1048576, -11),
            (315, 262144, -5),
            (3759, 1048576, 1),
            (43471, 22020096, 7),
            (61483, 293601280, 13),
            (113941, 14533263360, 19),
            (114691, 924844032000, 25),
            (37, 44040192000, 31),
            (1, 503316480000, 37),
        ],
    )
}

fn beta_u(j: usize, nu: i64) -> TransformElement {
    let two_nu = qi(2 * nu - 1);
    let (mut t, bc): (TransformElement, &[(i64, i64, i32)]) = match j {
        0 => (sector_a(qi(1), &[(1, 2, -3)]), &[(1, 4, 0)]),
        1 => (sector_a(q(-1, 80), &[(30, 1, -5), (25, 1, 1), (8, 1, 7)]), &[(-5, 20, 2), (-1, 20, 5)]),
        _ => (
            sector_a(q(1, 89600), &[(-21000, 1, -7), (37100, 1, -1), (79870, 1, 5), (19975, 1, 11), (896, 1, 17)]),
            &[(700, 1400, 1), (875, 1400, 4), (170, 1400, 7), (7, 1400, 10)],
        ),
    };
    for &(n, d, e) in bc {
        let c = q(n, d);
        t.add_assign(&TransformElement::c_term(e, c.clone()));
        t.add_assign(&TransformElement::b_term(e, c * &two_nu));
    }
    t
}

fn case(s: &str) -> EdgeCase {
    s.parse().expect("known case")
}

fn solve_at(c: &EdgeCase, table: &CorrectionTable, j: usize) -> Result<edgecascade::cascade::Solved, String> {
    let t = table.truncated(j);
    let spec = AnsatzSpec::default_for(c, &t, j).map_err(err("ansatz"))?;
    solve_next(c, &t, j, &spec).map_err(err("solve"))
}

fn erratum_note(descriptor: &str, j: usize) -> String {
    errata()
        .into_iter()
        .find(|e| e.case.descriptor() == descriptor && e.j == j)
        .map(|e| e.note.to_string())
        .unwrap_or_else(|| "no recorded erratum".into())
}

fn c1_identities() -> Outcome {
    let started = Instant::now();
    let mut failing = Vec::new();
    let mut count = 0;
    for (name, r) in verify_tables(false) {
        count += 1;
        match r {
            Ok(true) => {}
            Ok(false) => failing.push(name),
            Err(e) => failing.push(format!("{name} ({e})")),
        }
    }
    let secs = started.elapsed().as_secs_f64();
    ensure(failing.is_empty(), || format!("{} of {count} printed rows leave a residual: {}", failing.len(), failing.join(", ")))?;
    ensure(secs < 10.0, || format!("took {secs:.1} s"))?;
    Ok(format!("{count} rows, {secs:.2} s"))
}

fn c2_solver() -> Outcome {
    let mut mismatches = Vec::new();
    let gue = EdgeCase::gue_soft();
    let t = paper_table(&gue).map_err(err("table"))?;
    for j in [1, 2] {
        let s = solve_at(&gue, &t, j)?;
        ensure(s.particular == t.entries[j] && s.nullspace.is_empty(), || format!("gue-soft j={j} differs"))?;
    }
    let s3 = solve_at(&gue, &t, 3)?;
    ensure(s3.nullspace.len() == 1, || format!("gue-soft j=3 nullspace dimension {}", s3.nullspace.len()))?;

    let right = EdgeCase::lue(Edge::SoftRight);
    let t = paper_table(&right).map_err(err("table"))?;
    for j in [1, 2] {
        let s = solve_at(&right, &t, j)?;
        ensure(s.particular == t.entries[j] && s.nullspace.is_empty(), || format!("lue-soft-right j={j} differs"))?;
    }

    for c in [EdgeCase::lue(Edge::SoftFixedA), EdgeCase::lue(Edge::Hard)] {
        let printed = paper_table(&c).map_err(err("table"))?;
        let fixed = corrected_table(&c).map_err(err("table"))?;
        for j in [1, 2] {
            let s = solve_at(&c, &printed, j)?;
            ensure(s.nullspace.is_empty(), || format!("{} j={j} has a nullspace", c.descriptor()))?;
            ensure(s.particular == fixed.entries[j], || format!("{} j={j} differs from the corrected entry", c.descriptor()))?;
            if s.particular != printed.entries[j] {
                mismatches.push(format!("{} j={j}: {}", c.descriptor(), erratum_note(&c.descriptor(), j)));
            }
        }
    }
    ensure(mismatches.is_empty(), || format!("derived entries differ from the printed ones: {}", mismatches.join("; ")))?;
    Ok("all re-derived entries match".into())
}

fn c3_relations() -> Outcome {
    let ids = relation_ids();
    let mut bad = Vec::new();
    for r in &ids {
        match check_relation(r.id) {
            Ok(res) if res.is_zero() => {}
            Ok(_) => bad.push(r.id.to_string()),
            Err(e) => bad.push(format!("{} ({e})", r.id)),
        }
    }
    ensure(bad.is_empty(), || format!("nonzero residuals: {}", bad.join(", ")))?;
    Ok(format!("{} relations", ids.len()))
}

fn c4_laplace() -> Outcome {
    let t = paper_table(&EdgeCase::gue_soft()).map_err(err("table"))?;
    for (j, want) in [u0(), u1(), u2()].into_iter().enumerate() {
        let got = transform_element(&t.entries[j]).map_err(err("transform"))?;
        ensure(got == want, || format!("transform of r{j} differs"))?;
    }
    let gue = RecursionCase::Gue;
    let r1 = recursion_step(gue, &[u0()], 1).map_err(err("j=1"))?;
    ensure(r1.particular == u1() && r1.free_params == 0, || "recursion j=1".into())?;
    let r2 = recursion_step(gue, &[u0(), u1()], 2).map_err(err("j=2"))?;
    ensure(r2.particular == u2() && r2.free_params == 0, || "recursion j=2".into())?;
    let r3 = recursion_step(gue, &[u0(), u1(), u2()], 3).map_err(err("j=3"))?;
    ensure(r3.free_params == 1 && r3.particular == u3(&qi(0)), || "recursion j=3 shape".into())?;
    ensure(r3.homogeneous == vec![TransformElement::a_term(-3, qi(1))], || "j=3 homogeneous part".into())?;
    let r4 = recursion_step(gue, &[u0(), u1(), u2(), u3(&q(-35, 16384))], 4).map_err(err("j=4"))?;
    ensure(r4.particular == u4() && r4.free_params == 0, || "recursion j=4".into())?;
    let rel = GammaOperator::new([(0, 2, q(-3, 10)), (2, 1, q(-1, 5))]);
    ensure(rel.apply(&u0()) == u1(), || "u0 to u1 relation".into())?;
    for nu in [0, 1] {
        let us: Vec<_> = (0..3).map(|j| beta_u(j, nu)).collect();
        for j in 0..3 {
            ensure(recursion_residual(RecursionCase::Beta, &us, j).is_zero(), || format!("beta closed form nu={nu} j={j}"))?;
        }
    }
    Ok("u0..u4, beta u0..u2 for nu in {0, 1}".into())
}

fn c5_saddle() -> Outcome {
    let started = Instant::now();
    let s = saddle_expand(9).map_err(err("saddle"))?;
    let secs = started.elapsed().as_secs_f64();
    ensure(s.coeffs[1].is_zero(), || "N^(-1/3) coefficient is nonzero".into())?;
    for (j, want) in [u0(), u1(), u2()].into_iter().enumerate() {
        ensure(s.u(j).ok_or_else(|| format!("order {j} missing"))? == want, || format!("order {j} differs"))?;
    }
    let b = s.b_constant().ok_or("b not determined")?;
    ensure(b == q(-35, 16384), || format!("b = {b}"))?;
    ensure(secs <= 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!("b = -35/16384, {secs:.2} s"))
}

fn c6_hypergeom() -> Outcome {
    let shift0: [(u32, &[(i64, i64, u32)]); 5] = [
        (0, &[(1, 1, 0)]),
        (1, &[(-1, 2, 2)]),
        (2, &[(1, 8, 4), (1, 3, 3)]),
        (3, &[(-1, 48, 6), (-1, 6, 5), (-1, 4, 4)]),
        (4, &[(1, 384, 8), (1, 24, 7), (13, 72, 6), (1, 5, 5)]),
    ];
    let shift1: [(u32, &[(i64, i64, u32)]); 4] = [
        (1, &[(-1, 2, 2), (-1, 1, 1)]),
        (2, &[(1, 8, 4), (5, 6, 3), (1, 1, 2)]),
        (3, &[(-1, 48, 6), (-7, 24, 5), (-13, 12, 4), (-1, 1, 3)]),
        (4, &[(1, 384, 8), (1, 16, 7), (17, 36, 6), (77, 60, 5), (1, 1, 4)]),
    ];
    for (shift, expect) in [(0u8, &shift0[..]), (1, &shift1[..])] {
        let t = hypergeom_ops(shift, 4).map_err(err("table"))?;
        for &(k, terms) in expect {
            let want: Vec<(Q, u32)> = terms.iter().map(|&(n, d, m)| (q(n, d), m)).collect();
            ensure(t.entry(k).to_vec() == want, || format!("shift {shift}, N^-{k} coefficients differ"))?;
        }
    }
    let ctx = PrecisionContext::new(40).map_err(err("precision"))?;
    let t = hypergeom_ops(0, 4).map_err(err("table"))?;
    let n = 100.0_f64;
    let bound = 10.0 * n.powi(-5);
    let mut worst = 0.0_f64;
    for a in [0.0, 1.0] {
        for x in [1.0, 4.0] {
            let rel = t.relative_error(n, a, x, &ctx).map_err(err("numeric"))?;
            ensure(rel <= bound, || format!("a={a} x={x}: relative error {rel:e} > {bound:e}"))?;
            worst = worst.max(rel);
        }
    }
    Ok(format!("worst relative error {worst:.2e} (bound {bound:.0e})"))
}

fn c7_finite_ode() -> Outcome {
    let lue = EdgeCase::lue(Edge::Hard);
    let gue = EdgeCase::gue_soft();
    for n in 1..=4 {
        for a in 0..=2 {
            let chk = verify_finite_ode(&lue, n, &qi(a)).map_err(err("lue"))?;
            ensure(chk.passed, || format!("LUE N={n} a={a}"))?;
        }
        let chk = verify_finite_ode(&gue, n, &qi(0)).map_err(err("gue"))?;
        ensure(chk.passed, || format!("GUE N={n}"))?;
    }
    Ok("LUE N<=4 a in {0,1,2}, GUE N<=4".into())
}

fn c8_convergence() -> Outcome {
    let soft: Vec<f64> = (0..9).map(|i| -2.0 + 0.5 * i as f64).collect();
    let hard: Vec<f64> = (1..=8).map(f64::from).collect();
    let plan = [
        ("gue j=0", EdgeCase::gue_soft(), 0, [50, 100, 200], &soft, qi(0), None, 0.1),
        ("gue j=1", EdgeCase::gue_soft(), 1, [50, 100, 200], &soft, qi(0), None, 0.15),
        ("hard j=0", EdgeCase::lue(Edge::Hard), 0, [20, 40, 80], &hard, qi(1), None, 0.2),
        ("hard j=1", EdgeCase::lue(Edge::Hard), 1, [20, 40, 80], &hard, qi(1), None, 0.3),
        ("right j=1", EdgeCase::lue(Edge::SoftRight), 1, [50, 100, 200], &soft, qi(0), Some(qi(4)), 0.2),
    ];
    let mut summary = Vec::new();
    for (label, case, j, ns, ys, a, gamma, tol) in plan {
        let cfg = StudyConfig { case, j, ns: ns.to_vec(), ys: ys.clone(), a, gamma, ctx: PrecisionContext::for_size(200) };
        let r = convergence_study(&cfg).map_err(err(label))?;
        let dev = r.max_deviation();
        ensure(dev < tol, || format!("{label}: fitted orders deviate by {dev:.3} from {:.3}", r.predicted_order))?;
        summary.push(format!("{label} {:.2}", r.predicted_order));
    }
    Ok(summary.join(", "))
}

fn c9_decomposition() -> Outcome {
    let c = case("loe-hard");
    let t = paper_table(&c).map_err(err("table"))?;
    let d = decompose_homogeneous(&c, &t.entries[1]).map_err(err("decompose"))?;
    let want = RatFunc::from_poly(ParamPoly::parse(Var::Y, "(1 - A)/4").map_err(err("parse"))?.mpoly().clone());
    ensure(d.c == want, || format!("C = {}", d.c))?;
    ensure(d.remainder == laguerre_beta_hard_particular(&c), || "remainder differs".into())?;
    Ok("C = (1 - A)/4".into())
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 9] = [
        (1, "exact identity suite", c1_identities),
        (2, "solver reproduction", c2_solver),
        (3, "differential relations", c3_relations),
        (4, "Laplace transforms and recursion", c4_laplace),
        (5, "saddle-point engine", c5_saddle),
        (6, "hypergeometric operator expansion", c6_hypergeom),
        (7, "finite-N ODE", c7_finite_ode),
        (8, "convergence studies", c8_convergence),
        (9, "homogeneous decomposition", c9_decomposition),
    ];
    // Printed terms that fail their cascades; see the errata table.
    let known: &[u32] = &[1, 2];
    let mut unexpected = 0;
    for (id, name, check) in criteria {
        let started = Instant::now();
        let result = check();
        let secs = started.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {id}: {name} ({detail}) [{secs:.1} s]"),
            Err(why) => {
                let tag = if known.contains(&id) { "known" } else { unexpected += 1; "unexpected" };
                println!("FAIL criterion {id}: {name}: {why} [{tag}, {secs:.1} s]");
            }
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
