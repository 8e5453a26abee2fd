//! Operator literals. β enters only through exact rational constants.

use super::op;
use crate::basis::DiffOperator;
use crate::exact::{fmt_q, qi, Q};

/// Parenthesized rational, safe to splice into a polynomial literal.
fn c(x: &Q) -> String {
    format!("({})", fmt_q(x))
}

fn built(items: Vec<(String, u32)>, note: &str) -> DiffOperator {
    let refs: Vec<(&str, u32)> = items.iter().map(|(s, k)| (s.as_str(), *k)).collect();
    op(&refs).with_note(note)
}

pub(super) fn gue_soft() -> Vec<DiffOperator> {
    vec![
        op(&[("1", 3), ("-4y", 1), ("2", 0)]).with_note("GUE soft edge, order N^0"),
        op(&[("-y^2", 1), ("y", 0)]).with_note("GUE soft edge, order N^(-2/3)"),
    ]
}

/// Soft edge operators for the Gaussian β = 1, 4 ensembles, graded in
/// (N′_s)^{−2/3}.
pub(super) fn gaussian_beta(b: &Q) -> Vec<DiffOperator> {
    let d0 = vec![
        (c(&(qi(4) / b)), 5),
        ("-20y".to_string(), 3),
        ("12".to_string(), 2),
        (format!("16*{}*y^2", c(b)), 1),
        (format!("-8*{}*y", c(b)), 0),
    ];
    let lin = qi(14) - qi(4) * b - qi(16) / b;
    let d1 = vec![
        ("-5y^2".to_string(), 3),
        ("6y".to_string(), 2),
        (format!("8*{}*y^3 + {}", c(b), c(&lin)), 1),
        (format!("-6*{}*y^2", c(b)), 0),
    ];
    let d2 = vec![(format!("{}*y^4", c(b)), 1), (format!("-{}*y^3", c(b)), 0)];
    vec![
        built(d0, "Gaussian beta soft edge, order 0"),
        built(d1, "Gaussian beta soft edge, order (N's)^(-2/3)"),
        built(d2, "Gaussian beta soft edge, order (N's)^(-4/3)"),
    ]
}

pub(super) fn gaussian_beta6_d1() -> DiffOperator {
    op(&[
        ("-42y^2", 5),
        ("42y", 4),
        ("12*(98y^3 - 9)", 3),
        ("-1404y^2", 2),
        ("-324y*(16y^3 - 5)", 1),
        ("3456y^3 - 234", 0),
    ])
    .with_note("Gaussian beta = 6 soft edge, order (N's)^(-2/3); stored data")
}

pub(super) fn lue_soft_fixed_a() -> Vec<DiffOperator> {
    vec![
        op(&[("1", 3), ("-4y", 1), ("2", 0)]).with_note("LUE soft edge, a fixed, order 0"),
        op(&[("3y", 3), ("4", 2), ("-8y^2", 1), ("2y", 0)]).with_note("order (2N')^(-2/3)"),
        op(&[("3y^2", 3), ("8y", 2), ("-(4y^3 + A - 2)", 1)]).with_note("order (2N')^(-4/3)"),
        op(&[("y^3", 3), ("4y^2", 2), ("-(A - 2)*y", 1), ("-A", 0)]).with_note("order (2N')^(-2)"),
    ]
}

pub(super) fn lue_soft_right() -> Vec<DiffOperator> {
    vec![
        op(&[("1", 3), ("-4y", 1), ("2", 0)]).with_note("LUE right soft edge, order 0"),
        op(&[("3T*y", 3), ("4T", 2), ("-4T*y^2 - 4y^2", 1), ("-2T*y + 4y", 0)]).with_note("order N^(-2/3)"),
        op(&[("3T^2*y^2", 3), ("8T^2*y", 2), ("2T^2 - 4T*y^3", 1)]).with_note("order N^(-4/3)"),
        op(&[("T^3*y^3", 3), ("4T^3*y^2", 2), ("2T^3*y", 1)]).with_note("order N^(-2)"),
    ]
}

pub(super) fn lue_hard() -> Vec<DiffOperator> {
    vec![
        op(&[("y^3", 3), ("4y^2", 2), ("(y - A + 2)*y", 1), ("y/2 - A", 0)]).with_note("LUE hard edge, order 0"),
        op(&[("-y^3", 1)]).with_note("LUE hard edge, order (4N'h)^(-2)"),
    ]
}

/// Right soft edge operators for the Laguerre β = 1, 4 ensembles, graded in
/// (N̂′_s)^{−2/3}.
pub(super) fn laguerre_beta_soft_right(b: &Q) -> Vec<DiffOperator> {
    let ib = qi(1) / b;
    let k = |n: i64| c(&(qi(n) * &ib));
    let bb = c(b);
    let d0 = vec![
        (k(4), 5),
        ("-20y".to_string(), 3),
        ("12".to_string(), 2),
        (format!("16*{bb}*y^2"), 1),
        (format!("-8*{bb}*y"), 0),
    ];
    let d1 = vec![
        (format!("{}*T*y", k(20)), 5),
        (format!("{}*T", k(40)), 4),
        ("-5*(4 + 12T)*y^2".to_string(), 3),
        ("(24 - 52T)*y".to_string(), 2),
        (format!("16*{bb}*(2 + T)*y^3 + 2*(16T - 12)"), 1),
        (format!("-8*{bb}*(3 - T)*y^2"), 0),
    ];
    let d2 = vec![
        (format!("{}*T^2*y^2", k(40)), 5),
        (format!("{}*T^2*y", k(160)), 4),
        (format!("{}*T^2 - 60T*y^3 - 60T^2*y^3", k(93)), 3),
        ("-(16T + 140T^2)*y^2".to_string(), 2),
        (format!("(16*{bb}*y^3 + 32*{bb}*T*y^3 - 8T)*y"), 1),
        (format!("-(16*{bb}*y^3 - 8*{bb}*T*y^3 + 16T - 10T^2)"), 0),
    ];
    let d3 = vec![
        (format!("{}*T^3*y^3", k(40)), 5),
        (format!("{}*T^3*y^2", k(240)), 4),
        (format!("({}*T^3 - 60T^2*y^3 - 20T^3*y^3)*y", k(279)), 3),
        (format!("{}*T^3 - 104T^2*y^3 - 76T^3*y^3", k(38)), 2),
        (format!("(16*{bb}*T*y^3 - 8T^2 - 32T^3)*y^2"), 1),
        ("-(12T^2 - 2T^3)*y".to_string(), 0),
    ];
    let d4 = vec![
        (format!("{}*T^4*y^4", k(20)), 5),
        (format!("{}*T^4*y^3", k(160)), 4),
        (format!("({}*T^4 - 20T^3*y^3)*y^2", k(279)), 3),
        (format!("({}*T^4 - 64T^3*y^3)*y", k(76)), 2),
        (format!("-({}*T^4 + 24T^3*y^3)", k(1)), 1),
        ("-4T^3*y^2".to_string(), 0),
    ];
    let d5 = vec![
        (format!("{}*T^5*y^5", k(4)), 5),
        (format!("{}*T^5*y^4", k(40)), 4),
        (format!("{}*T^5*y^3", k(93)), 3),
        (format!("{}*T^5*y^2", k(38)), 2),
        (format!("-{}*T^5*y", k(1)), 1),
        (format!("{}*T^5", k(1)), 0),
    ];
    [d0, d1, d2, d3, d4, d5]
        .into_iter()
        .enumerate()
        .map(|(i, d)| built(d, &format!("Laguerre beta right soft edge, order (N^s)^(-{}/3)", 2 * i)))
        .collect()
}

/// Hard edge operators for the Laguerre β = 1, 4 ensembles in the formal
/// parameter Ã = a² − 1, graded in (2√β N̂_h)^{−2}.
pub(super) fn laguerre_beta_hard() -> Vec<DiffOperator> {
    vec![
        op(&[
            ("At^2 - (4 + 3At)*y + 2y^2", 0),
            ("(4y^2 - 4*(At - 3)*y - 16 - 14At + At^2)*y", 1),
            ("(38y + 16 - 22At)*y^2", 2),
            ("(10y + 88 - 5At)*y^3", 3),
            ("40y^4", 4),
            ("4y^5", 5),
        ])
        .with_note("Laguerre beta hard edge, order 0"),
        op(&[("y^2*(At - y)", 0), ("2*(At - 2 - 2y)*y^3", 1), ("-16y^4", 2), ("-5y^5", 3)])
            .with_note("Laguerre beta hard edge, order (2 sqrt(beta) N^h)^(-2)"),
        op(&[("y^5", 1)]).with_note("Laguerre beta hard edge, order (2 sqrt(beta) N^h)^(-4)"),
    ]
}

/// Raw Laguerre operator in x with numeric N and a.
pub(super) fn lue_raw(n: &Q, a: &Q) -> DiffOperator {
    let s = c(&(a + qi(2) * n));
    let a2 = c(&(a * a));
    built(
        vec![
            ("y^3".into(), 3),
            ("4y^2".into(), 2),
            (format!("-(y^2 - 2*{s}*y + {a2} - 2)*y"), 1),
            (format!("{s}*y - {a2}"), 0),
        ],
        "LUE density operator in x (x written as y)",
    )
}

pub(super) fn gue_global(n: &Q) -> DiffOperator {
    let k = qi(1) / (qi(16) * n * n);
    built(vec![(c(&k), 3), ("-(y^2 - 1)".into(), 1), ("y".into(), 0)], "global GUE density operator (x written as y)")
}

pub(super) fn gue_unscaled(n: &Q) -> DiffOperator {
    let two_n = c(&(qi(2) * n));
    built(
        vec![("1/4".into(), 3), (format!("-(y^2 - {two_n})"), 1), ("y".into(), 0)],
        "GUE density operator in the unscaled variable (t written as y)",
    )
}
