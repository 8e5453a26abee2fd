//! Fitted convergence orders of the truncated edge expansions against
//! finite-N densities computed in MPFR arithmetic.

use edgecascade::catalog::{Edge, EdgeCase};
use edgecascade::exact::{qi, Q};
use edgecascade::numerics::{convergence_study, PrecisionContext, StudyConfig};

fn run(label: &str, case: EdgeCase, j: usize, ns: &[u32], ys: Vec<f64>, a: Q, gamma: Option<Q>) {
    let cfg = StudyConfig { case, j, ns: ns.to_vec(), ys, a, gamma, ctx: PrecisionContext::for_size(*ns.last().unwrap()) };
    match convergence_study(&cfg) {
        Ok(report) => {
            println!("== {label}");
            print!("{}", report.to_text());
            for f in &report.pointwise {
                println!("  y = {:>6.2}  {} -> {}: {:.4}", f.y.unwrap_or(f64::NAN), f.n_lo, f.n_hi, f.order);
            }
        }
        Err(e) => println!("== {label}: {e}"),
    }
}

fn main() {
    let soft_ys: Vec<f64> = (0..9).map(|i| -2.0 + 0.5 * i as f64).collect();
    let hard_ys: Vec<f64> = (1..=8).map(|i| i as f64).collect();
    for j in 0..2 {
        run(&format!("GUE soft edge, j = {j}"), EdgeCase::gue_soft(), j, &[50, 100, 200], soft_ys.clone(), qi(0), None);
    }
    for j in 0..2 {
        run(&format!("LUE hard edge a = 1, j = {j}"), EdgeCase::lue(Edge::Hard), j, &[20, 40, 80], hard_ys.clone(), qi(1), None);
    }
    run("LUE right soft edge gamma = 4, j = 1", EdgeCase::lue(Edge::SoftRight), 1, &[50, 100, 200], soft_ys.clone(), qi(0), Some(qi(4)));
    run("LUE soft edge a = 2, j = 1", EdgeCase::lue(Edge::SoftFixedA), 1, &[50, 100, 200], soft_ys, qi(2), None);
}
