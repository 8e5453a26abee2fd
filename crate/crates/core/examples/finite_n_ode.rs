//! Exact small-N densities and the third-order ODEs that annihilate them.

use edgecascade::catalog::{Edge, EdgeCase};
use edgecascade::exact::qi;
use edgecascade::numerics::{exact_density, verify_finite_ode};

fn main() {
    let gue = EdgeCase::gue_soft();
    let lue = EdgeCase::lue(Edge::Hard);
    println!("GUE N = 3: {}", exact_density(&gue, 3, &qi(0)).expect("density"));
    println!("LUE N = 2, a = 1: {}\n", exact_density(&lue, 2, &qi(1)).expect("density"));
    for n in 1..=4 {
        let c = verify_finite_ode(&gue, n, &qi(0)).expect("check");
        println!("GUE N = {n}: residual {}", c.residual);
        for a in 0..=2 {
            let c = verify_finite_ode(&lue, n, &qi(a)).expect("check");
            println!("LUE N = {n}, a = {a}: residual {}", c.residual);
        }
    }
}
