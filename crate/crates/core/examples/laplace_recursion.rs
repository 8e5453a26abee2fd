//! Bilateral Laplace transforms of the GUE corrections and the first-order
//! recursions they satisfy, including the free constant at order 3.

use edgecascade::cascade::paper_table;
use edgecascade::catalog::EdgeCase;
use edgecascade::exact::q;
use edgecascade::transforms::{recursion_residual, recursion_step, saddle_expand, transform_element, RecursionCase};

fn main() {
    let table = paper_table(&EdgeCase::gue_soft()).expect("table");
    let mut us = Vec::new();
    for (j, r) in table.entries.iter().enumerate() {
        let u = transform_element(r).expect("transform");
        println!("u{j}(g) = {u}");
        us.push(u);
    }

    let r3 = recursion_step(RecursionCase::Gue, &us, 3).expect("step");
    println!("\nj = 3: {} free parameter(s)", r3.free_params);
    println!("  particular:  {}", r3.particular);
    for h in &r3.homogeneous {
        println!("  homogeneous: {h}");
    }

    // The saddle-point expansion fixes the free constant.
    let saddle = saddle_expand(9).expect("saddle");
    let b = saddle.b_constant().expect("b");
    println!("  b = {b} (expected {})", q(-35, 16384));
    us.push(saddle.u(3).expect("u3"));
    let r4 = recursion_step(RecursionCase::Gue, &us, 4).expect("step");
    println!("\nu4(g) = {}", r4.particular);
    us.push(r4.particular);
    for j in 0..us.len() {
        println!("residual at j = {j}: {}", if recursion_residual(RecursionCase::Gue, &us, j).is_zero() { "0" } else { "nonzero" });
    }
}
