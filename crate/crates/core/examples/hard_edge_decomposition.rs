//! Splits the first hard-edge correction of the β = 1 Laguerre ensemble into
//! a multiple of r0 plus a particular solution.

use edgecascade::cascade::{decompose_homogeneous, laguerre_beta_hard_particular, paper_table};
use edgecascade::catalog::EdgeCase;

fn main() {
    let case: EdgeCase = "loe-hard".parse().expect("case");
    let table = paper_table(&case).expect("table");
    let r1 = &table.entries[1];
    let d = decompose_homogeneous(&case, r1).expect("decomposition");
    println!("r1 = {r1}");
    println!("   = C * r0 + remainder");
    println!("C = {}", d.c);
    println!("remainder = {}", d.remainder);
    println!("pivot coordinate: {:?}", d.pivot);
    println!("remainder is the particular solution: {}", d.remainder == laguerre_beta_hard_particular(&case));
}
