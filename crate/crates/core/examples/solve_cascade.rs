//! Re-derives correction terms by solving the cascade inside a polynomial
//! ansatz, and shows the one-dimensional ambiguity at GUE order 3.

use edgecascade::cascade::{paper_table, solve_next, AnsatzSpec};
use edgecascade::catalog::{Edge, EdgeCase};

fn main() {
    let cases = [
        (EdgeCase::gue_soft(), 3),
        (EdgeCase::lue(Edge::SoftFixedA), 2),
        (EdgeCase::lue(Edge::SoftRight), 2),
        (EdgeCase::lue(Edge::Hard), 2),
    ];
    for (case, top) in cases {
        let table = paper_table(&case).expect("table");
        println!("== {case}");
        for j in 1..=top {
            let t = table.truncated(j);
            let spec = AnsatzSpec::default_for(&case, &t, j).expect("ansatz");
            let s = solve_next(&case, &t, j, &spec).expect("solvable");
            println!("r{j} = {}", s.particular);
            println!("   bounds {:?}, nullspace dimension {}", s.ansatz.bounds, s.nullspace.len());
            for h in &s.nullspace {
                println!("   homogeneous: {h}");
            }
            if let Some(printed) = table.entries.get(j) {
                println!("   matches printed entry: {}", if *printed == s.particular { "yes" } else { "no" });
            }
        }
    }
}
