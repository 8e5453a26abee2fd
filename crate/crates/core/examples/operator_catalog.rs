//! Lists the graded operators of every supported edge case and runs the
//! catalog's own consistency checks.

use edgecascade::catalog::{all_cases, dump_text, scaling_map, verify_catalog};

fn main() {
    for case in all_cases() {
        match dump_text(&case) {
            Ok(text) => print!("{text}"),
            Err(e) => println!("{case}: {e}"),
        }
        println!("  scaling: {:?}\n", scaling_map(&case));
    }
    for (name, r) in verify_catalog() {
        match r {
            Ok(()) => println!("PASS {name}"),
            Err(e) => println!("FAIL {name}: {e}"),
        }
    }
}
