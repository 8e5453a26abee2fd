//! Checks every tabulated correction term against its cascade, first as
//! printed and then with the recorded errata applied.

use edgecascade::cascade::{errata, verify_tables};

fn report(label: &str, corrected: bool) -> usize {
    println!("== {label}");
    let mut failed = 0;
    for (name, r) in verify_tables(corrected) {
        let status = match r {
            Ok(true) => "PASS".to_string(),
            Ok(false) => {
                failed += 1;
                "FAIL".to_string()
            }
            Err(e) => {
                failed += 1;
                format!("ERROR {e}")
            }
        };
        println!("{status:5} {name}");
    }
    failed
}

fn main() {
    let printed = report("printed tables", false);
    println!("{printed} failing row(s)\n");
    for e in errata() {
        println!("erratum {} j={}: {}", e.case, e.j, e.note);
        println!("  printed:   {}", e.printed);
        println!("  corrected: {}", e.corrected);
    }
    println!();
    let fixed = report("corrected tables", true);
    println!("{fixed} failing row(s)");
}
