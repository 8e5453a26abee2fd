//! Operator expansion of 1F1(-N + s; a + 1; x/N) acting on 0F1(a + 1; -x),
//! with a numeric comparison at N = 100.

use edgecascade::numerics::PrecisionContext;
use edgecascade::transforms::hypergeom_ops;

fn main() {
    let ctx = PrecisionContext::new(40).expect("precision");
    let n = 100.0_f64;
    for shift in [0u8, 1] {
        let t = hypergeom_ops(shift, 4).expect("table");
        println!("shift {shift}:\n  {t}");
        for a in [0.0, 1.0] {
            for x in [1.0, 4.0] {
                let rel = t.relative_error(n, a, x, &ctx).expect("numeric");
                println!("  N = {n}, a = {a}, x = {x}: relative error {rel:.3e} (N^-5 = {:.0e})", n.powi(-5));
            }
        }
    }
}
