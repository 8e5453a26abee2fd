//! Saddle-point expansion of the GUE edge transform in powers of N^(-1/3).

use std::time::Instant;

use edgecascade::transforms::saddle_expand;

fn main() {
    let order = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(9);
    let started = Instant::now();
    let s = saddle_expand(order).expect("order within range");
    print!("{}", s.to_text());
    println!("computed in {:.2?}", started.elapsed());
}
