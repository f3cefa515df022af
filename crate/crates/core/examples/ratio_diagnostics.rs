//! Measured term ratios |E_{n+1}(k)/E_n(k)|·(π/2)² for a few columns. They
//! settle near 1/4, below the 1/3 assumed by the tail bound.
//!
//! `cargo run --release --example ratio_diagnostics`

use halfpi::coefficients::build_table;
use halfpi::highprec::ratio_diagnostics;

fn main() -> halfpi::Result<()> {
    let table = build_table(6, 61)?;
    for k in 1..=table.k_max() {
        let pts = ratio_diagnostics(&table, k)?;
        let sample: Vec<String> = [1usize, 5, 10, 20, 40, 60]
            .iter()
            .map(|&n| format!("{:.5}", pts[n - 1].ratio))
            .collect();
        println!("k = {k}: n=1,5,10,20,40,60 -> {}", sample.join("  "));
    }
    Ok(())
}
