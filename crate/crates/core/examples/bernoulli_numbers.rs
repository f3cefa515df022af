//! Bernoulli numbers and the tangent-series coefficients built from them.
//!
//! `cargo run --example bernoulli_numbers`

use halfpi::exact_arith::{bernoulli, fraction_string, tangent_coeff};

fn main() -> halfpi::Result<()> {
    for m in (0..=20).filter(|m| *m == 1 || m % 2 == 0) {
        println!("B_{m:<2} = {}", fraction_string(&bernoulli(m)?));
    }
    println!();
    // tan x = Σ c_n x^(2n-1)
    for n in 1..=8 {
        println!("c_{n} = {}", fraction_string(&tangent_coeff(n)?));
    }
    Ok(())
}
