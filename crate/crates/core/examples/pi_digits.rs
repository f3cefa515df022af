//! π with a rigorous error bound, and the Bernoulli closed form for ζ(2n).
//!
//! `cargo run --release --example pi_digits -- 100`

use halfpi::constants::zeta_even_closed;
use halfpi::highprec::compute_pi;

fn main() -> halfpi::Result<()> {
    let digits = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(60);
    let pi = compute_pi(digits)?;
    println!("pi        = {}  (± {} ulp)", pi.to_digits(digits), pi.err_ulp());
    for n in 1..=4 {
        println!("zeta({}) = {}", 2 * n, zeta_even_closed(n, digits)?.digits());
    }
    Ok(())
}
