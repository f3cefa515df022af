//! Series values against the independent oracles.
//!
//! `cargo run --release --example verify_oracles -- 60`

use halfpi::constants::ConstantName;
use halfpi::oracle::verify;

fn main() -> halfpi::Result<()> {
    let digits = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(30);
    for name in ConstantName::default_set() {
        let r = verify(name, digits)?;
        println!(
            "{:<14} matched {:>3}/{digits}  terms {:>3}  {:>6.1} ms",
            r.name,
            r.matched_digits,
            r.terms_used,
            r.elapsed.as_secs_f64() * 1e3
        );
    }
    Ok(())
}
