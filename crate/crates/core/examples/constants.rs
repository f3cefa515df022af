//! Evaluate every named constant at a chosen precision.
//!
//! `cargo run --release --example constants -- 50`

use halfpi::constants::{evaluate, ConstantName, Provenance};

fn main() -> halfpi::Result<()> {
    let digits = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(40);
    for name in ConstantName::default_set() {
        let v = evaluate(name, digits)?;
        let how = match v.provenance {
            Provenance::Series { k, terms_used } => format!("A_{k}, {terms_used} terms"),
            Provenance::ClosedForm => "closed form".to_string(),
        };
        println!("{:<14} {}  ({how})", name.to_string(), v.digits());
    }
    Ok(())
}
