//! Residuals of the sine/cosine identities over the standard angles, plus the
//! recovery of `η(2k+1)` from the cosine identity at `θ = π/2`.
//!
//! `cargo run --release --example identity_sweep`

use halfpi::constants::eta_odd;
use halfpi::identity_check::{
    check_half_tangent, eta_from_cosine_identity, standard_angles, sweep, sweep_csv, Angle,
    Identity, IDENTITY_DIGITS,
};

fn main() -> halfpi::Result<()> {
    let angles: Vec<Angle> = standard_angles()
        .into_iter()
        .filter(|a| a.label() != "3.0")
        .collect();
    let terms = |k: usize| if k == 1 { 1_000_000 } else { 10_000 };
    let rows = sweep(&[Identity::S1, Identity::S2], &[1, 2, 3], &angles, terms, 80)?;
    print!("{}", sweep_csv(&rows));

    println!();
    for theta in &angles {
        let r = check_half_tangent(theta, 1_000_000)?;
        println!("half-tangent, theta = {}: residual {}", theta.label(), r.to_scientific(3));
    }

    println!();
    for k in 1..=2 {
        let implied = eta_from_cosine_identity(k, 120)?;
        let direct = eta_odd(k, IDENTITY_DIGITS)?.value;
        println!(
            "eta({}) from cosine identity: {}  direct: {}",
            2 * k + 1,
            implied.to_digits(30),
            direct.to_digits(30)
        );
    }
    Ok(())
}
