//! Exact E_n(k) table, first as rationals and then as CSV.
//!
//! `cargo run --example coefficient_dump`

use halfpi::coefficients::{build_table, d_coeff, f_ratio};
use halfpi::exact_arith::fraction_string;

fn main() -> halfpi::Result<()> {
    let table = build_table(4, 6)?;
    for k in 1..=table.k_max() {
        let row: Vec<String> = table
            .column(k)
            .unwrap()
            .iter()
            .map(fraction_string)
            .collect();
        println!("E_n({k}): {}", row.join(", "));
    }
    println!();
    println!("D_3(2) = {}", fraction_string(&d_coeff(3, 2)?));
    println!("F_3(2) = {}", fraction_string(&f_ratio(3, 2)?));
    println!();
    print!("{}", build_table(2, 3)?.to_csv());
    Ok(())
}
