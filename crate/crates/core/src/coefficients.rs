//! The integration-ladder coefficients `D_n(k)` and the series coefficients
//! `E_n(k)`, so that for every `k >= 1`
//!
//! ```text
//! A_k = sum_{n>=1} E_n(k) (π/2)^(2n+k-1)
//! ```
//!
//! where `A_1 = ln 2`, `A_2j = β(2j)` and `A_2j+1 = η(2j+1)`.
//!
//! `D_n(1) = c_n / (2^(2n-1) 2n)` and `D_n(k) = D_n(k-1) / (2n+k-1)`. The odd
//! columns of `E` close over themselves; each even column is a combination of
//! `D_n(2j)` and the odd columns below it.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_arith::{fraction_string, inv_factorial, pow2, tangent_coeff, Rational};
use crate::limits::{self, limits};

fn check_index(n: usize, k: usize) -> Result<()> {
    if n == 0 || k == 0 {
        return Err(Error::invalid(format!(
            "coefficient indices must be >= 1 (got n = {n}, k = {k})"
        )));
    }
    Ok(())
}

/// `D_n(1)`.
pub fn d_base(n: usize) -> Result<Rational> {
    check_index(n, 1)?;
    let c = tangent_coeff(n)?;
    Ok(c * Rational::new(BigInt::one(), BigInt::from(2 * n)) * pow2(1 - 2 * n as i64))
}

/// Walk the ladder from `D_n(1)` up to `D_n(k)`.
fn ladder(n: usize, d1: Rational, k_max: usize) -> Vec<Rational> {
    let mut d = Vec::with_capacity(k_max);
    d.push(d1);
    for k in 2..=k_max {
        let prev = d.last().expect("ladder starts non-empty");
        d.push(prev / Rational::from_integer(BigInt::from(2 * n + k - 1)));
    }
    d
}

/// `D_n(k)`.
pub fn d_coeff(n: usize, k: usize) -> Result<Rational> {
    check_index(n, k)?;
    Ok(ladder(n, d_base(n)?, k).pop().expect("k >= 1"))
}

fn signed(sign_negative: bool, r: Rational) -> Rational {
    if sign_negative {
        -r
    } else {
        r
    }
}

/// `E_n(1..=k_max)` for one row, given `D_n(1..=k_max)`.
fn e_row(d: &[Rational]) -> Vec<Rational> {
    let k_max = d.len();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut e = vec![Rational::zero(); k_max];
    e[0] = d[0].clone();

    // Odd columns E(2j+1), j >= 1.
    let mut j = 1;
    while 2 * j < k_max {
        let mut acc = signed(j % 2 == 1, &d[2 * j] * &half);
        let mut sum = Rational::zero();
        for r in 0..j {
            let term = &e[2 * r] * inv_factorial(2 * (j - r));
            sum += signed(r % 2 == 1, term);
        }
        acc += signed(j % 2 == 0, sum);
        let denom = Rational::one() - pow2(-(2 * j as i64 + 1));
        e[2 * j] = acc / denom;
        j += 1;
    }

    // Even columns E(2j), j >= 1.
    let mut j = 1;
    while 2 * j <= k_max {
        let mut acc = signed(j % 2 == 1, &d[2 * j - 1] * &half);
        let mut sum = Rational::zero();
        for r in 0..j {
            let term = &e[2 * r] * inv_factorial(2 * (j - r) - 1);
            sum += signed(r % 2 == 1, term);
        }
        acc += signed(j % 2 == 0, sum);
        e[2 * j - 1] = acc;
        j += 1;
    }
    e
}

/// `E_n(k)`.
pub fn e_coeff(n: usize, k: usize) -> Result<Rational> {
    check_index(n, k)?;
    let d = ladder(n, d_base(n)?, k);
    Ok(e_row(&d).swap_remove(k - 1))
}

/// `F_n(k) = E_n(k) / D_n(1)`.
pub fn f_ratio(n: usize, k: usize) -> Result<Rational> {
    check_index(n, k)?;
    Ok(e_coeff(n, k)? / d_base(n)?)
}

/// Dense, immutable grid of `E_n(k)` for `1 <= k <= k_max`, `1 <= n <= n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    k_max: usize,
    n_max: usize,
    /// `entries[k-1][n-1] = E_n(k)`
    entries: Vec<Vec<Rational>>,
    /// `d_base[n-1] = D_n(1)`
    d_base: Vec<Rational>,
}

#[derive(Debug, Serialize)]
struct DumpEntry {
    k: usize,
    n: usize,
    value: String,
}

impl CoefficientTable {
    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn e(&self, n: usize, k: usize) -> Option<&Rational> {
        if n == 0 || k == 0 {
            return None;
        }
        self.entries.get(k - 1)?.get(n - 1)
    }

    pub fn d_base(&self, n: usize) -> Option<&Rational> {
        self.d_base.get(n.checked_sub(1)?)
    }

    /// `D_n(k)` from the stored base via the ladder; `k` is not bounded by `k_max`.
    pub fn d(&self, n: usize, k: usize) -> Option<Rational> {
        let base = self.d_base(n)?.clone();
        if k == 0 {
            return None;
        }
        ladder(n, base, k).pop()
    }

    pub fn f(&self, n: usize, k: usize) -> Option<Rational> {
        Some(self.e(n, k)? / self.d_base(n)?)
    }

    /// Column `k` as a slice over `n = 1..=n_max`.
    pub fn column(&self, k: usize) -> Option<&[Rational]> {
        self.entries.get(k.checked_sub(1)?).map(Vec::as_slice)
    }

    /// CSV dump with header `k,n,numerator,denominator`, ordered by `k` then `n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,n,numerator,denominator\n");
        for (ki, col) in self.entries.iter().enumerate() {
            for (ni, e) in col.iter().enumerate() {
                out.push_str(&format!("{},{},{},{}\n", ki + 1, ni + 1, e.numer(), e.denom()));
            }
        }
        out
    }

    /// JSON array of `{k, n, value: "num/den"}` objects.
    pub fn to_json_value(&self) -> serde_json::Value {
        let entries: Vec<DumpEntry> = self
            .entries
            .iter()
            .enumerate()
            .flat_map(|(ki, col)| {
                col.iter().enumerate().map(move |(ni, e)| DumpEntry {
                    k: ki + 1,
                    n: ni + 1,
                    value: fraction_string(e),
                })
            })
            .collect();
        serde_json::to_value(entries).expect("plain structs serialize")
    }
}

/// Build the table row by row in parallel; the result does not depend on the
/// schedule.
pub fn build_table(k_max: usize, n_max: usize) -> Result<CoefficientTable> {
    check_index(n_max, k_max)?;
    let cells = k_max.saturating_mul(n_max);
    limits::check("coefficient table cells", cells, limits().max_table_cells)?;
    // Warm the Bernoulli memo once so the parallel rows only read it.
    tangent_coeff(n_max)?;

    let rows: Vec<(Rational, Vec<Rational>)> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let d1 = d_base(n)?;
            let d = ladder(n, d1.clone(), k_max);
            Ok((d1, e_row(&d)))
        })
        .collect::<Result<_>>()?;

    let mut entries = vec![Vec::with_capacity(n_max); k_max];
    let mut d_base = Vec::with_capacity(n_max);
    for (d1, row) in rows {
        d_base.push(d1);
        for (col, e) in entries.iter_mut().zip(row) {
            col.push(e);
        }
    }
    Ok(CoefficientTable {
        k_max,
        n_max,
        entries,
        d_base,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn ladder_values() {
        assert_eq!(d_coeff(1, 1).unwrap(), q(1, 4));
        assert_eq!(d_coeff(1, 2).unwrap(), q(1, 12));
        assert_eq!(d_coeff(1, 3).unwrap(), q(1, 48));
        assert_eq!(d_coeff(2, 1).unwrap(), q(1, 96));
    }

    #[test]
    fn series_coefficients() {
        assert_eq!(e_coeff(1, 1).unwrap(), q(1, 4));
        assert_eq!(e_coeff(1, 2).unwrap(), q(5, 24));
        assert_eq!(e_coeff(1, 3).unwrap(), q(11, 84));
    }

    #[test]
    fn ratios() {
        assert_eq!(f_ratio(1, 1).unwrap(), q(1, 1));
        assert_eq!(f_ratio(1, 2).unwrap(), q(5, 6));
        assert_eq!(f_ratio(2, 2).unwrap(), q(9, 10));
    }

    #[test]
    fn zero_index_is_rejected() {
        assert!(d_coeff(0, 1).is_err());
        assert!(e_coeff(1, 0).is_err());
        assert!(build_table(0, 3).is_err());
    }

    #[test]
    fn table_matches_point_queries() {
        let t = build_table(1, 1).unwrap();
        assert_eq!(t.e(1, 1), Some(&q(1, 4)));
        assert_eq!(t.e(2, 1), None);

        let t = build_table(3, 2).unwrap();
        assert_eq!(t.e(2, 3).unwrap(), &e_coeff(2, 3).unwrap());
        for n in 1..=2 {
            assert_eq!(t.e(n, 1), t.d_base(n));
            assert_eq!(t.d(n, 3).unwrap(), d_coeff(n, 3).unwrap());
        }
    }

    #[test]
    fn table_limit_enforced() {
        let cap = limits().max_table_cells;
        assert!(matches!(
            build_table(cap + 1, 1),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn csv_dump() {
        let t = build_table(1, 1).unwrap();
        assert_eq!(t.to_csv(), "k,n,numerator,denominator\n1,1,1,4\n");
        let json = t.to_json_value();
        assert_eq!(json, serde_json::json!([{"k": 1, "n": 1, "value": "1/4"}]));
    }
}
