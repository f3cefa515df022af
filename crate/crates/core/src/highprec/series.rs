use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::number::HighPrecisionNumber;
use super::pi::pi_at_scale;
use crate::coefficients::CoefficientTable;
use crate::error::{Error, Result};
use crate::exact_arith::Rational;
use crate::limits::check_digits;

/// Working digits carried beyond the requested precision.
pub const GUARD_DIGITS: usize = 10;

/// Assumed geometric ratio for the tail bound (the measured limit is 1/4).
pub const TAIL_RATIO: (u32, u32) = (1, 3);

/// Terms before the ratio check starts.
pub const RATIO_BURN_IN: usize = 5;

/// Truncated evaluation of `A_k = sum E_n(k) (π/2)^(2n+k-1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesResult {
    pub value: HighPrecisionNumber,
    pub terms_used: usize,
    /// Geometric bound on the omitted tail, at working precision. Already
    /// folded into `value.err_ulp()`.
    pub tail_bound: HighPrecisionNumber,
    pub k: usize,
}

/// Number of terms after which the tail is below `10^-(digits + GUARD_DIGITS)`,
/// assuming the term ratio never exceeds 1/3.
pub fn estimate_terms(digits: usize, k: usize) -> usize {
    let target = (digits + GUARD_DIGITS) as f64 * std::f64::consts::LN_10;
    // leading term is at most (π/2)^(k+1) in magnitude
    let lead = ((k + 1) as f64 * std::f64::consts::FRAC_PI_2.ln()).max(0.0);
    let per_term = 3f64.ln();
    1 + ((target + lead) / per_term).ceil() as usize
}

/// Rational upper bound on `(π/2)^2` used by the ratio check.
fn half_pi_sq_upper() -> Rational {
    Rational::new(BigInt::from(24_674_011_003u64), BigInt::from(10_000_000_000u64))
}

fn check_ratio(table: &CoefficientTable, k: usize, n: usize) -> Result<()> {
    let (Some(a), Some(b)) = (table.e(n, k), table.e(n + 1, k)) else {
        return Ok(());
    };
    let bound = Rational::new(BigInt::from(TAIL_RATIO.0), BigInt::from(TAIL_RATIO.1));
    let ratio = if a.is_zero() {
        None
    } else {
        Some((b / a).abs() * half_pi_sq_upper())
    };
    match ratio {
        Some(r) if r <= bound => Ok(()),
        r => Err(Error::TailCheck {
            k,
            n,
            ratio: r
                .map(|r| HighPrecisionNumber::from_rational(&r, 12).to_f64())
                .unwrap_or(f64::INFINITY),
            bound: f64::from(TAIL_RATIO.0) / f64::from(TAIL_RATIO.1),
        }),
    }
}

/// Sum `A_k` to `digits` fractional digits.
///
/// Each term is a running power of π/2 (one multiplication per term) scaled
/// by the exact rational `E_n(k)`. Summation stops once the geometric tail bound drops
/// below one working ulp.
pub fn sum_series(table: &CoefficientTable, k: usize, digits: usize) -> Result<SeriesResult> {
    let work = sum_series_at_scale(table, k, digits)?;
    Ok(SeriesResult {
        value: work.value.rescale(digits),
        ..work
    })
}

/// Same as [`sum_series`] but leaves the value at working precision
/// (`digits + GUARD_DIGITS`).
pub(crate) fn sum_series_at_scale(
    table: &CoefficientTable,
    k: usize,
    digits: usize,
) -> Result<SeriesResult> {
    check_digits(digits)?;
    if k == 0 || k > table.k_max() {
        return Err(Error::IndexOutOfTable {
            k,
            k_max: table.k_max(),
        });
    }
    let required = estimate_terms(digits, k);
    if table.n_max() < required {
        return Err(Error::InsufficientTable {
            k,
            available: table.n_max(),
            required,
        });
    }

    let scale = digits + GUARD_DIGITS;
    let half_pi = pi_at_scale(scale + 5).div_int(&BigInt::from(2)).rescale(scale);
    let step = half_pi.mul(&half_pi);
    let mut power = half_pi.powi(k as u32 + 1);
    let mut sum = HighPrecisionNumber::zero(scale);
    let two = BigUint::from(2u32);

    for n in 1..=table.n_max() {
        let e = table.e(n, k).expect("n <= n_max and k <= k_max");
        let term = power.mul_rational(e);
        sum = sum.add(&term);
        if n >= RATIO_BURN_IN {
            check_ratio(table, k, n)?;
        }
        // tail <= |term| * r / (1 - r) = |term| / 2 for r = 1/3
        let magnitude = term.mantissa().magnitude() + term.err_ulp();
        let tail = magnitude.div_ceil(&two);
        if n >= RATIO_BURN_IN && tail <= BigUint::from(1u32) {
            check_ratio(table, k, n + 1)?;
            let tail_bound = HighPrecisionNumber::new(
                BigInt::from_biguint(num_bigint::Sign::Plus, tail.clone()),
                scale,
                BigUint::zero(),
            );
            return Ok(SeriesResult {
                value: sum.with_extra_error(&tail),
                terms_used: n,
                tail_bound,
                k,
            });
        }
        power = power.mul(&step);
    }
    Err(Error::InsufficientTable {
        k,
        available: table.n_max(),
        required: table.n_max() + 1,
    })
}

/// One point of the term-ratio diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioPoint {
    pub n: usize,
    /// `|E_{n+1}(k) / E_n(k)| * (π/2)^2`
    pub ratio: f64,
}

/// Consecutive term ratios of column `k` for `n = 1..n_max`.
pub fn ratio_diagnostics(table: &CoefficientTable, k: usize) -> Result<Vec<RatioPoint>> {
    let column = table.column(k).ok_or(Error::IndexOutOfTable {
        k,
        k_max: table.k_max(),
    })?;
    let half_pi = pi_at_scale(30).div_int(&BigInt::from(2));
    let step = half_pi.mul(&half_pi).to_f64();
    Ok(column
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let ratio = if w[0].is_zero() {
                f64::INFINITY
            } else {
                HighPrecisionNumber::from_rational(&(&w[1] / &w[0]).abs(), 20).to_f64() * step
            };
            RatioPoint { n: i + 1, ratio }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::build_table;

    #[test]
    fn estimate_terms_range() {
        let n = estimate_terms(30, 3);
        assert!((55..=120).contains(&n), "{n}");
        assert!(estimate_terms(1, 1) >= 3);
        for k in 1..6 {
            for d in [1, 10, 30, 100] {
                assert!(estimate_terms(d + 10, k) > estimate_terms(d, k));
            }
        }
    }

    #[test]
    fn alternating_harmonic_is_ln2() {
        let table = build_table(3, estimate_terms(15, 3)).unwrap();
        let r = sum_series(&table, 1, 15).unwrap();
        assert_eq!(r.value.to_digits(15), "0.693147180559945");
        assert!(r.value.err_ulp() <= &BigUint::from(1u32));
        assert_eq!(r.k, 1);
        assert!(r.terms_used <= estimate_terms(15, 1));
    }

    #[test]
    fn insufficient_table_is_reported() {
        let table = build_table(2, 10).unwrap();
        assert!(matches!(
            sum_series(&table, 2, 30),
            Err(Error::InsufficientTable { .. })
        ));
        assert!(matches!(
            sum_series(&table, 3, 1),
            Err(Error::IndexOutOfTable { .. })
        ));
    }

    #[test]
    fn ratio_diagnostic_tends_to_quarter() {
        let table = build_table(2, 60).unwrap();
        let pts = ratio_diagnostics(&table, 2).unwrap();
        assert_eq!(pts.len(), 59);
        let last = pts.last().unwrap();
        assert_eq!(last.n, 59);
        assert!((last.ratio - 0.25).abs() < 0.01, "{}", last.ratio);
    }
}
