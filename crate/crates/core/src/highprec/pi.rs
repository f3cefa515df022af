use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::number::{pow10, HighPrecisionNumber};
use crate::error::Result;
use crate::limits::check_digits;

/// Guard digits carried while summing the arctangent series.
const PI_GUARD: usize = 10;

/// `arctan(1/x)` at `scale` digits via the alternating Gregory series.
///
/// Each floor division contributes < 1 ulp to the running power and < 3 ulps
/// to a term; the alternating tail is bounded by the first omitted term, which
/// is below 3 ulps once the power reaches zero.
pub(crate) fn arctan_inv(x: u32, scale: usize) -> HighPrecisionNumber {
    let x2 = BigInt::from(u64::from(x) * u64::from(x));
    let mut power = pow10(scale) / x;
    let mut sum = BigInt::zero();
    let mut terms: u64 = 0;
    let mut j: u64 = 0;
    while !power.is_zero() {
        let term = &power / (2 * j + 1);
        if j.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        j += 1;
        terms += 1;
    }
    HighPrecisionNumber::new(sum, scale, BigUint::from(3 * terms + 3))
}

/// π to `digits` fractional digits with `err_ulp <= 1`, from
/// `π = 16 arctan(1/5) - 4 arctan(1/239)`.
pub fn compute_pi(digits: usize) -> Result<HighPrecisionNumber> {
    check_digits(digits)?;
    Ok(pi_at_scale(digits + PI_GUARD).rescale(digits))
}

/// π at an arbitrary working scale, without the digit ceiling.
pub(crate) fn pi_at_scale(scale: usize) -> HighPrecisionNumber {
    let a = arctan_inv(5, scale);
    let b = arctan_inv(239, scale);
    a.mul_int(16).sub(&b.mul_int(4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn coarse_pi() {
        let p = compute_pi(1).unwrap();
        assert_eq!(p.to_digits(1), "3.1");
        assert!(p.err_ulp() <= &BigUint::one());
    }

    #[test]
    fn err_bound_is_one_ulp() {
        for d in [5, 20, 50, 200] {
            assert!(compute_pi(d).unwrap().err_ulp() <= &BigUint::one());
        }
    }

    #[test]
    fn digits_of_pi_prefix() {
        let p = compute_pi(50).unwrap();
        assert_eq!(
            p.to_digits(50),
            "3.14159265358979323846264338327950288419716939937511"
        );
    }

    #[test]
    fn precision_monotone() {
        for d in [10usize, 23, 64] {
            let fine = compute_pi(d).unwrap().rescale(d - 5);
            let coarse = compute_pi(d - 5).unwrap();
            let diff = (fine.mantissa() - coarse.mantissa()).magnitude().clone();
            assert!(diff <= BigUint::one());
        }
    }

    #[test]
    fn rejects_zero_digits() {
        assert!(compute_pi(0).is_err());
    }
}
