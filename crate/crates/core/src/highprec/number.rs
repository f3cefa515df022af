use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact_arith::Rational;

/// `10^e` as a `BigInt`.
pub fn pow10(e: usize) -> BigInt {
    num_traits::pow(BigInt::from(10u32), e)
}

fn pow10u(e: usize) -> BigUint {
    num_traits::pow(BigUint::from(10u32), e)
}

/// Round `num / den` to the nearest integer, ties away from zero. `den > 0`.
pub(crate) fn div_round(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    let twice = r.abs() << 1;
    if twice >= *den {
        if num.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

fn ceil_div(num: &BigUint, den: &BigUint) -> BigUint {
    num.div_ceil(den)
}

fn magnitude(x: &BigInt) -> BigUint {
    x.magnitude().clone()
}

/// Decimal fixed-point value `mantissa * 10^-scale` with an absolute error
/// bound of `err_ulp * 10^-scale`.
///
/// Every operation widens `err_ulp` by the worst case of the inputs plus its
/// own rounding, so the bound is never optimistic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HighPrecisionNumber {
    mantissa: BigInt,
    scale: usize,
    err_ulp: BigUint,
}

impl HighPrecisionNumber {
    pub fn new(mantissa: BigInt, scale: usize, err_ulp: BigUint) -> Self {
        HighPrecisionNumber {
            mantissa,
            scale,
            err_ulp,
        }
    }

    pub fn zero(scale: usize) -> Self {
        Self::new(BigInt::zero(), scale, BigUint::zero())
    }

    /// Exact integer.
    pub fn from_integer(v: impl Into<BigInt>, scale: usize) -> Self {
        Self::new(v.into() * pow10(scale), scale, BigUint::zero())
    }

    /// Nearest representable value; exact results carry no error.
    pub fn from_rational(r: &Rational, scale: usize) -> Self {
        let num = r.numer() * pow10(scale);
        let den = r.denom();
        let exact = (&num % den).is_zero();
        let err = if exact { BigUint::zero() } else { BigUint::one() };
        Self::new(div_round(&num, den), scale, err)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn scale(&self) -> usize {
        self.scale
    }

    pub fn err_ulp(&self) -> &BigUint {
        &self.err_ulp
    }

    pub fn is_exact(&self) -> bool {
        self.err_ulp.is_zero()
    }

    /// Widen the error bound by `extra` ulps.
    pub fn with_extra_error(mut self, extra: &BigUint) -> Self {
        self.err_ulp += extra;
        self
    }

    pub fn abs(&self) -> Self {
        Self::new(self.mantissa.abs(), self.scale, self.err_ulp.clone())
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.mantissa, self.scale, self.err_ulp.clone())
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    /// Change the scale. Going finer is exact; going coarser rounds to nearest
    /// and folds the rounding residual into the bound.
    pub fn rescale(&self, scale: usize) -> Self {
        match scale.cmp(&self.scale) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let f = pow10(scale - self.scale);
                let fu = pow10u(scale - self.scale);
                Self::new(&self.mantissa * &f, scale, &self.err_ulp * fu)
            }
            Ordering::Less => {
                let shift = self.scale - scale;
                let f = pow10(shift);
                let m = div_round(&self.mantissa, &f);
                let residual = magnitude(&(&self.mantissa - &m * &f));
                let err = ceil_div(&(residual + &self.err_ulp), &pow10u(shift));
                Self::new(m, scale, err)
            }
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let s = self.scale.max(other.scale);
        (self.rescale(s), other.rescale(s))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        Self::new(a.mantissa + b.mantissa, a.scale, a.err_ulp + b.err_ulp)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let unit = pow10(a.scale);
        let prod = &a.mantissa * &b.mantissa;
        let m = div_round(&prod, &unit);
        // |ab - xy| <= |a| e_b + |b| e_a + e_a e_b, in units of 10^-2s
        let spread = magnitude(&a.mantissa) * &b.err_ulp
            + magnitude(&b.mantissa) * &a.err_ulp
            + &a.err_ulp * &b.err_ulp;
        let residual = magnitude(&(&prod - &m * &unit));
        let err = ceil_div(&(spread + residual), &pow10u(a.scale));
        Self::new(m, a.scale, err)
    }

    /// Multiply by an exact rational.
    pub fn mul_rational(&self, r: &Rational) -> Self {
        let num = &self.mantissa * r.numer();
        let den = r.denom();
        let m = div_round(&num, den);
        let residual = magnitude(&(&num - &m * den));
        let err = ceil_div(
            &(&self.err_ulp * magnitude(r.numer()) + residual),
            &magnitude(den),
        );
        Self::new(m, self.scale, err)
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Self::new(
            &self.mantissa * k,
            self.scale,
            &self.err_ulp * k.unsigned_abs(),
        )
    }

    /// Divide by a nonzero integer.
    pub fn div_int(&self, k: &BigInt) -> Self {
        self.mul_rational(&Rational::new(BigInt::one(), k.clone()))
    }

    /// `self^e` by repeated multiplication.
    pub fn powi(&self, e: u32) -> Self {
        let mut acc = Self::from_integer(1, self.scale);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Rigorous interval `[lo, hi]` in units of `10^-scale`.
    pub fn interval(&self) -> (BigInt, BigInt) {
        let e = BigInt::from_biguint(Sign::Plus, self.err_ulp.clone());
        (&self.mantissa - &e, &self.mantissa + &e)
    }

    /// True when the two error intervals overlap.
    pub fn consistent_with(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        let diff = magnitude(&(a.mantissa - b.mantissa));
        diff <= a.err_ulp + b.err_ulp
    }

    /// Absolute difference as an exact rational (errors ignored).
    pub fn abs_diff(&self, other: &Self) -> Rational {
        (self.to_rational() - other.to_rational()).abs()
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mantissa.clone(), pow10(self.scale))
    }

    pub fn to_f64(&self) -> f64 {
        let short = self.rescale(self.scale.min(30));
        let m = short.mantissa.to_f64().unwrap_or(f64::NAN);
        m / 10f64.powi(short.scale as i32)
    }

    /// Error bound as a rational.
    pub fn error_bound(&self) -> Rational {
        Rational::new(
            BigInt::from_biguint(Sign::Plus, self.err_ulp.clone()),
            pow10(self.scale),
        )
    }

    /// Round to `digits` fractional digits and render as a plain decimal.
    pub fn to_digits(&self, digits: usize) -> String {
        let r = if digits < self.scale {
            self.rescale(digits)
        } else {
            self.clone()
        };
        format_fixed(&r.mantissa, r.scale, digits)
    }

    /// Render with `sig` significant digits in `d.ddde-N` form.
    pub fn to_scientific(&self, sig: usize) -> String {
        let sig = sig.max(1);
        if self.mantissa.is_zero() {
            return format!("0e-{}", self.scale);
        }
        let digits = self.mantissa.magnitude().to_string().len();
        // value = mantissa * 10^-scale; leading digit has exponent digits-1-scale
        let exp = digits as i64 - 1 - self.scale as i64;
        let drop = digits.saturating_sub(sig);
        let mut m = div_round(&self.mantissa, &pow10(drop));
        let mut exp = exp;
        if m.magnitude().to_string().len() > sig {
            m = div_round(&m, &BigInt::from(10));
            exp += 1;
        }
        let body = format_fixed(&m, sig.min(digits) - 1, sig.min(digits) - 1);
        format!("{body}e{exp}")
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let (a, b) = self.aligned(other);
        a.mantissa.cmp(&b.mantissa)
    }
}

/// Render `mantissa * 10^-scale` with exactly `digits` fractional digits,
/// padding with zeros when `digits > scale`.
pub(crate) fn format_fixed(mantissa: &BigInt, scale: usize, digits: usize) -> String {
    let neg = mantissa.is_negative();
    let mut s = mantissa.abs().to_string();
    if s.len() <= scale {
        s = "0".repeat(scale + 1 - s.len()) + &s;
    }
    let (int, frac) = s.split_at(s.len() - scale);
    let mut frac = frac.to_string();
    while frac.len() < digits {
        frac.push('0');
    }
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

impl fmt::Display for HighPrecisionNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ± {} ulp",
            format_fixed(&self.mantissa, self.scale, self.scale),
            self.err_ulp
        )
    }
}

/// Parse a decimal string (`3.14`, `-0.5`, `2`) into an exact value at `scale`.
/// Extra fractional digits beyond `scale` are rounded.
pub fn parse_decimal(s: &str, scale: usize) -> Option<HighPrecisionNumber> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let m: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let m = if neg { -m } else { m };
    let r = Rational::new(m, pow10(frac.len()));
    Some(HighPrecisionNumber::from_rational(&r, scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_conversion_rounds_to_nearest() {
        let x = HighPrecisionNumber::from_rational(&q(2, 3), 5);
        assert_eq!(x.mantissa(), &BigInt::from(66667));
        assert_eq!(x.err_ulp(), &BigUint::one());
        let y = HighPrecisionNumber::from_rational(&q(-1, 4), 2);
        assert_eq!(y.mantissa(), &BigInt::from(-25));
        assert!(y.is_exact());
    }

    #[test]
    fn rendering() {
        let x = HighPrecisionNumber::from_rational(&q(-1, 8), 3);
        assert_eq!(x.to_digits(3), "-0.125");
        assert_eq!(x.to_digits(2), "-0.13");
        assert_eq!(x.to_digits(5), "-0.12500");
        let y = HighPrecisionNumber::from_integer(7, 2);
        assert_eq!(y.to_digits(0), "7");
    }

    #[test]
    fn scientific() {
        let x = HighPrecisionNumber::from_rational(&q(1, 3), 20);
        assert_eq!(x.to_scientific(3), "3.33e-1");
        let y = HighPrecisionNumber::new(BigInt::from(-99_960), 12, BigUint::zero());
        assert_eq!(y.to_scientific(3), "-1.00e-7");
        assert_eq!(HighPrecisionNumber::zero(5).to_scientific(3), "0e-5");
        assert_eq!(HighPrecisionNumber::from_integer(42, 3).to_scientific(1), "4e1");
    }

    #[test]
    fn parse() {
        let x = parse_decimal("2.5", 4).unwrap();
        assert_eq!(x.mantissa(), &BigInt::from(25000));
        assert!(parse_decimal("1e3", 4).is_none());
        assert!(parse_decimal(".", 4).is_none());
        assert_eq!(parse_decimal("-.5", 1).unwrap().mantissa(), &BigInt::from(-5));
    }

    #[test]
    fn rescale_coarser_accounts_for_rounding() {
        let x = HighPrecisionNumber::new(BigInt::from(123_456), 5, BigUint::from(3u32));
        let y = x.rescale(2);
        assert_eq!(y.mantissa(), &BigInt::from(123));
        // residual 0.456 + carried 0.003 rounds up to one ulp
        assert_eq!(y.err_ulp(), &BigUint::from(1u32));
    }

    fn arb_value() -> impl Strategy<Value = (i64, i64, u32)> {
        (-1_000_000i64..1_000_000, 1i64..10_000, 0u32..50)
    }

    proptest! {
        // The stored value stays within err_ulp of the exact result.
        #[test]
        fn mul_error_bound_holds((n1, d1, e1) in arb_value(), (n2, d2, e2) in arb_value()) {
            let scale = 8;
            let ra = q(n1, d1);
            let rb = q(n2, d2);
            let mut a = HighPrecisionNumber::from_rational(&ra, scale);
            let mut b = HighPrecisionNumber::from_rational(&rb, scale);
            // perturb the stored mantissas inside a widened bound
            a = HighPrecisionNumber::new(a.mantissa() + BigInt::from(e1 / 2), scale, a.err_ulp() + BigUint::from(e1));
            b = HighPrecisionNumber::new(b.mantissa() - BigInt::from(e2 / 2), scale, b.err_ulp() + BigUint::from(e2));
            let p = a.mul(&b);
            let exact = &ra * &rb;
            prop_assert!((p.to_rational() - exact).abs() <= p.error_bound());
            let s = a.add(&b);
            prop_assert!((s.to_rational() - (&ra + &rb)).abs() <= s.error_bound());
            let m = a.mul_rational(&q(n2, d2));
            prop_assert!((m.to_rational() - &ra * q(n2, d2)).abs() <= m.error_bound());
        }

        #[test]
        fn rescale_never_shrinks_bound(n in -1_000_000_000i64..1_000_000_000, d in 1i64..1000, s in 0usize..8) {
            let r = q(n, d);
            let x = HighPrecisionNumber::from_rational(&r, 10);
            let y = x.rescale(s);
            prop_assert!((y.to_rational() - &r).abs() <= y.error_bound());
        }
    }
}
