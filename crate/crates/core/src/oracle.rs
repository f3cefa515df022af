//! Reference values computed without the π/2-power series.
//!
//! * η(s) and β(s): Chebyshev-weighted alternating-series acceleration
//!   (Cohen, Rodriguez Villegas, Zagier). Both sequences `1/(k+1)^s` and
//!   `1/(2k+1)^s` are moments of a positive weight on `[0, 1]`, so the
//!   accelerated sum after `n` steps is within `2|S| / (3+√8)^n` of the limit.
//! * ζ(2n): direct summation with an Euler–Maclaurin tail, using Bernoulli
//!   numbers from the Akiyama–Tanigawa triangle (not the crate's table).
//! * ln 2: `2 atanh(1/3)`.
//! * π: Gauss's `48 atan(1/18) + 32 atan(1/57) - 20 atan(1/239)` with Euler's
//!   positive-term arctangent series.
//!
//! Only `HighPrecisionNumber` and big integers are shared with the
//! series-side code.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::constants::{evaluate, ConstantName};
use crate::error::{Error, Result};
use crate::exact_arith::Rational;
use crate::highprec::{pow10, HighPrecisionNumber};
use crate::limits::check_digits;

const ORACLE_GUARD: usize = 8;

fn hpn(mantissa: BigInt, scale: usize, err: BigUint) -> HighPrecisionNumber {
    HighPrecisionNumber::new(mantissa, scale, err)
}

fn ulps(n: u64) -> BigUint {
    BigUint::from(n)
}

/// Acceleration depth that reaches `10^-scale`: `(3+√8)^n >= 2·10^scale`.
pub fn default_depth(scale: usize) -> usize {
    let per_step = (3.0 + 8f64.sqrt()).log10();
    ((scale as f64 + 1.0) / per_step).ceil() as usize + 1
}

/// `sum_{k>=0} (-1)^k a_k` where `a_k = weight(k)^-s`, accelerated to `depth`
/// steps. Returns the value at `scale` with a rigorous bound assuming
/// `|S| <= 1`.
fn accelerated_alternating(
    s: u32,
    weight: impl Fn(usize) -> u64,
    depth: usize,
    scale: usize,
) -> HighPrecisionNumber {
    let n = depth.max(1);
    // d = T_n(3)
    let (mut t_prev, mut t_cur) = (BigInt::one(), BigInt::from(3));
    for _ in 1..n {
        let next = &t_cur * 6 - &t_prev;
        t_prev = std::mem::replace(&mut t_cur, next);
    }
    let d = t_cur;

    let unit = pow10(scale);
    // b_k as an exact rational; c_k stays integral.
    let mut b = Rational::from_integer(BigInt::from(-1));
    let mut c = Rational::from_integer(-d.clone());
    let mut acc = BigInt::zero();
    let mut weight_sum = BigInt::zero();
    for k in 0..n {
        c = &b - &c;
        debug_assert!(c.is_integer());
        let ck = c.to_integer();
        let w = BigInt::from(weight(k));
        let denom = num_traits::pow(w, s as usize);
        // a_k to the nearest ulp (error < 1/2)
        let (q, r) = unit.div_rem(&denom);
        let ak = if (r << 1) >= denom { q + 1 } else { q };
        acc += &ck * ak;
        weight_sum += ck.abs();
        let kk = k as i64;
        let nn = n as i64;
        b *= Rational::new(
            BigInt::from(2 * (kk + nn) * (kk - nn)),
            BigInt::from((2 * kk + 1) * (kk + 1)),
        );
    }
    let (q, r) = acc.div_rem(&d);
    let value = if (r.abs() << 1) >= d {
        if acc.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    };
    // rounding of each a_k (< 1/2 each, weighted), final rounding, truncation
    let rounding: BigInt = weight_sum.div_ceil(&d) + 1;
    let truncation = (BigInt::from(2) * &unit).div_ceil(&d);
    let err = (rounding + truncation).to_biguint().expect("non-negative");
    hpn(value, scale, err)
}

fn eta_at(s: u32, scale: usize, depth: usize) -> HighPrecisionNumber {
    accelerated_alternating(s, |k| (k + 1) as u64, depth, scale)
}

fn beta_at(s: u32, scale: usize, depth: usize) -> HighPrecisionNumber {
    accelerated_alternating(s, |k| (2 * k + 1) as u64, depth, scale)
}

/// η(s) for `s >= 1` to `digits` fractional digits.
pub fn reference_eta(s: u32, digits: usize) -> Result<HighPrecisionNumber> {
    let scale = digits + ORACLE_GUARD;
    reference_eta_with_depth(s, digits, default_depth(scale))
}

pub fn reference_eta_with_depth(s: u32, digits: usize, depth: usize) -> Result<HighPrecisionNumber> {
    check_digits(digits)?;
    if s == 0 {
        return Err(Error::invalid("reference_eta needs s >= 1"));
    }
    Ok(eta_at(s, digits + ORACLE_GUARD, depth).rescale(digits))
}

/// β(s) for `s >= 2` to `digits` fractional digits.
pub fn reference_beta(s: u32, digits: usize) -> Result<HighPrecisionNumber> {
    let scale = digits + ORACLE_GUARD;
    reference_beta_with_depth(s, digits, default_depth(scale))
}

pub fn reference_beta_with_depth(
    s: u32,
    digits: usize,
    depth: usize,
) -> Result<HighPrecisionNumber> {
    check_digits(digits)?;
    if s < 2 {
        return Err(Error::invalid("reference_beta needs s >= 2"));
    }
    Ok(beta_at(s, digits + ORACLE_GUARD, depth).rescale(digits))
}

/// ζ(2k+1) from η(2k+1) / (1 - 2^-2k).
pub fn reference_zeta_odd(k: usize, digits: usize) -> Result<HighPrecisionNumber> {
    check_digits(digits)?;
    let scale = digits + ORACLE_GUARD;
    let s = 2 * k as u32 + 1;
    let eta = eta_at(s, scale, default_depth(scale));
    let four_k = BigInt::one() << (2 * k);
    let factor = Rational::new(four_k.clone(), four_k - 1);
    Ok(eta.mul_rational(&factor).rescale(digits))
}

/// ln 2 = 2 atanh(1/3) = sum_j 2 / ((2j+1) 3^(2j+1)).
pub fn reference_ln2(digits: usize) -> Result<HighPrecisionNumber> {
    check_digits(digits)?;
    let scale = digits + ORACLE_GUARD;
    let mut power: BigInt = BigInt::from(2) * pow10(scale) / 3;
    let mut sum = BigInt::zero();
    let mut terms = 0u64;
    let mut j = 0u64;
    while !power.is_zero() {
        sum += &power / (2 * j + 1);
        power /= 9;
        j += 1;
        terms += 1;
    }
    // each floor < 2 ulps, tail < 1 ulp once the power is exhausted
    Ok(hpn(sum, scale, ulps(2 * terms + 2)).rescale(digits))
}

/// `atan(1/x) = sum_n 4^n (n!)^2 / (2n+1)! · x / (1 + x^2)^(n+1)`; every
/// term is positive and the term ratio is below `1/(1+x^2)`.
fn euler_arctan_inv(x: u64, scale: usize) -> HighPrecisionNumber {
    let q = 1 + x * x;
    let mut term = pow10(scale) * x / q;
    let mut sum = BigInt::zero();
    let mut terms = 0u64;
    let mut n = 0u64;
    while !term.is_zero() {
        sum += &term;
        n += 1;
        term = term * (2 * n) / ((2 * n + 1) * q);
        terms += 1;
    }
    // floors: < 2 ulps per term; tail: first omitted term < 2 ulps, ratio < 1/q
    hpn(sum, scale, ulps(2 * terms + 4))
}

/// π by an arctangent decomposition distinct from the series-side one.
pub fn reference_pi(digits: usize) -> Result<HighPrecisionNumber> {
    check_digits(digits)?;
    Ok(reference_pi_at(digits + ORACLE_GUARD).rescale(digits))
}

fn reference_pi_at(scale: usize) -> HighPrecisionNumber {
    let a = euler_arctan_inv(18, scale).mul_int(48);
    let b = euler_arctan_inv(57, scale).mul_int(32);
    let c = euler_arctan_inv(239, scale).mul_int(20);
    a.add(&b).sub(&c)
}

/// Bernoulli numbers `B_0..=B_max` by the Akiyama–Tanigawa triangle
/// (`B_1 = +1/2` here; only even indices are used).
fn akiyama_tanigawa(max: usize) -> Vec<Rational> {
    let mut row: Vec<Rational> = Vec::with_capacity(max + 1);
    let mut out = Vec::with_capacity(max + 1);
    for m in 0..=max {
        row.push(Rational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            row[j - 1] = (&row[j - 1] - &row[j]) * Rational::from_integer(BigInt::from(j));
        }
        out.push(row[0].clone());
    }
    out
}

/// ζ(s) for integer `s >= 2` by summing `N - 1` terms exactly and adding the
/// Euler–Maclaurin tail
/// `N^(1-s)/(s-1) + N^-s/2 + sum_j B_2j/(2j)! · s(s+1)…(s+2j-2) · N^(1-s-2j)`.
/// The remainder is bounded by twice the first omitted correction.
pub fn reference_zeta_direct(s: u32, digits: usize) -> Result<HighPrecisionNumber> {
    check_digits(digits)?;
    if s < 2 {
        return Err(Error::invalid("reference_zeta_direct needs s >= 2"));
    }
    let scale = digits + ORACLE_GUARD;
    let target = Rational::new(BigInt::one(), pow10(scale + 1));
    let big_n = (digits as u64).max(20);
    let s_big = BigInt::from(s);
    let nq = Rational::from_integer(BigInt::from(big_n));

    let mut total = Rational::zero();
    for m in 1..big_n {
        total += Rational::new(BigInt::one(), num_traits::pow(BigInt::from(m), s as usize));
    }
    let n_pow = |e: i64| -> Rational {
        let p = num_traits::pow(BigInt::from(big_n), e.unsigned_abs() as usize);
        if e >= 0 {
            Rational::from_integer(p)
        } else {
            Rational::new(BigInt::one(), p)
        }
    };
    total += n_pow(1 - s as i64) / Rational::from_integer(&s_big - 1);
    total += n_pow(-(s as i64)) / Rational::from_integer(BigInt::from(2));

    let max_j = 4 * big_n as usize;
    let bern = akiyama_tanigawa(2 * max_j + 2);
    let mut rising = Rational::from_integer(s_big.clone()); // s (s+1) … (s+2j-2)
    let mut fact = Rational::from_integer(BigInt::from(2)); // (2j)!
    let mut remainder = None;
    for j in 1..=max_j {
        let term = &bern[2 * j] / &fact * &rising * n_pow(1 - s as i64 - 2 * j as i64);
        if term.abs() < target {
            remainder = Some(term.abs() * Rational::from_integer(BigInt::from(2)));
            break;
        }
        total += term;
        let jj = j as i64;
        rising *= Rational::from_integer(BigInt::from((s as i64 + 2 * jj - 1) * (s as i64 + 2 * jj)));
        fact *= Rational::from_integer(BigInt::from((2 * jj + 1) * (2 * jj + 2)));
    }
    let remainder = remainder.ok_or_else(|| {
        Error::invalid(format!("Euler–Maclaurin tail did not converge for s = {s} at N = {}", nq))
    })?;
    let rem_ulps = (remainder * Rational::from_integer(pow10(scale))).ceil().to_integer();
    let value = HighPrecisionNumber::from_rational(&total, scale)
        .with_extra_error(&rem_ulps.to_biguint().expect("non-negative"));
    Ok(value.rescale(digits))
}

/// Oracle value for a named constant.
pub fn reference(name: ConstantName, digits: usize) -> Result<HighPrecisionNumber> {
    match name {
        ConstantName::Catalan => reference_beta(2, digits),
        ConstantName::BetaEven(k) => reference_beta(2 * k as u32, digits),
        ConstantName::AltHarmonic => reference_eta(1, digits),
        ConstantName::EtaOdd(k) => reference_eta(2 * k as u32 + 1, digits),
        ConstantName::Apery => reference_zeta_odd(1, digits),
        ConstantName::ZetaOdd(k) => reference_zeta_odd(k, digits),
        ConstantName::ZetaEven(n) => reference_zeta_direct(2 * n as u32, digits),
    }
}

/// Series value against oracle value for one constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub computed: String,
    pub reference: String,
    pub matched_digits: usize,
    pub terms_used: usize,
    #[serde(rename = "elapsed_ms", serialize_with = "as_millis")]
    pub elapsed: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis().to_u64().unwrap_or(u64::MAX))
}

/// Parse a rendered decimal into (mantissa, fractional digit count).
fn split_decimal(s: &str) -> (BigInt, usize) {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let m: BigInt = format!("{int}{frac}").parse().unwrap_or_default();
    (if neg { -m } else { m }, frac.len())
}

/// Longest `m <= max` such that for every `m' <= m`, the computed string
/// rounded to `m'` digits lies within one unit of the `m'`-th place of the
/// reference string.
pub fn matched_digits(computed: &str, reference: &str, max: usize) -> usize {
    let (c, c_scale) = split_decimal(computed);
    let (r, r_scale) = split_decimal(reference);
    let common = c_scale.max(r_scale);
    let c_full = HighPrecisionNumber::new(c, c_scale, BigUint::zero()).rescale(common);
    let r_full = hpn(r, r_scale, BigUint::zero()).rescale(common);
    let mut matched = 0;
    for m in 0..=max.min(c_scale) {
        let rounded = c_full.rescale(m).rescale(common);
        let diff = (rounded.mantissa() - r_full.mantissa()).abs();
        if diff > pow10(common - m) {
            break;
        }
        matched = m;
    }
    matched
}

/// Run the series computation and the oracle at `digits` and compare.
/// Mismatches are reported, never raised.
pub fn verify(name: ConstantName, digits: usize) -> Result<VerificationReport> {
    check_digits(digits)?;
    let start = Instant::now();
    let value = evaluate(name, digits)?;
    let elapsed = start.elapsed();
    let oracle = reference(name, digits + 1)?;
    let computed = value.value.to_digits(digits);
    let reference = oracle.to_digits(digits + 1);
    Ok(VerificationReport {
        name: name.to_string(),
        matched_digits: matched_digits(&computed, &reference, digits),
        computed,
        reference,
        terms_used: value.provenance.terms_used(),
        elapsed,
    })
}

/// `verify` by identifier string.
pub fn verify_named(name: &str, digits: usize) -> Result<VerificationReport> {
    verify(name.parse()?, digits)
}
