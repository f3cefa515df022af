//! Numerical checks of the alternating Fourier identities behind the series.
//!
//! For `0 < θ < π`:
//!
//! ```text
//! S1(k) = Σ (-1)^(m+1) sin(mθ) / m^(2k)
//!       = (-1)^k · ½ Σ_n D_n(2k) θ^(2n+2k-1)
//!         + Σ_{r<k} (-1)^(k-r-1) A_(2r+1) θ^(2k-2r-1) / (2k-2r-1)!
//!
//! S2(k) = Σ (-1)^(m+1) cos(mθ) / m^(2k+1)
//!       = (-1)^(k+1) · ½ Σ_n D_n(2k+1) θ^(2n+2k)
//!         + Σ_{r<=k} (-1)^(k-r) A_(2r+1) θ^(2k-2r) / (2k-2r)!
//! ```
//!
//! The left side is a partial Fourier sum, evaluated in binary fixed point
//! with `sin(mθ), cos(mθ)` advanced by rotation and re-anchored every
//! [`ANCHOR_STRIDE`] steps. The right side uses the exact `D_n` ladder and the
//! series values of `A_(2r+1)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::coefficients::d_coeff;
use crate::constants::{alt_harmonic, eta_odd};
use crate::error::{Error, Result};
use crate::exact_arith::{inv_factorial, pow2, Rational};
use crate::highprec::{parse_decimal, pi_at_scale, pow10, HighPrecisionNumber};

/// Decimal digits carried on both sides of every identity.
pub const IDENTITY_DIGITS: usize = 40;

/// Fractional bits of the Fourier-side fixed point.
const FRAC_BITS: u32 = 168;

/// Rotation steps between re-anchoring.
pub const ANCHOR_STRIDE: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Identity {
    /// Alternating sine series with even power `2k`.
    S1,
    /// Alternating cosine series with odd power `2k+1`.
    S2,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::S1 => "S1",
            Identity::S2 => "S2",
        })
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "S1" => Ok(Identity::S1),
            "S2" => Ok(Identity::S2),
            _ => Err(Error::invalid(format!("unknown identity `{s}` (expected S1 or S2)"))),
        }
    }
}

impl Identity {
    /// Power of `m` in the Fourier denominator.
    fn fourier_power(self, k: usize) -> usize {
        match self {
            Identity::S1 => 2 * k,
            Identity::S2 => 2 * k + 1,
        }
    }
}

/// An angle strictly inside `(0, π)`, with the text it was given as.
#[derive(Debug, Clone, PartialEq)]
pub struct Angle {
    label: String,
    value: HighPrecisionNumber,
}

impl Angle {
    /// Parse `0.5`, `pi`, `pi/2`, `3pi/4`, `2*pi/3`.
    pub fn parse(s: &str) -> Result<Self> {
        let scale = IDENTITY_DIGITS + 5;
        let text = s.trim().to_ascii_lowercase().replace(['*', ' '], "");
        let bad = || Error::invalid(format!("cannot parse angle `{s}`"));
        let value = if let Some(pos) = text.find("pi") {
            let num_text = &text[..pos];
            let rest = &text[pos + 2..];
            let num: i64 = if num_text.is_empty() {
                1
            } else {
                num_text.parse().map_err(|_| bad())?
            };
            let den: i64 = match rest.strip_prefix('/') {
                Some(d) => d.parse().map_err(|_| bad())?,
                None if rest.is_empty() => 1,
                None => return Err(bad()),
            };
            if den == 0 {
                return Err(bad());
            }
            pi_at_scale(scale)
                .mul_rational(&Rational::new(BigInt::from(num), BigInt::from(den)))
        } else {
            parse_decimal(&text, scale).ok_or_else(bad)?
        };
        Self::new(s.trim().to_string(), value.rescale(IDENTITY_DIGITS))
    }

    /// Wrap an already computed value; must lie strictly inside `(0, π)`.
    pub fn new(label: String, value: HighPrecisionNumber) -> Result<Self> {
        let pi = pi_at_scale(value.scale() + 2);
        let lo_ok = value.mantissa().is_positive()
            && value.mantissa().magnitude() > value.err_ulp();
        let gap = pi.sub(&value);
        let hi_ok = !gap.is_negative() && gap.mantissa().magnitude() > gap.err_ulp();
        if !(lo_ok && hi_ok) {
            return Err(Error::invalid(format!(
                "angle `{label}` must lie strictly between 0 and π"
            )));
        }
        Ok(Angle { label, value })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn value(&self) -> &HighPrecisionNumber {
        &self.value
    }
}

/// The standard sweep angles.
pub fn standard_angles() -> Vec<Angle> {
    ["0.5", "1.0", "pi/2", "2.0", "3.0"]
        .iter()
        .map(|s| Angle::parse(s).expect("built-in angles are valid"))
        .collect()
}

/// How the Fourier partial sums are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothing {
    /// Last partial sum.
    None,
    /// Mean of the last two partial sums.
    PairAverage,
    /// Mean of all partial sums (Cesàro `(C,1)`).
    Cesaro,
}

// -- binary fixed point -------------------------------------------------------

fn fx_mul(a: &BigInt, b: &BigInt, bits: u32) -> BigInt {
    (a * b) >> bits
}

fn fx_from_decimal(x: &HighPrecisionNumber, bits: u32) -> (BigInt, f64) {
    let den = pow10(x.scale());
    let num: BigInt = x.mantissa() << bits;
    let v = &num / &den;
    let err_in = x.err_ulp().to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(bits as i32)
        / 10f64.powi(x.scale() as i32);
    (v, err_in + 1.0)
}

fn fx_to_decimal(v: &BigInt, err_ulps: f64, bits: u32, scale: usize) -> HighPrecisionNumber {
    let num = v * pow10(scale);
    let den = BigInt::one() << bits;
    let (m, rem) = (&num / &den, &num % &den);
    let rounding = if rem.is_zero() { 0 } else { 1 };
    let err = (err_ulps * 10f64.powi(scale as i32) / 2f64.powi(bits as i32)).ceil() as u64;
    HighPrecisionNumber::new(m, scale, BigUint::from(err + rounding))
}

/// `(cos θ, sin θ)` at `bits` fractional bits by Taylor series; the returned
/// error is in ulps, Euclidean over the pair.
fn fx_cos_sin(theta: &BigInt, theta_err: f64, bits: u32) -> ((BigInt, BigInt), f64) {
    let guard = 32;
    let wb = bits + guard;
    let th = theta << guard;
    let one = BigInt::one() << wb;
    let mut cos = one.clone();
    let mut sin = BigInt::zero();
    let mut term = one;
    let mut j: u64 = 0;
    loop {
        j += 1;
        term = fx_mul(&term, &th, wb) / j;
        if term.is_zero() {
            break;
        }
        match j % 4 {
            1 => sin += &term,
            2 => cos -= &term,
            3 => sin -= &term,
            _ => cos += &term,
        }
    }
    let c = cos >> guard;
    let s = sin >> guard;
    // truncations at wb are far below one ulp at `bits`; θ's own error moves
    // the point along the unit circle by at most θ_err
    ((c, s), theta_err + 2.0)
}

/// Complex product of two (cos, sin) pairs.
fn fx_rotate(a: &(BigInt, BigInt), b: &(BigInt, BigInt), bits: u32) -> (BigInt, BigInt) {
    (
        fx_mul(&a.0, &b.0, bits) - fx_mul(&a.1, &b.1, bits),
        fx_mul(&a.0, &b.1, bits) + fx_mul(&a.1, &b.0, bits),
    )
}

/// Rotation by `n θ` via binary powering, with its error bound.
fn fx_rotation_power(
    base: &(BigInt, BigInt),
    base_err: f64,
    n: usize,
    bits: u32,
) -> ((BigInt, BigInt), f64) {
    let one = BigInt::one() << bits;
    let mut acc = (one, BigInt::zero());
    let mut acc_err = 0.0;
    let mut sq = base.clone();
    let mut sq_err = base_err;
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc = fx_rotate(&acc, &sq, bits);
            acc_err += sq_err + 3.0;
        }
        n >>= 1;
        if n > 0 {
            sq = fx_rotate(&sq, &sq, bits);
            sq_err = 2.0 * sq_err + 3.0;
        }
    }
    (acc, acc_err)
}

/// Divide by `m^p`, splitting the divisor so each chunk fits in `u64`.
fn div_by_power(v: BigInt, m: u64, p: usize) -> (BigInt, u32) {
    let mut v = v;
    let mut chunks = 0;
    let mut remaining = p;
    while remaining > 0 {
        let mut d: u64 = 1;
        while remaining > 0 {
            match d.checked_mul(m) {
                Some(next) => {
                    d = next;
                    remaining -= 1;
                }
                None => break,
            }
        }
        v /= d;
        chunks += 1;
    }
    (v, chunks)
}

/// Partial sum `Σ_{m=1}^{M} (-1)^(m+1) f(mθ) / m^p` with `f = sin` or `cos`,
/// smoothed as requested.
pub fn fourier_partial_sum(
    use_sin: bool,
    power: usize,
    theta: &Angle,
    terms: usize,
    smoothing: Smoothing,
) -> Result<HighPrecisionNumber> {
    if terms == 0 {
        return Err(Error::invalid("fourier_terms must be >= 1"));
    }
    let bits = FRAC_BITS;
    let (th, th_err) = fx_from_decimal(theta.value(), bits);
    let (rot1, rot1_err) = fx_cos_sin(&th, th_err, bits);
    let (rot_b, rot_b_err) = fx_rotation_power(&rot1, rot1_err, ANCHOR_STRIDE, bits);

    let mut anchor = rot1.clone();
    let mut anchor_err = rot1_err;
    let mut cur = rot1.clone();
    let mut cur_err = rot1_err;

    let mut sum = BigInt::zero();
    let mut weighted = BigInt::zero();
    let mut sum_err = 0.0f64;
    let mut weighted_err = 0.0f64;
    let mut last = BigInt::zero();
    let mut last_err = 0.0f64;
    let total = terms as u64;

    for m in 1..=total {
        let comp = if use_sin { cur.1.clone() } else { cur.0.clone() };
        let (term, chunks) = div_by_power(comp, m, power);
        let term = if m % 2 == 0 { -term } else { term };
        let term_err = cur_err / (m as f64).powi(power as i32) + f64::from(chunks);
        sum += &term;
        sum_err += term_err;
        if smoothing == Smoothing::Cesaro {
            let w = total - m + 1;
            weighted += &term * w;
            weighted_err += term_err * w as f64;
        }
        last = term;
        last_err = term_err;

        if (m as usize).is_multiple_of(ANCHOR_STRIDE) {
            anchor = fx_rotate(&anchor, &rot_b, bits);
            anchor_err += rot_b_err + 3.0;
            cur = anchor.clone();
            cur_err = anchor_err;
        } else {
            cur = fx_rotate(&cur, &rot1, bits);
            cur_err += rot1_err + 3.0;
        }
    }

    let (value, err) = match smoothing {
        Smoothing::None => (sum, sum_err),
        Smoothing::PairAverage => (&sum - (&last >> 1u32), sum_err + last_err / 2.0 + 1.0),
        Smoothing::Cesaro => (&weighted / total, weighted_err / total as f64 + 1.0),
    };
    Ok(fx_to_decimal(&value, err, bits, IDENTITY_DIGITS))
}

/// Left-hand side of `identity` at `θ` with `fourier_terms` terms and
/// pairwise smoothing.
pub fn fourier_lhs(
    identity: Identity,
    k: usize,
    theta: &Angle,
    fourier_terms: usize,
) -> Result<HighPrecisionNumber> {
    if k == 0 {
        return Err(Error::invalid("identity index k must be >= 1"));
    }
    fourier_partial_sum(
        identity == Identity::S1,
        identity.fourier_power(k),
        theta,
        fourier_terms,
        Smoothing::PairAverage,
    )
}

/// `A_1, A_3, ..., A_(2k+1)` from the series, at [`IDENTITY_DIGITS`].
pub fn odd_constants(k: usize) -> Result<Vec<HighPrecisionNumber>> {
    let mut out = vec![alt_harmonic(IDENTITY_DIGITS)?.value];
    for r in 1..=k {
        out.push(eta_odd(r, IDENTITY_DIGITS)?.value);
    }
    Ok(out)
}

/// `½ Σ_{n=1}^{N} D_n(j) θ^(2n+j-1)`.
fn ladder_series(j: usize, theta: &HighPrecisionNumber, series_terms: usize) -> Result<HighPrecisionNumber> {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let step = theta.mul(theta);
    let mut power = theta.powi(j as u32 + 1);
    let mut sum = HighPrecisionNumber::zero(theta.scale());
    for n in 1..=series_terms {
        let d = d_coeff(n, j)? * &half;
        sum = sum.add(&power.mul_rational(&d));
        power = power.mul(&step);
    }
    Ok(sum)
}

fn signed(negative: bool, x: HighPrecisionNumber) -> HighPrecisionNumber {
    if negative {
        x.neg()
    } else {
        x
    }
}

/// Right-hand side of `identity` at `θ`, truncating the `D`-series after
/// `series_terms` terms.
pub fn rhs_eval(
    identity: Identity,
    k: usize,
    theta: &Angle,
    series_terms: usize,
) -> Result<HighPrecisionNumber> {
    if k == 0 {
        return Err(Error::invalid("identity index k must be >= 1"));
    }
    let a = odd_constants(k)?;
    rhs_with_constants(identity, k, theta.value(), series_terms, &a)
}

fn rhs_with_constants(
    identity: Identity,
    k: usize,
    theta: &HighPrecisionNumber,
    series_terms: usize,
    a: &[HighPrecisionNumber],
) -> Result<HighPrecisionNumber> {
    let theta = theta.rescale(IDENTITY_DIGITS + 5);
    let (ladder_index, ladder_negative, poly_top) = match identity {
        Identity::S1 => (2 * k, k % 2 == 1, k - 1),
        Identity::S2 => (2 * k + 1, k.is_multiple_of(2), k),
    };
    let mut total = signed(ladder_negative, ladder_series(ladder_index, &theta, series_terms)?);
    for r in 0..=poly_top {
        let (exp, negative) = match identity {
            Identity::S1 => (2 * k - 2 * r - 1, (k - r - 1) % 2 == 1),
            Identity::S2 => (2 * k - 2 * r, (k - r) % 2 == 1),
        };
        let term = a[r].mul(&theta.powi(exp as u32)).mul_rational(&inv_factorial(exp));
        total = total.add(&signed(negative, term));
    }
    Ok(total.rescale(IDENTITY_DIGITS))
}

/// `|lhs - rhs|` for one identity instance.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityResidual {
    pub identity: Identity,
    pub k: usize,
    pub theta: Angle,
    pub fourier_terms: usize,
    pub series_terms: usize,
    pub residual: HighPrecisionNumber,
}

impl IdentityResidual {
    pub fn residual_f64(&self) -> f64 {
        self.residual.to_f64()
    }

    /// `identity,k,theta,fourier_terms,residual`
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.identity,
            self.k,
            self.theta.label(),
            self.fourier_terms,
            self.residual.to_scientific(4)
        )
    }
}

pub const SWEEP_CSV_HEADER: &str = "identity,k,theta,fourier_terms,residual";

pub fn sweep_csv(rows: &[IdentityResidual]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

pub fn check_identity(
    identity: Identity,
    k: usize,
    theta: &Angle,
    fourier_terms: usize,
    series_terms: usize,
) -> Result<IdentityResidual> {
    let lhs = fourier_lhs(identity, k, theta, fourier_terms)?;
    let rhs = rhs_eval(identity, k, theta, series_terms)?;
    Ok(IdentityResidual {
        identity,
        k,
        theta: theta.clone(),
        fourier_terms,
        series_terms,
        residual: lhs.sub(&rhs).abs(),
    })
}

/// Residual of the starting identity `Σ (-1)^(m+1) sin(mθ) = ½ tan(θ/2)`,
/// which only converges in the Cesàro sense. Informational.
pub fn check_half_tangent(theta: &Angle, fourier_terms: usize) -> Result<HighPrecisionNumber> {
    let lhs = fourier_partial_sum(true, 0, theta, fourier_terms, Smoothing::Cesaro)?;
    let bits = FRAC_BITS;
    let half = theta.value().div_int(&BigInt::from(2));
    let (h, h_err) = fx_from_decimal(&half, bits);
    let ((c, s), _) = fx_cos_sin(&h, h_err, bits);
    let ratio = Rational::new(s, c * 2);
    let rhs = HighPrecisionNumber::from_rational(&ratio, IDENTITY_DIGITS);
    Ok(lhs.sub(&rhs).abs())
}

/// `A_(2k+1)` recovered from the cosine identity at `θ = π/2`, where the left
/// side equals `2^-(2k+1) A_(2k+1)`:
/// `A_(2k+1) = -X / (1 - 2^-(2k+1))` with `X` the right side minus its
/// `r = k` term.
pub fn eta_from_cosine_identity(k: usize, series_terms: usize) -> Result<HighPrecisionNumber> {
    if k == 0 {
        return Err(Error::invalid("identity index k must be >= 1"));
    }
    let theta = pi_at_scale(IDENTITY_DIGITS + 5).div_int(&BigInt::from(2));
    let mut a = odd_constants(k - 1)?;
    a.push(HighPrecisionNumber::zero(IDENTITY_DIGITS));
    let x = rhs_with_constants(Identity::S2, k, &theta, series_terms, &a)?;
    let factor = Rational::one() - pow2(-(2 * k as i64 + 1));
    Ok(x.neg().mul_rational(&(Rational::one() / factor)))
}

/// Residual sweep over `identities × ks × angles`.
pub fn sweep(
    identities: &[Identity],
    ks: &[usize],
    angles: &[Angle],
    fourier_terms: impl Fn(usize) -> usize,
    series_terms: usize,
) -> Result<Vec<IdentityResidual>> {
    let mut out = Vec::new();
    for &id in identities {
        for &k in ks {
            for theta in angles {
                out.push(check_identity(id, k, theta, fourier_terms(k), series_terms)?);
            }
        }
    }
    Ok(out)
}
