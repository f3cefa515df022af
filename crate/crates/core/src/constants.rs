//! Named constants assembled from the π/2-power series: β(2k), η(2k+1),
//! ζ(2k+1), Catalan, Apéry, ln 2, plus the Bernoulli closed form for ζ(2n).

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::coefficients::{build_table, CoefficientTable};
use crate::error::{Error, Result};
use crate::exact_arith::{bernoulli, factorial, pow2, Rational};
use crate::highprec::{
    estimate_terms, pi_at_scale, sum_series, sum_series_at_scale, HighPrecisionNumber,
    GUARD_DIGITS,
};
use crate::limits::check_digits;

/// The closed set of constant identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstantName {
    Catalan,
    Apery,
    AltHarmonic,
    /// η(2k+1)
    EtaOdd(usize),
    /// β(2k)
    BetaEven(usize),
    /// ζ(2k+1)
    ZetaOdd(usize),
    /// ζ(2n) by the Bernoulli closed form
    ZetaEven(usize),
}

pub const VALID_NAMES: &str =
    "catalan, apery, alt_harmonic, eta_odd(k), beta_even(k), zeta_odd(k), zeta_even(n)";

impl ConstantName {
    /// The set `verify` runs when no name is given.
    pub fn default_set() -> Vec<ConstantName> {
        use ConstantName::*;
        let mut names = vec![
            Catalan,
            Apery,
            AltHarmonic,
            EtaOdd(1),
            EtaOdd(2),
            BetaEven(2),
            ZetaOdd(2),
            ZetaOdd(3),
            ZetaEven(1),
            ZetaEven(2),
            ZetaEven(3),
        ];
        names.sort_by_key(|n| n.to_string());
        names
    }
}

impl fmt::Display for ConstantName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstantName::Catalan => write!(f, "catalan"),
            ConstantName::Apery => write!(f, "apery"),
            ConstantName::AltHarmonic => write!(f, "alt_harmonic"),
            ConstantName::EtaOdd(k) => write!(f, "eta_odd({k})"),
            ConstantName::BetaEven(k) => write!(f, "beta_even({k})"),
            ConstantName::ZetaOdd(k) => write!(f, "zeta_odd({k})"),
            ConstantName::ZetaEven(n) => write!(f, "zeta_even({n})"),
        }
    }
}

impl FromStr for ConstantName {
    type Err = Error;

    /// Accepts `catalan`, `apery`, `alt_harmonic` and `family(k)` or
    /// `family:k` for the indexed families.
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownConstant {
            name: s.to_string(),
            valid: VALID_NAMES.to_string(),
        };
        let s_trim = s.trim();
        match s_trim {
            "catalan" => return Ok(ConstantName::Catalan),
            "apery" => return Ok(ConstantName::Apery),
            "alt_harmonic" => return Ok(ConstantName::AltHarmonic),
            _ => {}
        }
        let (family, index) = if let Some(open) = s_trim.find('(') {
            let inner = s_trim[open + 1..].strip_suffix(')').ok_or_else(unknown)?;
            (&s_trim[..open], inner)
        } else {
            s_trim.split_once(':').ok_or_else(unknown)?
        };
        let k: usize = index.trim().parse().map_err(|_| unknown())?;
        if k == 0 {
            return Err(unknown());
        }
        match family {
            "eta_odd" => Ok(ConstantName::EtaOdd(k)),
            "beta_even" => Ok(ConstantName::BetaEven(k)),
            "zeta_odd" => Ok(ConstantName::ZetaOdd(k)),
            "zeta_even" => Ok(ConstantName::ZetaEven(k)),
            _ => Err(unknown()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// Truncated series `A_k` with `terms_used` terms.
    Series { k: usize, terms_used: usize },
    /// Exact rational multiple of a power of π.
    ClosedForm,
}

impl Provenance {
    pub fn terms_used(&self) -> usize {
        match self {
            Provenance::Series { terms_used, .. } => *terms_used,
            Provenance::ClosedForm => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstantValue {
    pub name: ConstantName,
    pub value: HighPrecisionNumber,
    pub provenance: Provenance,
}

impl ConstantValue {
    pub fn digits(&self) -> String {
        self.value.to_digits(self.value.scale())
    }
}

/// Shared table, grown on demand and never mutated once handed out.
fn table_for(k: usize, digits: usize) -> Result<Arc<CoefficientTable>> {
    static SHARED: Mutex<Option<Arc<CoefficientTable>>> = Mutex::new(None);
    let n_needed = estimate_terms(digits, k);
    let mut slot = SHARED.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(t) = slot.as_ref() {
        if t.k_max() >= k && t.n_max() >= n_needed {
            return Ok(Arc::clone(t));
        }
    }
    let (k_have, n_have) = slot.as_ref().map_or((0, 0), |t| (t.k_max(), t.n_max()));
    let table = Arc::new(build_table(k.max(k_have), n_needed.max(n_have))?);
    *slot = Some(Arc::clone(&table));
    Ok(table)
}

fn series_constant(name: ConstantName, k: usize, digits: usize) -> Result<ConstantValue> {
    check_digits(digits)?;
    let table = table_for(k, digits)?;
    let r = sum_series(&table, k, digits)?;
    Ok(ConstantValue {
        name,
        value: r.value,
        provenance: Provenance::Series {
            k,
            terms_used: r.terms_used,
        },
    })
}

fn require_positive(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("constant index must be >= 1"));
    }
    Ok(())
}

/// `A_2k = β(2k)`.
pub fn beta_even(k: usize, digits: usize) -> Result<ConstantValue> {
    require_positive(k)?;
    series_constant(ConstantName::BetaEven(k), 2 * k, digits)
}

/// `A_2k+1 = η(2k+1)`.
pub fn eta_odd(k: usize, digits: usize) -> Result<ConstantValue> {
    require_positive(k)?;
    series_constant(ConstantName::EtaOdd(k), 2 * k + 1, digits)
}

/// `ζ(2k+1) = A_2k+1 · 2^2k / (2^2k - 1)`, the factor applied exactly at
/// working precision.
pub fn zeta_odd(k: usize, digits: usize) -> Result<ConstantValue> {
    zeta_odd_named(ConstantName::ZetaOdd(k), k, digits)
}

fn zeta_odd_named(name: ConstantName, k: usize, digits: usize) -> Result<ConstantValue> {
    require_positive(k)?;
    check_digits(digits)?;
    let idx = 2 * k + 1;
    let table = table_for(idx, digits)?;
    let r = sum_series_at_scale(&table, idx, digits)?;
    let four_k = pow2(2 * k as i64);
    let factor = &four_k / (&four_k - Rational::one());
    Ok(ConstantValue {
        name,
        value: r.value.mul_rational(&factor).rescale(digits),
        provenance: Provenance::Series {
            k: idx,
            terms_used: r.terms_used,
        },
    })
}

/// Catalan's constant, `β(2)`.
pub fn catalan(digits: usize) -> Result<ConstantValue> {
    let mut v = beta_even(1, digits)?;
    v.name = ConstantName::Catalan;
    Ok(v)
}

/// Apéry's constant, `ζ(3)`.
pub fn apery(digits: usize) -> Result<ConstantValue> {
    zeta_odd_named(ConstantName::Apery, 1, digits)
}

/// `A_1 = 1 - 1/2 + 1/3 - ...`, evaluated through the series (equals ln 2).
pub fn alt_harmonic(digits: usize) -> Result<ConstantValue> {
    series_constant(ConstantName::AltHarmonic, 1, digits)
}

/// Exact rational `r` with `ζ(2n) = r π^(2n)`.
pub fn zeta_even_multiplier(n: usize) -> Result<Rational> {
    require_positive(n)?;
    let b = bernoulli(2 * n)?;
    let r = b * pow2(2 * n as i64) / (Rational::from_integer(BigInt::from(2)) * Rational::from_integer(factorial(2 * n)));
    Ok(if n.is_multiple_of(2) { -r } else { r })
}

/// `ζ(2n)` from the Bernoulli closed form.
pub fn zeta_even_closed(n: usize, digits: usize) -> Result<ConstantValue> {
    check_digits(digits)?;
    let multiplier = zeta_even_multiplier(n)?;
    // π^(2n) grows to about n digits before the multiplier shrinks it back.
    let scale = digits + GUARD_DIGITS + n;
    let pi_pow = pi_at_scale(scale).powi(2 * n as u32);
    Ok(ConstantValue {
        name: ConstantName::ZetaEven(n),
        value: pi_pow.mul_rational(&multiplier).rescale(digits),
        provenance: Provenance::ClosedForm,
    })
}

/// Evaluate any named constant.
pub fn evaluate(name: ConstantName, digits: usize) -> Result<ConstantValue> {
    match name {
        ConstantName::Catalan => catalan(digits),
        ConstantName::Apery => apery(digits),
        ConstantName::AltHarmonic => alt_harmonic(digits),
        ConstantName::EtaOdd(k) => eta_odd(k, digits),
        ConstantName::BetaEven(k) => beta_even(k, digits),
        ConstantName::ZetaOdd(k) => zeta_odd(k, digits),
        ConstantName::ZetaEven(n) => zeta_even_closed(n, digits),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn names_round_trip() {
        for name in ConstantName::default_set() {
            assert_eq!(name.to_string().parse::<ConstantName>().unwrap(), name);
        }
        assert_eq!("zeta_odd:2".parse::<ConstantName>().unwrap(), ConstantName::ZetaOdd(2));
        let err = "zeta".parse::<ConstantName>().unwrap_err();
        assert!(err.to_string().contains("catalan, apery"));
        assert!("eta_odd(0)".parse::<ConstantName>().is_err());
        assert!("eta_odd(x)".parse::<ConstantName>().is_err());
    }

    #[test]
    fn default_set_is_sorted() {
        let names: Vec<String> = ConstantName::default_set().iter().map(|n| n.to_string()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }

    #[test]
    fn fifteen_digit_values() {
        assert_eq!(catalan(15).unwrap().digits(), "0.915965594177219");
        assert_eq!(apery(15).unwrap().digits(), "1.202056903159594");
        assert_eq!(eta_odd(1, 15).unwrap().digits(), "0.901542677369696");
        assert_eq!(eta_odd(2, 15).unwrap().digits(), "0.972119770446909");
        assert_eq!(beta_even(2, 15).unwrap().digits(), "0.988944551741105");
        assert_eq!(zeta_odd(2, 15).unwrap().digits(), "1.036927755143370");
        assert_eq!(zeta_odd(3, 12).unwrap().digits(), "1.008349277382");
        assert_eq!(alt_harmonic(15).unwrap().digits(), "0.693147180559945");
        assert_eq!(zeta_even_closed(1, 15).unwrap().digits(), "1.644934066848226");
    }

    #[test]
    fn even_zeta_multipliers() {
        let q = |n: i64, d: i64| Rational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(zeta_even_multiplier(1).unwrap(), q(1, 6));
        assert_eq!(zeta_even_multiplier(2).unwrap(), q(1, 90));
        assert_eq!(zeta_even_multiplier(3).unwrap(), q(1, 945));
    }

    #[test]
    fn error_bounds_are_one_ulp() {
        for v in [catalan(20).unwrap(), apery(20).unwrap(), zeta_even_closed(4, 20).unwrap()] {
            assert!(v.value.err_ulp() <= &BigUint::one(), "{}", v.name);
            assert_eq!(v.value.scale(), 20);
        }
    }

    #[test]
    fn delegation_is_exact() {
        let table = build_table(4, estimate_terms(25, 4)).unwrap();
        assert_eq!(beta_even(2, 25).unwrap().value, sum_series(&table, 4, 25).unwrap().value);
        let table = build_table(1, estimate_terms(25, 1)).unwrap();
        assert_eq!(alt_harmonic(25).unwrap().value, sum_series(&table, 1, 25).unwrap().value);
        assert_eq!(catalan(25).unwrap().value, beta_even(1, 25).unwrap().value);
    }

    #[test]
    fn bracketing_and_monotonicity() {
        let k = catalan(15).unwrap().value.to_f64();
        assert!(0.91 < k && k < 0.92);
        let a = apery(15).unwrap().value.to_f64();
        assert!(1.20 < a && a < 1.21);
        let mut prev = f64::INFINITY;
        for k in 1..=6 {
            let z = zeta_odd(k, 15).unwrap().value;
            let zf = z.to_f64();
            assert!(1.0 < zf && zf < 1.25);
            if k > 1 {
                assert!(zf < prev);
            }
            prev = zf;
        }
    }

    #[test]
    fn eta_zeta_bridge() {
        for k in 1..=3 {
            let z = zeta_odd(k, 30).unwrap().value;
            let e = eta_odd(k, 30).unwrap().value;
            let factor = Rational::one() - pow2(-2 * k as i64);
            let scaled = z.mul_rational(&factor);
            assert!(scaled.consistent_with(&e), "k = {k}");
        }
        let a = apery(30).unwrap().value;
        let e = eta_odd(1, 30).unwrap().value;
        let four_thirds = Rational::new(BigInt::from(4), BigInt::from(3));
        assert!(a.consistent_with(&e.mul_rational(&four_thirds)));
    }

    #[test]
    fn zero_index_rejected() {
        assert!(beta_even(0, 10).is_err());
        assert!(zeta_even_closed(0, 10).is_err());
        assert!(catalan(0).is_err());
    }
}
