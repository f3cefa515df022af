//! Exact rational arithmetic: Bernoulli numbers, factorials and the Maclaurin
//! coefficients of `tan`.
//!
//! Bernoulli numbers follow the `B_1 = -1/2` convention. Even-index values are
//! produced from the integer tangent numbers `T_n` (the numerators of
//! `tan x = sum T_n x^(2n-1) / (2n-1)!`) through
//! `B_2n = (-1)^(n-1) 2n T_n / (4^n (4^n - 1))`, which keeps the inner loop in
//! integer arithmetic.
//!
//! A process-wide memo table backs [`bernoulli`], [`factorial`] and
//! [`tangent_coeff`]. It grows by doubling and never rewrites an entry it has
//! already handed out. When `HALFPI_CACHE_DIR` is set (or [`set_cache_dir`]
//! was called) the Bernoulli values are persisted to `bernoulli.tsv` in that
//! directory, one `m<TAB>num/den` line per index.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::limits::{self, limits};

pub type Rational = num_rational::BigRational;

pub const CACHE_ENV: &str = "HALFPI_CACHE_DIR";
pub const CACHE_FILE: &str = "bernoulli.tsv";

/// Memoized `B_0..=B_M`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of stored entries (`M + 1`).
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, m: usize) -> Option<&Rational> {
        self.values.get(m)
    }

    /// Make sure `B_m` is present, growing the table by at least a factor of two.
    pub fn ensure(&mut self, m: usize) -> Result<()> {
        if m < self.values.len() {
            return Ok(());
        }
        let max = limits().max_bernoulli_index;
        limits::check("bernoulli index", m, max)?;
        let target = m.max(2 * self.values.len()).min(max).max(2);
        self.extend_to(target);
        Ok(())
    }

    fn extend_to(&mut self, max_index: usize) {
        let half = max_index / 2;
        let tangent = tangent_numbers(half);
        let start = self.values.len();
        for m in start..=max_index {
            let b = match m {
                0 => Rational::one(),
                1 => Rational::new(BigInt::from(-1), BigInt::from(2)),
                _ if m % 2 == 1 => Rational::zero(),
                _ => {
                    let n = m / 2;
                    let four_n = BigInt::one() << (2 * n);
                    let num = BigInt::from(m) * &tangent[n - 1];
                    let den = &four_n * (&four_n - 1u32);
                    let b = Rational::new(num, den);
                    if n % 2 == 0 {
                        -b
                    } else {
                        b
                    }
                }
            };
            self.values.push(b);
        }
    }

    /// Serialize as `m<TAB>num/den` lines.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (m, b) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{m}\t{}/{}", b.numer(), b.denom());
        }
        out
    }

    /// Parse the `m<TAB>num/den` format. Indices must run 0, 1, 2, ... without gaps.
    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let bad = |why: &str| Error::Cache(format!("line {}: {why}", line_no + 1));
            let (idx, frac) = line.split_once('\t').ok_or_else(|| bad("missing tab"))?;
            let idx: usize = idx.parse().map_err(|_| bad("bad index"))?;
            if idx != values.len() {
                return Err(bad("indices are not contiguous"));
            }
            let value = parse_rational(frac).ok_or_else(|| bad("bad fraction"))?;
            values.push(value);
        }
        Ok(BernoulliTable { values })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_tsv(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tsv.tmp");
        std::fs::write(&tmp, self.to_tsv())?;
        std::fs::rename(tmp, path)?;
        Ok(())
    }
}

/// Parse `num/den` (no whitespace) into canonical form.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = s.split_once('/')?;
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() || s.contains(char::is_whitespace) {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Tangent numbers `T_1..=T_n` by the in-place integer recurrence
/// `T_j <- (j-k) T_(j-1) + (j-k+2) T_j`.
fn tangent_numbers(n: usize) -> Vec<BigInt> {
    if n == 0 {
        return Vec::new();
    }
    let mut t = vec![BigInt::zero(); n];
    t[0] = BigInt::one();
    for k in 1..n {
        t[k] = &t[k - 1] * k;
    }
    for k in 1..n {
        for j in k..n {
            t[j] = &t[j - 1] * (j - k) + &t[j] * (j - k + 2);
        }
    }
    t
}

struct Memo {
    bernoulli: BernoulliTable,
    factorials: Vec<BigInt>,
    cache_dir: Option<PathBuf>,
    cache_loaded: bool,
}

fn memo() -> &'static RwLock<Memo> {
    static MEMO: OnceLock<RwLock<Memo>> = OnceLock::new();
    MEMO.get_or_init(|| {
        RwLock::new(Memo {
            bernoulli: BernoulliTable::new(),
            factorials: vec![BigInt::one()],
            cache_dir: std::env::var_os(CACHE_ENV).map(PathBuf::from),
            cache_loaded: false,
        })
    })
}

/// Override the cache directory (`None` disables the on-disk cache).
pub fn set_cache_dir(dir: Option<PathBuf>) {
    let mut memo = memo().write().unwrap_or_else(|e| e.into_inner());
    memo.cache_dir = dir;
    memo.cache_loaded = false;
}

/// Exact `B_m`.
pub fn bernoulli(m: usize) -> Result<Rational> {
    {
        let memo = memo().read().unwrap_or_else(|e| e.into_inner());
        if let Some(b) = memo.bernoulli.get(m) {
            return Ok(b.clone());
        }
    }
    let mut memo = memo().write().unwrap_or_else(|e| e.into_inner());
    if !memo.cache_loaded {
        memo.cache_loaded = true;
        if let Some(path) = memo.cache_dir.as_ref().map(|d| d.join(CACHE_FILE)) {
            if path.exists() {
                let cached = BernoulliTable::load(&path)?;
                if cached.len() > memo.bernoulli.len() {
                    memo.bernoulli = cached;
                }
            }
        }
    }
    if let Some(b) = memo.bernoulli.get(m) {
        return Ok(b.clone());
    }
    memo.bernoulli.ensure(m)?;
    if let Some(dir) = memo.cache_dir.clone() {
        std::fs::create_dir_all(&dir)?;
        memo.bernoulli.save(&dir.join(CACHE_FILE))?;
    }
    Ok(memo.bernoulli.values[m].clone())
}

/// Exact `m!`.
pub fn factorial(m: usize) -> BigInt {
    {
        let memo = memo().read().unwrap_or_else(|e| e.into_inner());
        if let Some(f) = memo.factorials.get(m) {
            return f.clone();
        }
    }
    let mut memo = memo().write().unwrap_or_else(|e| e.into_inner());
    let facts = &mut memo.factorials;
    let target = m.max(2 * facts.len());
    while facts.len() <= target {
        let next = facts.last().expect("0! is always present") * facts.len();
        facts.push(next);
    }
    facts[m].clone()
}

/// `c_n`, the coefficient of `x^(2n-1)` in the Maclaurin series of `tan x`.
pub fn tangent_coeff(n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::invalid("tangent_coeff index must be >= 1"));
    }
    let b = bernoulli(2 * n)?;
    let four_n = BigInt::one() << (2 * n);
    let scale = Rational::new(&four_n * (&four_n - 1u32), factorial(2 * n));
    let c = b * scale;
    Ok(if n.is_multiple_of(2) { -c } else { c })
}

/// `2^e` as a rational (negative exponents allowed).
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// `1 / m!` as a rational.
pub fn inv_factorial(m: usize) -> Rational {
    Rational::new(BigInt::one(), factorial(m))
}

/// Render `num/den` for dumps.
pub fn fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
