//! Independent exact-arithmetic oracles shared by the integration tests.
#![allow(dead_code)]

use halfpi::exact_arith::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Maclaurin coefficients of tan x up to degree `deg`, by dividing the sine
/// series by the cosine series.
pub fn tan_series(deg: usize) -> Vec<Rational> {
    let mut fact = vec![Rational::one()];
    for i in 1..=deg {
        fact.push(&fact[i - 1] * int(i as i64));
    }
    let sin: Vec<Rational> = (0..=deg)
        .map(|i| match i % 4 {
            1 => fact[i].recip(),
            3 => -fact[i].recip(),
            _ => Rational::zero(),
        })
        .collect();
    let cos: Vec<Rational> = (0..=deg)
        .map(|i| match i % 4 {
            0 => fact[i].recip(),
            2 => -fact[i].recip(),
            _ => Rational::zero(),
        })
        .collect();
    // tan * cos = sin, cos[0] = 1
    let mut t = vec![Rational::zero(); deg + 1];
    for i in 0..=deg {
        let mut acc = sin[i].clone();
        for j in 0..i {
            acc -= &t[j] * &cos[i - j];
        }
        t[i] = acc;
    }
    t
}

/// `c_n`, the coefficient of `x^(2n-1)` in tan x, for `n = 1..=n_max`.
pub fn tangent_coeffs(n_max: usize) -> Vec<Rational> {
    let t = tan_series(2 * n_max - 1);
    (1..=n_max).map(|n| t[2 * n - 1].clone()).collect()
}

fn pow2(e: usize) -> Rational {
    Rational::from_integer(BigInt::one() << e)
}

/// `D_n(k) = c_n / (2^(2n-1) (2n+k-1) P_k)` with `P_k = ∏_{j=0}^{k-2} (2n+j)`.
pub fn d_closed(c_n: &Rational, n: usize, k: usize) -> Rational {
    let mut den = pow2(2 * n - 1) * int((2 * n + k - 1) as i64);
    for j in 0..k.saturating_sub(1) {
        den *= int((2 * n + j) as i64);
    }
    c_n / den
}

/// `∏_{j=1}^{k-1} (2n+j)`, the product appearing in the `F_n` closed forms.
fn p(n: usize, k: usize) -> Rational {
    (1..k).fold(Rational::one(), |acc, j| acc * int((2 * n + j) as i64))
}

fn fact(m: i64) -> Rational {
    (1..=m).fold(Rational::one(), |acc, j| acc * int(j))
}

/// Stepwise `E_n(1..=5)` written out term by term from `D_n(1..=5)`.
pub fn stepwise_e(d: &[Rational; 5]) -> [Rational; 5] {
    let half = q(1, 2);
    let e1 = d[0].clone();
    let e2 = &e1 - &d[1] * &half;
    let e3 = (-(&d[2] * &half) + &e1 / fact(2)) / (int(1) - q(1, 8));
    let e4 = &d[3] * &half + &e3 / fact(1) - &e1 / fact(3);
    let e5 = (&d[4] * &half + &e3 / fact(2) - &e1 / fact(4)) / (int(1) - q(1, 32));
    [e1, e2, e3, e4, e5]
}

/// Closed forms `F_n(2..=5) = E_n(k) / D_n(1)`.
pub fn f_closed(n: usize) -> [Rational; 4] {
    let seven_eighths = int(1) - q(1, 8);
    let inner3 = q(1, 2) - (int(2) * int((2 * n + 2) as i64) * p(n, 2)).recip();
    let f2 = int(1) - (int(2) * int((2 * n + 1) as i64)).recip();
    let f3 = &inner3 / &seven_eighths;
    let f4 = -fact(3).recip()
        + (int(2) * int((2 * n + 3) as i64) * p(n, 3)).recip()
        + &inner3 / &seven_eighths;
    let f5 = (-fact(4).recip()
        + &inner3 / (fact(2) * &seven_eighths)
        + (int(2) * int((2 * n + 4) as i64) * p(n, 4)).recip())
        / (int(1) - q(1, 32));
    [f2, f3, f4, f5]
}
