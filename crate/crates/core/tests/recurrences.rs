mod common;

use common::{d_closed, f_closed, int, q, stepwise_e, tangent_coeffs};
use halfpi::coefficients::{build_table, d_coeff, e_coeff, f_ratio};
use halfpi::exact_arith::tangent_coeff;
use proptest::prelude::*;

const N_MAX: usize = 50;

#[test]
fn tangent_coefficients_match_tan_taylor_series() {
    let oracle = tangent_coeffs(40);
    for (i, c) in oracle.iter().enumerate() {
        assert_eq!(&tangent_coeff(i + 1).unwrap(), c, "n = {}", i + 1);
    }
}

#[test]
fn tan_partial_sum_at_half() {
    // Σ_{n<=40} c_n x^(2n-1) at x = 1/2 against tan(1/2) = 0.54630248984379051325517...
    let x = q(1, 2);
    let mut sum = int(0);
    let mut power = x.clone();
    for n in 1..=40 {
        sum += tangent_coeff(n).unwrap() * &power;
        power = &power * &x * &x;
    }
    let digits = halfpi::highprec::HighPrecisionNumber::from_rational(&sum, 20).to_digits(20);
    assert_eq!(digits, "0.54630248984379051326");
}

#[test]
fn d_ladder_matches_closed_form() {
    let c = tangent_coeffs(N_MAX);
    for n in 1..=N_MAX {
        for k in 1..=7 {
            assert_eq!(d_coeff(n, k).unwrap(), d_closed(&c[n - 1], n, k), "n={n} k={k}");
        }
    }
}

#[test]
fn general_recurrence_equals_stepwise_formulas() {
    let c = tangent_coeffs(N_MAX);
    let table = build_table(5, N_MAX).unwrap();
    for n in 1..=N_MAX {
        let d: [_; 5] = std::array::from_fn(|i| d_closed(&c[n - 1], n, i + 1));
        let step = stepwise_e(&d);
        for k in 1..=5 {
            assert_eq!(table.e(n, k).unwrap(), &step[k - 1], "n={n} k={k}");
            assert_eq!(e_coeff(n, k).unwrap(), step[k - 1], "n={n} k={k}");
        }
    }
}

#[test]
fn f_ratios_match_closed_forms() {
    for n in 1..=N_MAX {
        let f = f_closed(n);
        for k in 2..=5 {
            assert_eq!(f_ratio(n, k).unwrap(), f[k - 2], "n={n} k={k}");
        }
    }
}

#[test]
fn f_ratio_two_is_one_minus_reciprocal() {
    for n in 1..=N_MAX {
        assert_eq!(f_ratio(n, 2).unwrap(), int(1) - q(1, 2 * (2 * n as i64 + 1)));
    }
}

#[test]
fn table_is_schedule_independent() {
    let a = build_table(6, 40).unwrap();
    let b = build_table(6, 40).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    // a smaller table is a prefix of a larger one
    let small = build_table(3, 20).unwrap();
    for k in 1..=3 {
        assert_eq!(small.column(k).unwrap(), &a.column(k).unwrap()[..20]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_ladder_step(n in 1usize..60, k in 2usize..10) {
        let expected = d_coeff(n, k - 1).unwrap() / int((2 * n + k - 1) as i64);
        prop_assert_eq!(d_coeff(n, k).unwrap(), expected);
    }

    #[test]
    fn e_columns_positive(n in 1usize..60, k in 1usize..8) {
        prop_assert!(e_coeff(n, k).unwrap() > int(0));
    }
}
