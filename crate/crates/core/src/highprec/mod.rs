//! Decimal fixed-point evaluation with explicit error bounds: π and the
//! truncated π/2-power series.

mod number;
mod pi;
mod series;

pub use number::{parse_decimal, pow10, HighPrecisionNumber};
pub use pi::compute_pi;
pub use series::{
    estimate_terms, ratio_diagnostics, sum_series, RatioPoint, SeriesResult, GUARD_DIGITS,
    RATIO_BURN_IN, TAIL_RATIO,
};

pub(crate) use pi::pi_at_scale;
pub(crate) use series::sum_series_at_scale;
