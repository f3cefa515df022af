pub mod cli;
pub mod coefficients;
pub mod constants;
pub mod error;
pub mod exact_arith;
pub mod highprec;
pub mod identity_check;
pub mod limits;
pub mod oracle;

pub use error::{Error, Result};
pub use limits::{limits, set_limits, Limits};
