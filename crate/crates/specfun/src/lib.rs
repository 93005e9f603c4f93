//! Special functions for exterior screened problems around disks.
//!
//! Everything here is real-valued and pure. Bessel functions are returned in
//! exponentially scaled form so that arguments of order 10^4 neither underflow
//! nor overflow.

mod bessel;
mod chebyshev;
mod series;

pub use bessel::{
    bessel_k_derivative_scaled, bessel_k_scaled, bessel_k_scaled_all, bessel_ratio,
    ScaledBesselValue, MAX_ORDER,
};
pub use chebyshev::{chebyshev_t_at_zero, chebyshev_u_at_zero, interaction_coefficient, split_coefficient};
pub use series::{polylog_half, polylog_half_capped, theta_k, theta_series, ThetaSeries, POLYLOG_X_MAX};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("{function}: argument {value} outside the domain ({reason})")]
    Domain {
        function: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("{function}: result overflows for order {order} at t = {t}")]
    Overflow {
        function: &'static str,
        order: u32,
        t: f64,
    },
}

pub type Result<T> = std::result::Result<T, SpecFunError>;

/// Complementary error function, absolute accuracy near machine precision.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}
