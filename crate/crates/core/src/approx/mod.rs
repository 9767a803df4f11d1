//! Smooth approximations and regular parts of the prime-counting functions.

mod classic;
mod constants;
mod li;
pub mod quad;
mod regular;

pub use classic::{euler_product_partial, legendre_approx, pnt_approx, LEGENDRE_A};
pub use constants::{
    euler_gamma_series, limit_constant, limit_constant_accelerated, limit_constant_within, zeta,
    zeta_log_derivative, zeta_prime, CertifiedValue, Constants, EULER_GAMMA, PUBLISHED_R_LIMIT,
};
pub use li::{li_lower2, li_pv, li_pv_estimate, LiEstimate};
pub use regular::{
    dR_reg, dR_reg_series, dpi_reg, dpi_reg_series, dtheta_reg, dtheta_reg_series, psi_reg, ri,
    theta_reg, theta_reg_series, truncation_index, PowerSeries, PowerTerm, R_reg,
    R_reg_correction_series,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Truncation and tolerance settings for every series and integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApproxConfig {
    /// Absolute quadrature tolerance.
    pub quad_tol: f64,
    /// Largest n allowed in Möbius-weighted sums.
    pub mobius_cutoff: u64,
    /// Largest prime in the direct limit-constant sum.
    pub prime_sum_cutoff: u64,
    /// A series tail whose magnitude falls below this is dropped.
    pub series_tol: f64,
}

impl Default for ApproxConfig {
    fn default() -> Self {
        ApproxConfig {
            quad_tol: 1e-10,
            mobius_cutoff: 64,
            prime_sum_cutoff: 10_000_000,
            series_tol: 1e-15,
        }
    }
}

impl ApproxConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.quad_tol > 0.0) {
            return Err(Error::Config(format!(
                "quad_tol must be > 0, got {}",
                self.quad_tol
            )));
        }
        if self.mobius_cutoff < 1 {
            return Err(Error::Config("mobius_cutoff must be >= 1".into()));
        }
        if self.prime_sum_cutoff < 2 {
            return Err(Error::Config("prime_sum_cutoff must be >= 2".into()));
        }
        if !(self.series_tol > 0.0) {
            return Err(Error::Config(format!(
                "series_tol must be > 0, got {}",
                self.series_tol
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(ApproxConfig::default().validate().is_ok());
        let bad = [
            ApproxConfig {
                quad_tol: 0.0,
                ..Default::default()
            },
            ApproxConfig {
                quad_tol: f64::NAN,
                ..Default::default()
            },
            ApproxConfig {
                mobius_cutoff: 0,
                ..Default::default()
            },
            ApproxConfig {
                prime_sum_cutoff: 1,
                ..Default::default()
            },
            ApproxConfig {
                series_tol: -1.0,
                ..Default::default()
            },
        ];
        for cfg in bad {
            assert!(matches!(cfg.validate(), Err(Error::Config(_))), "{cfg:?}");
        }
    }
}
