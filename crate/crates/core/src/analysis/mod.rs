//! Regular/oscillatory decomposition and identity checks.
//!
//! Identities are checked by exact piecewise summation over the jumps of the
//! step functions; the only quadrature left is over smooth integrands, so a
//! residual measures rounding plus quadrature tolerance and nothing else.

mod decompose;
mod identities;
mod stieltjes;
mod tabulate;

pub use decompose::{decompose, Component, Decomposition};
pub use identities::{
    check, check_eq11, check_eq12, check_eq21, check_eq28, derivative_identity_check, integer_root,
    r_limit_prime_power_form, vonkoch_ratio, vonkoch_sweep, DerivativeReport, IdentityId,
    IdentityReport, VonKochSweep,
};
pub use stieltjes::{integrate_steps_against, stieltjes_from_start, stieltjes_integral, Weight};
pub use tabulate::{sample_row, sample_rows, SampleRow, COLUMNS};

use std::sync::OnceLock;

use crate::approx::{ApproxConfig, Constants};
use crate::error::{Error, Result};
use crate::exact::{step_series, StepKind, StepSeries};
use crate::sieve::{mobius_table, sieve_primes_with, MobiusTable, PrimeTable, SieveConfig};

/// Everything the decomposition and identity checks read: the prime and
/// Möbius tables, the shared constants and lazily built jump series.
#[derive(Debug)]
pub struct Tables {
    primes: PrimeTable,
    mobius: MobiusTable,
    constants: Constants,
    cfg: ApproxConfig,
    series: [OnceLock<StepSeries>; 4],
}

impl Tables {
    /// Sieves to `limit` and computes the constants.
    pub fn new(limit: u64, cfg: ApproxConfig) -> Result<Self> {
        Self::with_sieve(limit, cfg, &SieveConfig::default())
    }

    pub fn with_sieve(limit: u64, cfg: ApproxConfig, sieve: &SieveConfig) -> Result<Self> {
        cfg.validate()?;
        let primes = sieve_primes_with(limit, sieve)?;
        let mobius = mobius_table(cfg.mobius_cutoff)?;
        let constants = Constants::compute(&primes, &cfg)?;
        Ok(Self::from_parts(primes, mobius, constants, cfg))
    }

    pub fn from_parts(
        primes: PrimeTable,
        mobius: MobiusTable,
        constants: Constants,
        cfg: ApproxConfig,
    ) -> Self {
        Tables {
            primes,
            mobius,
            constants,
            cfg,
            series: Default::default(),
        }
    }

    pub fn primes(&self) -> &PrimeTable {
        &self.primes
    }

    pub fn mobius(&self) -> &MobiusTable {
        &self.mobius
    }

    pub fn constants(&self) -> &Constants {
        &self.constants
    }

    pub fn config(&self) -> &ApproxConfig {
        &self.cfg
    }

    pub fn limit(&self) -> u64 {
        self.primes.limit()
    }

    /// The jump series of `kind` over the whole table.
    pub fn series(&self, kind: StepKind) -> &StepSeries {
        let slot = match kind {
            StepKind::Pi => 0,
            StepKind::Theta => 1,
            StepKind::Psi => 2,
            StepKind::Mertens => 3,
        };
        self.series[slot].get_or_init(|| {
            step_series(kind, self.primes.limit(), &self.primes)
                .expect("series limit equals table limit")
        })
    }

    /// Value of a step function at `x`, bit-identical to the direct sum.
    pub fn value(&self, kind: StepKind, x: f64) -> Result<f64> {
        self.check(x)?;
        match kind {
            StepKind::Pi => Ok(self.primes.count_le(x) as f64),
            _ => self.series(kind).value_at(x),
        }
    }

    pub(crate) fn check(&self, x: f64) -> Result<()> {
        if !(x >= 0.0) {
            return Err(Error::Domain(format!("argument must be >= 0, got {x}")));
        }
        if x > self.primes.limit() as f64 {
            return Err(Error::TableExhausted {
                x,
                limit: self.primes.limit(),
            });
        }
        Ok(())
    }
}
