//! Regular parts: Riemann's Ri, R_reg, θ_reg, ψ_reg and their derivatives.
//!
//! Every Möbius-weighted sum runs over `k = 1..=K(x)` with
//! `K(x) = floor(log2 x)`, the largest k with `x^(1/k) >= 2`. The power
//! series (everything except Ri) additionally drop a tail whose total
//! magnitude is below `series_tol`.

use super::li::li_lower2;
use super::{ApproxConfig, Constants};
use crate::error::{domain, Error, Result};
use crate::sieve::MobiusTable;

/// K(x) = floor(log2 x) for x >= 1 (at least 1), 0 below.
pub fn truncation_index(x: f64) -> u32 {
    if !(x >= 1.0) {
        return 0;
    }
    if x < 2.0 {
        return 1;
    }
    let mut k = x.log2().floor() as i32;
    while k > 1 && 2f64.powi(k) > x {
        k -= 1;
    }
    while 2f64.powi(k + 1) <= x {
        k += 1;
    }
    k as u32
}

/// x^(1/k), clamped to 2 for k <= K(x) so rounding never leaves the Li domain.
fn root(x: f64, k: u32) -> f64 {
    match k {
        1 => x,
        2 => x.sqrt(),
        3 => x.cbrt(),
        _ => x.powf(1.0 / k as f64),
    }
}

/// Möbius values for `kmin..=K(x)` after checking the configured cutoff.
fn mobius_range(
    x: f64,
    kmin: u32,
    mobius: &MobiusTable,
    cfg: &ApproxConfig,
) -> Result<Vec<(u32, i8)>> {
    let kmax = truncation_index(x);
    if kmax as u64 > cfg.mobius_cutoff {
        return Err(Error::Config(format!(
            "x = {x} needs Möbius terms up to {kmax}, above mobius_cutoff {}",
            cfg.mobius_cutoff
        )));
    }
    if kmax as u64 > mobius.limit() {
        return Err(Error::Config(format!(
            "x = {x} needs μ(n) up to {kmax}, table stops at {}",
            mobius.limit()
        )));
    }
    Ok((kmin..=kmax)
        .map(|k| (k, mobius.mu(k as u64)))
        .filter(|&(_, m)| m != 0)
        .collect())
}

/// One term `coefficient · x^exponent` of a [`PowerSeries`], for index k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerTerm {
    pub k: u32,
    pub coefficient: f64,
    pub exponent: f64,
}

/// `prefactor · Σ coefficient_k · x^exponent_k` over the untruncated index set.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    pub x: f64,
    pub prefactor: f64,
    pub terms: Vec<PowerTerm>,
}

impl PowerSeries {
    fn build(
        x: f64,
        prefactor: f64,
        mobius: &[(u32, i8)],
        coefficient: impl Fn(u32, f64) -> f64,
        exponent: impl Fn(u32) -> f64,
    ) -> Self {
        let terms = mobius
            .iter()
            .map(|&(k, m)| PowerTerm {
                k,
                coefficient: coefficient(k, m as f64),
                exponent: exponent(k),
            })
            .collect();
        PowerSeries {
            x,
            prefactor,
            terms,
        }
    }

    /// The scaled term values `prefactor · c_k · x^e_k`, ascending in k.
    pub fn term_values(&self) -> Vec<f64> {
        self.terms
            .iter()
            .map(|t| {
                let power = if t.exponent == 1.0 / t.k as f64 {
                    root(self.x, t.k)
                } else {
                    self.x.powf(t.exponent)
                };
                self.prefactor * t.coefficient * power
            })
            .collect()
    }

    /// Sums the terms, dropping the longest tail whose absolute sum is below `tol`.
    pub fn sum(&self, tol: f64) -> f64 {
        let values = self.term_values();
        let mut keep = values.len();
        let mut tail = 0.0;
        for (i, v) in values.iter().enumerate().rev() {
            tail += v.abs();
            if tail >= tol {
                break;
            }
            keep = i;
        }
        values[..keep].iter().sum()
    }

    /// `(k, coefficient)` pairs.
    pub fn coefficients(&self) -> Vec<(u32, f64)> {
        self.terms.iter().map(|t| (t.k, t.coefficient)).collect()
    }
}

/// Riemann's approximation Σ_{n<=K(x)} μ(n)/n · Li(x^(1/n)) with Li from 2.
pub fn ri(x: f64, mobius: &MobiusTable, cfg: &ApproxConfig) -> Result<f64> {
    if !(x >= 2.0) {
        return domain(format!("Ri(x) needs x >= 2, got {x}"));
    }
    let mut sum = 0.0;
    for (n, m) in mobius_range(x, 1, mobius, cfg)? {
        let y = root(x, n).max(2.0);
        sum += m as f64 / n as f64 * li_lower2(y, cfg)?;
    }
    Ok(sum)
}

/// The `(1/x) Σ_{k>=2} μ(k)/(1−k) x^(1/k)` part of R_reg.
#[allow(non_snake_case)]
pub fn R_reg_correction_series(
    x: f64,
    mobius: &MobiusTable,
    cfg: &ApproxConfig,
) -> Result<PowerSeries> {
    if !(x >= 2.0) {
        return domain(format!("R_reg(x) needs x >= 2, got {x}"));
    }
    let mu = mobius_range(x, 2, mobius, cfg)?;
    Ok(PowerSeries::build(
        x,
        1.0 / x,
        &mu,
        |k, m| m / (1.0 - k as f64),
        |k| 1.0 / k as f64,
    ))
}

/// R_reg(x) = lim R + (1/x) Σ_{k=2}^{K(x)} μ(k)/(1−k) · x^(1/k).
#[allow(non_snake_case)]
pub fn R_reg(
    x: f64,
    mobius: &MobiusTable,
    constants: &Constants,
    cfg: &ApproxConfig,
) -> Result<f64> {
    let series = R_reg_correction_series(x, mobius, cfg)?;
    Ok(constants.r_limit + series.sum(cfg.series_tol))
}

pub fn theta_reg_series(x: f64, mobius: &MobiusTable, cfg: &ApproxConfig) -> Result<PowerSeries> {
    if !(x >= 0.0) {
        return domain(format!("θ_reg(x) needs x >= 0, got {x}"));
    }
    let mu = if x < 1.0 {
        Vec::new()
    } else {
        mobius_range(x, 1, mobius, cfg)?
    };
    Ok(PowerSeries::build(
        x,
        1.0,
        &mu,
        |_, m| m,
        |k| 1.0 / k as f64,
    ))
}

/// θ_reg(x) = Σ_{k=1}^{K(x)} μ(k) x^(1/k); zero for x < 1.
pub fn theta_reg(x: f64, mobius: &MobiusTable, cfg: &ApproxConfig) -> Result<f64> {
    Ok(theta_reg_series(x, mobius, cfg)?.sum(cfg.series_tol))
}

/// ψ_reg(x) = x.
pub fn psi_reg(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return domain(format!("ψ_reg(x) needs x >= 0, got {x}"));
    }
    Ok(x)
}

fn check_derivative_domain(x: f64, name: &str) -> Result<()> {
    if !(x > 2.0) || x.is_infinite() {
        return domain(format!("{name} needs finite x > 2, got {x}"));
    }
    Ok(())
}

pub fn dpi_reg_series(x: f64, mobius: &MobiusTable, cfg: &ApproxConfig) -> Result<PowerSeries> {
    check_derivative_domain(x, "π_reg'")?;
    let mu = mobius_range(x, 1, mobius, cfg)?;
    Ok(PowerSeries::build(
        x,
        1.0 / (x * x.ln()),
        &mu,
        |k, m| m / k as f64,
        |k| 1.0 / k as f64,
    ))
}

/// π_reg'(x) = 1/(x log x) · Σ μ(k)/k · x^(1/k).
pub fn dpi_reg(x: f64, mobius: &MobiusTable, cfg: &ApproxConfig) -> Result<f64> {
    Ok(dpi_reg_series(x, mobius, cfg)?.sum(cfg.series_tol))
}

#[allow(non_snake_case)]
pub fn dR_reg_series(x: f64, mobius: &MobiusTable, cfg: &ApproxConfig) -> Result<PowerSeries> {
    check_derivative_domain(x, "R_reg'")?;
    let mu = mobius_range(x, 2, mobius, cfg)?;
    Ok(PowerSeries::build(
        x,
        1.0,
        &mu,
        |k, m| m / k as f64,
        |k| 1.0 / k as f64 - 2.0,
    ))
}

/// R_reg'(x) = Σ_{k>=2} μ(k)/k · x^(1/k − 2).
#[allow(non_snake_case)]
pub fn dR_reg(x: f64, mobius: &MobiusTable, cfg: &ApproxConfig) -> Result<f64> {
    Ok(dR_reg_series(x, mobius, cfg)?.sum(cfg.series_tol))
}

pub fn dtheta_reg_series(x: f64, mobius: &MobiusTable, cfg: &ApproxConfig) -> Result<PowerSeries> {
    check_derivative_domain(x, "θ_reg'")?;
    let mu = mobius_range(x, 1, mobius, cfg)?;
    Ok(PowerSeries::build(
        x,
        1.0 / x,
        &mu,
        |k, m| m / k as f64,
        |k| 1.0 / k as f64,
    ))
}

/// θ_reg'(x) = (1/x) Σ μ(k)/k · x^(1/k).
pub fn dtheta_reg(x: f64, mobius: &MobiusTable, cfg: &ApproxConfig) -> Result<f64> {
    Ok(dtheta_reg_series(x, mobius, cfg)?.sum(cfg.series_tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{limit_constant_accelerated, CertifiedValue, EULER_GAMMA};
    use crate::sieve::mobius_table;

    fn mu() -> MobiusTable {
        mobius_table(64).unwrap()
    }

    fn constants() -> Constants {
        let v = limit_constant_accelerated();
        Constants {
            gamma: EULER_GAMMA,
            r_limit: v.value,
            r_limit_bracket: CertifiedValue { ..v },
            li_offset: 1.045_163_780_117_492_8,
        }
    }

    fn central(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        (f(x + h) - f(x - h)) / (2.0 * h)
    }

    #[test]
    fn truncation_index_values() {
        assert_eq!(truncation_index(0.5), 0);
        assert_eq!(truncation_index(1.0), 1);
        assert_eq!(truncation_index(1.99), 1);
        assert_eq!(truncation_index(2.0), 1);
        assert_eq!(truncation_index(3.99), 1);
        assert_eq!(truncation_index(4.0), 2);
        assert_eq!(truncation_index(1023.999), 9);
        assert_eq!(truncation_index(1024.0), 10);
        assert_eq!(truncation_index(1e12), 39);
        for k in 1..60 {
            let x = 2f64.powi(k);
            assert_eq!(truncation_index(x), k as u32);
            if k > 1 {
                assert_eq!(truncation_index(x * (1.0 - f64::EPSILON)), k as u32 - 1);
            }
            assert!(root(x, k as u32) >= 2.0 - 1e-15);
        }
    }

    #[test]
    fn ri_examples() {
        let cfg = ApproxConfig::default();
        let m = mu();
        assert_eq!(ri(2.0, &m, &cfg).unwrap(), 0.0);
        assert!(ri(1.5, &m, &cfg).is_err());
        // π(1000) = 168
        let r = ri(1e3, &m, &cfg).unwrap();
        let l = li_lower2(1e3, &cfg).unwrap();
        assert!((r - 168.0).abs() < (l - 168.0).abs());
    }

    #[test]
    fn ri_second_term_isolated() {
        let cfg = ApproxConfig::default();
        let m = mu();
        let x = 1e4;
        let full = ri(x, &m, &cfg).unwrap();
        let without: f64 = mobius_range(x, 1, &m, &cfg)
            .unwrap()
            .into_iter()
            .filter(|&(n, _)| n != 2)
            .map(|(n, mu)| mu as f64 / n as f64 * li_lower2(root(x, n).max(2.0), &cfg).unwrap())
            .sum();
        let expect = -0.5 * li_lower2(100.0, &cfg).unwrap();
        assert!((full - without - expect).abs() < 1e-9);
    }

    #[test]
    fn ri_needs_enough_mobius_terms() {
        let cfg = ApproxConfig {
            mobius_cutoff: 5,
            ..Default::default()
        };
        assert!(matches!(ri(1e3, &mu(), &cfg), Err(Error::Config(_))));
        let small = mobius_table(3).unwrap();
        assert!(matches!(
            ri(1e3, &small, &ApproxConfig::default()),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn r_reg_examples() {
        let cfg = ApproxConfig::default();
        let c = constants();
        let m = mu();
        assert_eq!(R_reg(4.0, &m, &c, &cfg).unwrap(), c.r_limit + 0.5);
        let far = R_reg(1e12, &m, &c, &cfg).unwrap();
        assert!((far - c.r_limit).abs() < 1e-5);
        assert!(R_reg(1.0, &m, &c, &cfg).is_err());
    }

    #[test]
    fn theta_psi_reg_examples() {
        let cfg = ApproxConfig::default();
        let m = mu();
        assert_eq!(theta_reg(0.0, &m, &cfg).unwrap(), 0.0);
        assert_eq!(theta_reg(0.7, &m, &cfg).unwrap(), 0.0);
        assert_eq!(psi_reg(0.0).unwrap(), 0.0);
        assert_eq!(psi_reg(1e6).unwrap(), 1e6);
        assert!(psi_reg(-1.0).is_err());

        let x: f64 = 1e6;
        // K(1e6) = 19; μ(k) for k = 2..19
        let mus = [-1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0, -1, 1, 1, 0, -1, 0, -1];
        let expect: f64 = mus
            .iter()
            .enumerate()
            .map(|(i, &mu)| mu as f64 * x.powf(1.0 / (i + 2) as f64))
            .sum();
        let got = theta_reg(x, &m, &cfg).unwrap() - x;
        assert!((got - expect).abs() < 1e-9, "{got} vs {expect}");
    }

    #[test]
    fn theta_reg_is_mobius_sum_of_psi_reg() {
        let cfg = ApproxConfig::default();
        let m = mu();
        for x in [2.0, 3.5, 100.0, 12345.6, 1e6, 1e9] {
            let via_psi: f64 = (1..=truncation_index(x))
                .map(|k| m.mu(k as u64) as f64 * psi_reg(root(x, k)).unwrap())
                .sum();
            assert_eq!(theta_reg(x, &m, &cfg).unwrap(), via_psi, "x = {x}");
        }
    }

    #[test]
    fn derivative_term_checks() {
        let cfg = ApproxConfig::default();
        let m = mu();
        let x: f64 = 100.0;
        let k2 = dR_reg_series(x, &m, &cfg).unwrap().term_values()[0];
        assert!((k2 - (-0.5 * x.powf(-1.5))).abs() < 1e-18);
        let lead = dpi_reg_series(x, &m, &cfg).unwrap().term_values()[0];
        assert!((lead - 1.0 / x.ln()).abs() < 1e-15);
        assert_eq!(
            dtheta_reg_series(x, &m, &cfg).unwrap().term_values()[0],
            1.0
        );
        assert!(dR_reg(1e12, &m, &cfg).unwrap().abs() < 1e-17);
        assert!(dpi_reg(2.0, &m, &cfg).is_err());
    }

    #[test]
    fn dpi_reg_leading_behaviour() {
        let cfg = ApproxConfig::default();
        let x: f64 = 1e8;
        let d = dpi_reg(x, &mu(), &cfg).unwrap();
        assert!((d * x.ln() - 1.0).abs() < 0.01);
    }

    #[test]
    fn dtheta_is_dpi_times_log() {
        let cfg = ApproxConfig::default();
        let m = mu();
        for x in [3.0, 50.0, 1e4, 1e7] {
            let a = dtheta_reg(x, &m, &cfg).unwrap();
            let b = dpi_reg(x, &m, &cfg).unwrap() * x.ln();
            assert!((a - b).abs() <= 1e-14 * a.abs(), "x={x}");
        }
    }

    #[test]
    fn analytic_derivatives_match_finite_differences_at_1e4() {
        let cfg = ApproxConfig::default();
        let m = mu();
        let c = constants();
        let x = 1e4;
        let h = 1.0;
        let fd = central(|t| ri(t, &m, &cfg).unwrap(), x, h);
        let an = dpi_reg(x, &m, &cfg).unwrap();
        assert!(((fd - an) / an).abs() < 1e-6, "dpi: {fd} vs {an}");
        let fd = central(|t| R_reg(t, &m, &c, &cfg).unwrap(), x, h);
        let an = dR_reg(x, &m, &cfg).unwrap();
        assert!(((fd - an) / an).abs() < 1e-6, "dR: {fd} vs {an}");
        let fd = central(|t| theta_reg(t, &m, &cfg).unwrap(), x, h);
        let an = dtheta_reg(x, &m, &cfg).unwrap();
        assert!(((fd - an) / an).abs() < 1e-6, "dtheta: {fd} vs {an}");
    }

    #[test]
    fn halving_series_tol_is_stable() {
        let m = mu();
        let c = constants();
        for x in [10.0, 1e3, 1e6, 1e9, 1e12] {
            let mut tol = 1e-3;
            for _ in 0..20 {
                let a = ApproxConfig {
                    series_tol: tol,
                    ..Default::default()
                };
                let b = ApproxConfig {
                    series_tol: tol / 2.0,
                    ..Default::default()
                };
                let d1 = (R_reg(x, &m, &c, &a).unwrap() - R_reg(x, &m, &c, &b).unwrap()).abs();
                let d2 = (theta_reg(x, &m, &a).unwrap() - theta_reg(x, &m, &b).unwrap()).abs();
                let d3 = (dpi_reg(x, &m, &a).unwrap() - dpi_reg(x, &m, &b).unwrap()).abs();
                assert!(d1 < tol && d2 < tol && d3 < tol, "x={x} tol={tol}");
                tol /= 2.0;
            }
        }
    }

    #[test]
    fn power_series_tail_drop() {
        let s = PowerSeries {
            x: 4.0,
            prefactor: 1.0,
            terms: vec![
                PowerTerm {
                    k: 1,
                    coefficient: 1.0,
                    exponent: 1.0,
                },
                PowerTerm {
                    k: 2,
                    coefficient: 1e-3,
                    exponent: 0.5,
                },
                PowerTerm {
                    k: 3,
                    coefficient: 1e-6,
                    exponent: 0.0,
                },
            ],
        };
        assert_eq!(s.sum(1e-12), 4.0 + 2e-3 + 1e-6);
        assert_eq!(s.sum(1e-5), 4.0 + 2e-3);
        assert_eq!(s.sum(1e-2), 4.0);
    }
}
