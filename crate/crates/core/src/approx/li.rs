//! The logarithmic integral in its two conventions.
//!
//! `li_lower2` integrates 1/log t from 2. `li_pv` integrates from 0 through
//! the pole at t = 1 as a principal value: the integral with the window
//! `(1 − ε, 1 + ε)` removed differs from the principal value by
//! `∫_{1−ε}^{1+ε} (1/log t − 1/(t − 1)) dt`, an odd series in ε, so a
//! Richardson table over ε, ε/2, ε/4, ... removes it order by order.

use super::quad::{integrate_with_breaks, Quadrature};
use super::ApproxConfig;
use crate::error::{domain, Result};

const PV_LEVELS: usize = 7;
const PV_EPS0: f64 = 0.25;

fn inv_log(t: f64) -> f64 {
    1.0 / t.ln()
}

/// Breakpoints 2, 4, 8, ... ending exactly at `x`.
fn doubling_breaks(from: f64, x: f64) -> Vec<f64> {
    let mut breaks = vec![from];
    let mut t = 2.0 * from;
    while t < x {
        breaks.push(t);
        t *= 2.0;
    }
    breaks.push(x);
    breaks
}

/// Li(x) = ∫_2^x dt / log t.
pub fn li_lower2(x: f64, cfg: &ApproxConfig) -> Result<f64> {
    if !(x >= 2.0) {
        return domain(format!("Li(x) from 2 needs x >= 2, got {x}"));
    }
    if x == 2.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return domain("Li(∞) diverges");
    }
    Ok(integrate_with_breaks(inv_log, &doubling_breaks(2.0, x), cfg.quad_tol)?.value)
}

/// Principal-value integral with its extrapolation error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiEstimate {
    pub value: f64,
    pub error: f64,
}

/// li(x) = PV ∫_0^x dt / log t.
pub fn li_pv(x: f64, cfg: &ApproxConfig) -> Result<f64> {
    Ok(li_pv_estimate(x, cfg)?.value)
}

pub fn li_pv_estimate(x: f64, cfg: &ApproxConfig) -> Result<LiEstimate> {
    if !(x > 1.0) {
        return domain(format!("principal-value li(x) needs x > 1, got {x}"));
    }
    if x.is_infinite() {
        return domain("li(∞) diverges");
    }
    let eps0 = PV_EPS0.min(0.5 * (x - 1.0));
    let tol = cfg.quad_tol / 16.0;

    let mut quad_err = 0.0f64;
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(PV_LEVELS);
    for level in 0..PV_LEVELS {
        let eps = eps0 / (1u64 << level) as f64;
        let (value, error) = excised(x, eps, tol)?;
        quad_err = quad_err.max(error);
        let mut row = vec![value];
        for m in 1..=level {
            // eliminates the ε^(2m−1) term
            let factor = (1u64 << (2 * m - 1)) as f64 - 1.0;
            let prev = &table[level - 1];
            let improved = row[m - 1] + (row[m - 1] - prev[m - 1]) / factor;
            row.push(improved);
        }
        table.push(row);
    }
    let last = &table[PV_LEVELS - 1];
    let prev = &table[PV_LEVELS - 2];
    let value = last[PV_LEVELS - 1];
    let extrap_err = (value - prev[PV_LEVELS - 2]).abs();
    Ok(LiEstimate {
        value,
        error: extrap_err + 4.0 * quad_err,
    })
}

/// `∫_0^{1−ε} + ∫_{1+ε}^x` of 1/log t, with breakpoints that grade toward the pole.
fn excised(x: f64, eps: f64, tol: f64) -> Result<(f64, f64)> {
    let mut left = vec![0.0];
    let mut d = 0.5f64;
    while d > eps {
        left.push(1.0 - d);
        d *= 0.5;
    }
    left.push(1.0 - eps);

    let mut right = vec![1.0 + eps];
    let mut d = 2.0 * eps;
    let near_end = x.min(2.0);
    while 1.0 + d < near_end {
        right.push(1.0 + d);
        d *= 2.0;
    }
    if x > 2.0 {
        right.extend(doubling_breaks(2.0, x));
    } else {
        right.push(x);
    }

    let Quadrature {
        value: l,
        error: le,
    } = integrate_with_breaks(inv_log, &left, tol)?;
    let Quadrature {
        value: r,
        error: re,
    } = integrate_with_breaks(inv_log, &right, tol)?;
    Ok((l + r, le + re))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// li(x) = γ + ln ln x + Σ (ln x)^n / (n · n!), independent of any quadrature.
    fn li_series(x: f64) -> f64 {
        let l = x.ln();
        let mut term = 1.0;
        let mut sum = 0.0;
        for n in 1..400 {
            term *= l / n as f64;
            let add = term / n as f64;
            sum += add;
            if add < 1e-18 * sum {
                break;
            }
        }
        0.577_215_664_901_532_860_6 + l.ln() + sum
    }

    /// Composite Simpson rule with `panels` (even) subintervals.
    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
        let h = (b - a) / panels as f64;
        let mut s = f(a) + f(b);
        for i in 1..panels {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(a + i as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn li2_boundary_and_domain() {
        let cfg = ApproxConfig::default();
        assert_eq!(li_lower2(2.0, &cfg).unwrap(), 0.0);
        assert!(li_lower2(1.999, &cfg).is_err());
        assert!(li_pv(1.0, &cfg).is_err());
        assert!(li_pv(0.5, &cfg).is_err());
    }

    #[test]
    fn li2_at_100_matches_simpson() {
        let cfg = ApproxConfig::default();
        let oracle = simpson(inv_log, 2.0, 100.0, 1_000_000);
        let got = li_lower2(100.0, &cfg).unwrap();
        assert!((got - oracle).abs() <= cfg.quad_tol, "{got} vs {oracle}");
    }

    #[test]
    fn li2_matches_series_difference() {
        let cfg = ApproxConfig::default();
        let li2 = li_series(2.0);
        for x in [3.0, 10.0, 1e3, 1e5, 1e7] {
            let got = li_lower2(x, &cfg).unwrap();
            let expect = li_series(x) - li2;
            assert!(
                (got - expect).abs() < 1e-9 * expect.max(1.0),
                "x={x}: {got} vs {expect}"
            );
        }
    }

    #[test]
    fn pv_at_two_matches_series() {
        let cfg = ApproxConfig::default();
        let est = li_pv_estimate(2.0, &cfg).unwrap();
        assert!((est.value - li_series(2.0)).abs() < 1e-10, "{est:?}");
        assert!((est.value - 1.045).abs() < 5e-4);
        assert!(est.error < 1e-9);
    }

    #[test]
    fn pv_below_two_matches_series() {
        let cfg = ApproxConfig::default();
        for x in [1.1, 1.5, 1.9] {
            let got = li_pv(x, &cfg).unwrap();
            assert!((got - li_series(x)).abs() < 1e-9, "x={x}: {got}");
        }
    }

    #[test]
    fn convention_offset_is_constant() {
        let cfg = ApproxConfig::default();
        let d: Vec<f64> = [10.0, 100.0, 1000.0]
            .iter()
            .map(|&x| li_pv(x, &cfg).unwrap() - li_lower2(x, &cfg).unwrap())
            .collect();
        let spread =
            d.iter().cloned().fold(f64::MIN, f64::max) - d.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread <= 10.0 * cfg.quad_tol, "spread {spread:e}");
    }

    #[test]
    fn pv_is_increasing_from_two() {
        let cfg = ApproxConfig::default();
        let vals: Vec<f64> = (0..20)
            .map(|i| li_pv(2.0 + i as f64 * 3.7, &cfg).unwrap())
            .collect();
        assert!(vals.windows(2).all(|w| w[0] < w[1]));
    }
}
