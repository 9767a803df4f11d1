use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::exact::StepSeries;

/// Smooth weights that appear in the integration-by-parts identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// y / log y
    YOverLog,
    /// 1 / log y
    InvLog,
}

impl Weight {
    pub fn eval(self, y: f64) -> f64 {
        match self {
            Weight::YOverLog => y / y.ln(),
            Weight::InvLog => 1.0 / y.ln(),
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Weight::YOverLog => "y/log y",
            Weight::InvLog => "1/log y",
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "y/log y" | "y_over_log" => Ok(Weight::YOverLog),
            "1/log y" | "inv_log" => Ok(Weight::InvLog),
            other => domain(format!("unsupported weight {other:?}")),
        }
    }
}

fn check_interval(series: &StepSeries, a: f64, b: f64) -> Result<()> {
    if !(a >= 2.0 && a < b) {
        return domain(format!("need 2 <= a < b, got a = {a}, b = {b}"));
    }
    if b > series.limit() {
        return Err(Error::TableExhausted {
            x: b,
            limit: series.limit() as u64,
        });
    }
    Ok(())
}

/// ∫_(a,b] f(y) dW(y) = Σ_{a < p <= b} f(p) · ΔW(p).
pub fn stieltjes_integral(series: &StepSeries, weight: Weight, a: f64, b: f64) -> Result<f64> {
    check_interval(series, a, b)?;
    let lo = series.count_le(a);
    let hi = series.count_le(b);
    Ok(series.jumps()[lo..hi]
        .iter()
        .map(|j| weight.eval(j.position) * j.increment)
        .sum())
}

/// ∫_{2−ε}^b f(y) dW(y): every jump up to `b`, including one at 2.
pub fn stieltjes_from_start(series: &StepSeries, weight: Weight, b: f64) -> Result<f64> {
    if !(b >= 2.0) {
        return domain(format!("upper limit must be >= 2, got {b}"));
    }
    if b > series.limit() {
        return Err(Error::TableExhausted {
            x: b,
            limit: series.limit() as u64,
        });
    }
    let hi = series.count_le(b);
    Ok(series.jumps()[..hi]
        .iter()
        .map(|j| weight.eval(j.position) * j.increment)
        .sum())
}

/// ∫_a^b W(y) dw(y), summing `W · (w(right) − w(left))` over the plateaus of W.
pub fn integrate_steps_against(series: &StepSeries, weight: Weight, a: f64, b: f64) -> Result<f64> {
    check_interval(series, a, b)?;
    let first = series.count_le(a);
    let last = series.count_le(b);
    let mut level = series.value_at_unchecked(a);
    let mut left = a;
    let mut w_left = weight.eval(a);
    let mut acc = 0.0;
    for j in &series.jumps()[first..last] {
        let w_right = weight.eval(j.position);
        acc += level * (w_right - w_left);
        level += j.increment;
        left = j.position;
        w_left = w_right;
    }
    // exact plateau value after the last jump
    level = series.value_at_unchecked(left);
    acc += level * (weight.eval(b) - w_left);
    Ok(acc)
}
