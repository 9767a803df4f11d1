use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::stieltjes::{integrate_steps_against, Weight};
use super::Tables;
use crate::approx::quad::integrate_with_breaks;
use crate::approx::{
    dR_reg, dR_reg_series, dpi_reg, dpi_reg_series, dtheta_reg, dtheta_reg_series, li_lower2, ri,
    theta_reg, truncation_index, R_reg,
};
use crate::error::{domain, Error, Result};
use crate::exact::StepKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityId {
    /// π(x) = r(x)·x/log x − ∫ r d(y/log y)
    Eq11,
    /// π(x) = Li(x) + R(x)·x/log x − ∫ R d(y/log y) + 2
    Eq12,
    /// π(x) = θ(x)/log x − ∫ θ d(1/log y)
    Eq21,
    /// θ(x) = Σ μ(k) ψ(x^(1/k))
    Eq28,
    /// |π − Li|/(√x log x), reported as the residual against zero
    Eq8a,
}

impl IdentityId {
    pub const ALL: [IdentityId; 5] = [
        IdentityId::Eq11,
        IdentityId::Eq12,
        IdentityId::Eq21,
        IdentityId::Eq28,
        IdentityId::Eq8a,
    ];

    pub fn id(self) -> &'static str {
        match self {
            IdentityId::Eq11 => "eq11",
            IdentityId::Eq12 => "eq12",
            IdentityId::Eq21 => "eq21",
            IdentityId::Eq28 => "eq28",
            IdentityId::Eq8a => "eq8a",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|i| i.id() == s)
            .map_or_else(|| domain(format!("unknown identity {s:?}")), Ok)
    }
}

/// One evaluated identity. `tolerance_used` is the numerical tolerance that
/// entered the right-hand side (the quadrature tolerance, or 0 when both
/// sides are finite sums).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub x: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub tolerance_used: f64,
}

impl IdentityReport {
    fn new(id: IdentityId, x: f64, lhs: f64, rhs: f64, tolerance_used: f64) -> Self {
        IdentityReport {
            id,
            x,
            lhs,
            rhs,
            residual: (lhs - rhs).abs(),
            tolerance_used,
        }
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.residual <= tol
    }
}

fn require_two(x: f64, what: &str) -> Result<()> {
    if !(x >= 2.0) {
        return domain(format!("{what} needs x >= 2, got {x}"));
    }
    Ok(())
}

/// ∫_2^x W dw, zero on the degenerate interval.
fn steps_against(tables: &Tables, kind: StepKind, weight: Weight, x: f64) -> Result<f64> {
    if x == 2.0 {
        return Ok(0.0);
    }
    integrate_steps_against(tables.series(kind), weight, 2.0, x)
}

pub fn check_eq11(x: f64, tables: &Tables) -> Result<IdentityReport> {
    require_two(x, "eq11")?;
    tables.check(x)?;
    let pi = tables.value(StepKind::Pi, x)?;
    let r = tables.value(StepKind::Mertens, x)?;
    let rhs = r * x / x.ln() - steps_against(tables, StepKind::Mertens, Weight::YOverLog, x)?;
    Ok(IdentityReport::new(IdentityId::Eq11, x, pi, rhs, 0.0))
}

/// ∫_2^x log y d(y/log y) = ∫_2^x (1 − 1/log y) dy by quadrature.
fn log_against_weight(x: f64, tol: f64) -> Result<f64> {
    if x == 2.0 {
        return Ok(0.0);
    }
    let mut breaks = vec![2.0];
    while breaks.last().copied().unwrap_or(x) * 2.0 < x {
        let next = breaks[breaks.len() - 1] * 2.0;
        breaks.push(next);
    }
    breaks.push(x);
    Ok(integrate_with_breaks(|y: f64| 1.0 - 1.0 / y.ln(), &breaks, tol)?.value)
}

pub fn check_eq12(x: f64, tables: &Tables) -> Result<IdentityReport> {
    require_two(x, "eq12")?;
    tables.check(x)?;
    let cfg = tables.config();
    let pi = tables.value(StepKind::Pi, x)?;
    let big_r = tables.value(StepKind::Mertens, x)? - x.ln();
    let integral = steps_against(tables, StepKind::Mertens, Weight::YOverLog, x)?
        - log_against_weight(x, cfg.quad_tol)?;
    let rhs = li_lower2(x, cfg)? + big_r * x / x.ln() - integral + 2.0;
    Ok(IdentityReport::new(
        IdentityId::Eq12,
        x,
        pi,
        rhs,
        cfg.quad_tol,
    ))
}

pub fn check_eq21(x: f64, tables: &Tables) -> Result<IdentityReport> {
    require_two(x, "eq21")?;
    tables.check(x)?;
    let pi = tables.value(StepKind::Pi, x)?;
    let theta = tables.value(StepKind::Theta, x)?;
    let rhs = theta / x.ln() - steps_against(tables, StepKind::Theta, Weight::InvLog, x)?;
    Ok(IdentityReport::new(IdentityId::Eq21, x, pi, rhs, 0.0))
}

/// floor(n^(1/k)), exact.
pub fn integer_root(n: u64, k: u32) -> u64 {
    assert!(k >= 1, "root index must be positive");
    if k == 1 || n < 2 {
        return n;
    }
    let fits = |r: u64| r.checked_pow(k).is_some_and(|v| v <= n);
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    while r > 0 && !fits(r) {
        r -= 1;
    }
    while fits(r + 1) {
        r += 1;
    }
    r
}

pub fn check_eq28(x: f64, tables: &Tables) -> Result<IdentityReport> {
    require_two(x, "eq28")?;
    tables.check(x)?;
    let theta = tables.value(StepKind::Theta, x)?;
    // ψ only jumps at integers, so ψ(x^(1/k)) = ψ(floor(floor(x)^(1/k))).
    let n = x.floor() as u64;
    let kmax = truncation_index(x) as u64;
    if kmax > tables.mobius().limit() {
        return Err(Error::Config(format!(
            "x = {x} needs μ(n) up to {kmax}, table stops at {}",
            tables.mobius().limit()
        )));
    }
    let mut rhs = 0.0;
    for k in 1..=kmax as u32 {
        let m = tables.mobius().mu(k as u64);
        if m != 0 {
            let y = integer_root(n, k) as f64;
            rhs += m as f64 * tables.value(StepKind::Psi, y)?;
        }
    }
    Ok(IdentityReport::new(IdentityId::Eq28, x, theta, rhs, 0.0))
}

/// |π(x) − Li(x)| / (√x log x), Li integrated from 2.
pub fn vonkoch_ratio(x: f64, tables: &Tables) -> Result<f64> {
    if !(x >= 3.0) {
        return domain(format!("von Koch ratio needs x >= 3, got {x}"));
    }
    tables.check(x)?;
    let pi = tables.value(StepKind::Pi, x)?;
    let li = li_lower2(x, tables.config())?;
    Ok((pi - li).abs() / (x.sqrt() * x.ln()))
}

fn vonkoch_report(x: f64, tables: &Tables) -> Result<IdentityReport> {
    let ratio = vonkoch_ratio(x, tables)?;
    Ok(IdentityReport::new(
        IdentityId::Eq8a,
        x,
        ratio,
        0.0,
        tables.config().quad_tol,
    ))
}

pub fn check(id: IdentityId, x: f64, tables: &Tables) -> Result<IdentityReport> {
    match id {
        IdentityId::Eq11 => check_eq11(x, tables),
        IdentityId::Eq12 => check_eq12(x, tables),
        IdentityId::Eq21 => check_eq21(x, tables),
        IdentityId::Eq28 => check_eq28(x, tables),
        IdentityId::Eq8a => vonkoch_report(x, tables),
    }
}

/// Maximum of the von Koch ratio over a logarithmic grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VonKochSweep {
    pub grid: Vec<(f64, f64)>,
    pub max: f64,
    pub argmax: f64,
}

pub fn vonkoch_sweep(xmin: f64, xmax: f64, points: usize, tables: &Tables) -> Result<VonKochSweep> {
    if !(xmin >= 3.0 && xmin < xmax && points >= 2) {
        return domain(format!(
            "sweep needs 3 <= xmin < xmax and at least 2 points, got [{xmin}, {xmax}] x {points}"
        ));
    }
    let (la, lb) = (xmin.ln(), xmax.ln());
    let grid = (0..points)
        .map(|i| {
            let x = match i {
                0 => xmin,
                i if i == points - 1 => xmax,
                i => (la + (lb - la) * i as f64 / (points - 1) as f64).exp(),
            };
            vonkoch_ratio(x, tables).map(|r| (x, r))
        })
        .collect::<Result<Vec<_>>>()?;
    let (argmax, max) = grid
        .iter()
        .copied()
        .fold((xmin, f64::NEG_INFINITY), |best, p| {
            if p.1 > best.1 {
                p
            } else {
                best
            }
        });
    Ok(VonKochSweep { grid, max, argmax })
}

/// The truncated prime-power form −γ − Σ_{p^k <= x, k >= 2} log p / p^k of
/// the limit constant, together with its gap to the closed value.
pub fn r_limit_prime_power_form(x: f64, tables: &Tables) -> Result<(f64, f64)> {
    require_two(x, "prime-power form")?;
    tables.check(x)?;
    let mut sum = 0.0;
    for p in tables.primes().up_to(x.sqrt().floor() + 1.0) {
        let pf = *p as f64;
        let lp = pf.ln();
        let mut pk = pf * pf;
        while pk <= x {
            sum += lp / pk;
            pk *= pf;
        }
    }
    let value = -tables.constants().gamma - sum;
    Ok((value, value - tables.constants().r_limit))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivativeReport {
    pub x: f64,
    pub h: f64,
    /// Coefficients of π_reg' equal 1 followed by those of R_reg'.
    pub eq14_terms_equal: bool,
    /// Coefficients of θ_reg' equal those of π_reg'.
    pub eq23_terms_equal: bool,
    /// |π_reg' − (1/log x + x R_reg'/log x)|
    pub eq14_residual: f64,
    /// |θ_reg' − π_reg' log x|
    pub eq23_residual: f64,
    /// Relative deviations of the analytic derivatives from central differences.
    pub fd_pi: f64,
    pub fd_r: f64,
    pub fd_theta: f64,
}

impl DerivativeReport {
    pub fn max_fd(&self) -> f64 {
        self.fd_pi.max(self.fd_r).max(self.fd_theta)
    }
}

fn exponents_match(got: &[f64], want: impl Iterator<Item = f64>) -> bool {
    got.iter().copied().eq(want)
}

pub fn derivative_identity_check(x: f64, h: f64, tables: &Tables) -> Result<DerivativeReport> {
    if !(x > 2.0 && x.is_finite() && h > 0.0 && x - h >= 2.0) {
        return domain(format!(
            "derivative check needs x > 2, h > 0, x − h >= 2; got x={x}, h={h}"
        ));
    }
    let cfg = tables.config();
    let mu = tables.mobius();
    let consts = tables.constants();

    let dpi_s = dpi_reg_series(x, mu, cfg)?;
    let dr_s = dR_reg_series(x, mu, cfg)?;
    let dth_s = dtheta_reg_series(x, mu, cfg)?;

    let mut eq14_rhs = vec![(1u32, 1.0)];
    eq14_rhs.extend(dr_s.coefficients());
    let eq14_terms_equal = dpi_s.coefficients() == eq14_rhs
        && exponents_match(
            &dr_s.terms.iter().map(|t| t.exponent).collect::<Vec<_>>(),
            dr_s.terms.iter().map(|t| 1.0 / t.k as f64 - 2.0),
        );
    let eq23_terms_equal = dth_s.coefficients() == dpi_s.coefficients()
        && dth_s
            .terms
            .iter()
            .zip(&dpi_s.terms)
            .all(|(a, b)| a.exponent == b.exponent);

    let lx = x.ln();
    let dpi = dpi_reg(x, mu, cfg)?;
    let dr = dR_reg(x, mu, cfg)?;
    let dth = dtheta_reg(x, mu, cfg)?;
    let eq14_residual = (dpi - (1.0 / lx + x * dr / lx)).abs();
    let eq23_residual = (dth - dpi * lx).abs();

    let central =
        |f: &dyn Fn(f64) -> Result<f64>| -> Result<f64> { Ok((f(x + h)? - f(x - h)?) / (2.0 * h)) };
    let rel = |fd: f64, an: f64| (fd - an).abs() / an.abs();
    let fd_pi = rel(central(&|y| ri(y, mu, cfg))?, dpi);
    let fd_r = rel(central(&|y| R_reg(y, mu, consts, cfg))?, dr);
    let fd_theta = rel(central(&|y| theta_reg(y, mu, cfg))?, dth);

    Ok(DerivativeReport {
        x,
        h,
        eq14_terms_equal,
        eq23_terms_equal,
        eq14_residual,
        eq23_residual,
        fd_pi,
        fd_r,
        fd_theta,
    })
}
