//! Exact counting functions π, θ, ψ, r and R, and their jump series.
//!
//! Every function is a right-continuous step function (R up to its smooth
//! `-log x` term). Sums run in ascending order of jump position, so a value
//! is bit-reproducible and equals the prefix sums stored in a [`StepSeries`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::sieve::{isqrt, PrimeTable};

/// The step functions that can be expanded into jumps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StepKind {
    /// π(x): +1 at every prime.
    Pi,
    /// θ(x): +log p at every prime.
    Theta,
    /// ψ(x): +log p at every prime power p^k.
    Psi,
    /// r(x) = Σ log p / p, Mertens' first sum.
    Mertens,
}

impl StepKind {
    pub fn id(self) -> &'static str {
        match self {
            StepKind::Pi => "pi",
            StepKind::Theta => "theta",
            StepKind::Psi => "psi",
            StepKind::Mertens => "r",
        }
    }
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for StepKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pi" => Ok(StepKind::Pi),
            "theta" => Ok(StepKind::Theta),
            "psi" => Ok(StepKind::Psi),
            "r" => Ok(StepKind::Mertens),
            other => domain(format!("unknown step function {other:?}")),
        }
    }
}

/// Floating-point accumulation strategy for the exact sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Summation {
    /// Plain left-to-right addition.
    #[default]
    Naive,
    /// Neumaier-compensated addition, for very long sums.
    Compensated,
}

/// Running sum that honours a [`Summation`] mode.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Accumulator {
    mode: Summation,
    sum: f64,
    comp: f64,
}

impl Accumulator {
    pub(crate) fn new(mode: Summation) -> Self {
        Accumulator {
            mode,
            sum: 0.0,
            comp: 0.0,
        }
    }

    pub(crate) fn add(&mut self, term: f64) {
        match self.mode {
            Summation::Naive => self.sum += term,
            Summation::Compensated => {
                let t = self.sum + term;
                if self.sum.abs() >= term.abs() {
                    self.comp += (self.sum - t) + term;
                } else {
                    self.comp += (term - t) + self.sum;
                }
                self.sum = t;
            }
        }
    }

    pub(crate) fn value(&self) -> f64 {
        match self.mode {
            Summation::Naive => self.sum,
            Summation::Compensated => self.sum + self.comp,
        }
    }
}

/// A single discontinuity of a step function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Jump {
    pub position: f64,
    pub increment: f64,
}

/// Exact jump representation of a counting function up to `limit`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepSeries {
    kind: StepKind,
    limit: f64,
    jumps: Vec<Jump>,
    /// `cumulative[i]` is the function value on `[jumps[i].position, jumps[i+1].position)`.
    cumulative: Vec<f64>,
}

impl StepSeries {
    pub fn kind(&self) -> StepKind {
        self.kind
    }

    /// Largest x the series describes.
    pub fn limit(&self) -> f64 {
        self.limit
    }

    pub fn jumps(&self) -> &[Jump] {
        &self.jumps
    }

    pub fn len(&self) -> usize {
        self.jumps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jumps.is_empty()
    }

    /// Number of jumps at positions `<= x`.
    pub fn count_le(&self, x: f64) -> usize {
        self.jumps.partition_point(|j| j.position <= x)
    }

    /// Function value at `x` (sum of increments with position `<= x`).
    pub fn value_at(&self, x: f64) -> Result<f64> {
        check_arg(x, self.limit)?;
        Ok(self.value_at_unchecked(x))
    }

    pub(crate) fn value_at_unchecked(&self, x: f64) -> f64 {
        match self.count_le(x) {
            0 => 0.0,
            n => self.cumulative[n - 1],
        }
    }

    /// Builds a series directly from jumps; positions must be strictly increasing.
    pub fn from_jumps(kind: StepKind, limit: f64, jumps: Vec<Jump>) -> Result<Self> {
        if jumps.windows(2).any(|w| w[0].position >= w[1].position) {
            return domain("jump positions must be strictly increasing");
        }
        if jumps.last().is_some_and(|j| j.position > limit) {
            return domain("jump beyond series limit");
        }
        let mut acc = Accumulator::new(Summation::Naive);
        let cumulative = jumps
            .iter()
            .map(|j| {
                acc.add(j.increment);
                acc.value()
            })
            .collect();
        Ok(StepSeries {
            kind,
            limit,
            jumps,
            cumulative,
        })
    }
}

fn check_arg(x: f64, limit: impl Into<f64> + Copy) -> Result<()> {
    let lim: f64 = limit.into();
    if !(x >= 0.0) {
        return domain(format!("argument must be a non-negative real, got {x}"));
    }
    if x > lim {
        return Err(Error::TableExhausted {
            x,
            limit: lim as u64,
        });
    }
    Ok(())
}

fn check_table(x: f64, primes: &PrimeTable) -> Result<()> {
    if !(x >= 0.0) {
        return domain(format!("argument must be a non-negative real, got {x}"));
    }
    if x > primes.limit() as f64 {
        return Err(Error::TableExhausted {
            x,
            limit: primes.limit(),
        });
    }
    Ok(())
}

#[inline]
fn ln(n: u64) -> f64 {
    (n as f64).ln()
}

/// Prime-power jumps `(p^k, log p)` with `p^k <= x`, ascending by `p^k`.
fn prime_power_jumps(primes: &PrimeTable, x: f64) -> impl Iterator<Item = (u64, f64)> + '_ {
    let top = x.floor() as u64;
    let mut higher: Vec<(u64, u64)> = Vec::new();
    if top >= 4 {
        for &p in primes.up_to(isqrt(top) as f64) {
            let mut v = p * p;
            loop {
                higher.push((v, p));
                match v.checked_mul(p) {
                    Some(n) if n <= top => v = n,
                    _ => break,
                }
            }
        }
        higher.sort_unstable();
    }
    let mut firsts = primes.up_to(x).iter().copied().peekable();
    let mut rest = higher.into_iter().peekable();
    std::iter::from_fn(move || match (firsts.peek(), rest.peek()) {
        (Some(&p), Some(&(v, _))) if p < v => {
            firsts.next();
            Some((p, ln(p)))
        }
        (_, Some(&(v, q))) => {
            rest.next();
            Some((v, ln(q)))
        }
        (Some(&p), None) => {
            firsts.next();
            Some((p, ln(p)))
        }
        (None, None) => None,
    })
}

/// π(x): the number of primes `<= x`.
pub fn pi_exact(x: f64, primes: &PrimeTable) -> Result<u64> {
    check_table(x, primes)?;
    Ok(primes.count_le(x) as u64)
}

/// θ(x) = Σ_{p<=x} log p.
pub fn theta_exact(x: f64, primes: &PrimeTable) -> Result<f64> {
    theta_exact_with(x, primes, Summation::Naive)
}

pub fn theta_exact_with(x: f64, primes: &PrimeTable, mode: Summation) -> Result<f64> {
    check_table(x, primes)?;
    let mut acc = Accumulator::new(mode);
    primes.up_to(x).iter().for_each(|&p| acc.add(ln(p)));
    Ok(acc.value())
}

/// ψ(x) = Σ_{p^k<=x} log p.
pub fn psi_exact(x: f64, primes: &PrimeTable) -> Result<f64> {
    psi_exact_with(x, primes, Summation::Naive)
}

pub fn psi_exact_with(x: f64, primes: &PrimeTable, mode: Summation) -> Result<f64> {
    check_table(x, primes)?;
    let mut acc = Accumulator::new(mode);
    prime_power_jumps(primes, x).for_each(|(_, l)| acc.add(l));
    Ok(acc.value())
}

/// r(x) = Σ_{p<=x} log p / p.
pub fn r_exact(x: f64, primes: &PrimeTable) -> Result<f64> {
    r_exact_with(x, primes, Summation::Naive)
}

pub fn r_exact_with(x: f64, primes: &PrimeTable, mode: Summation) -> Result<f64> {
    check_table(x, primes)?;
    let mut acc = Accumulator::new(mode);
    primes
        .up_to(x)
        .iter()
        .for_each(|&p| acc.add(ln(p) / p as f64));
    Ok(acc.value())
}

/// R(x) = r(x) − log x, defined from x = 2 on.
#[allow(non_snake_case)]
pub fn R_exact(x: f64, primes: &PrimeTable) -> Result<f64> {
    if !(x >= 2.0) {
        return domain(format!("R(x) is defined for x >= 2, got {x}"));
    }
    Ok(r_exact(x, primes)? - x.ln())
}

/// Expands one of the step functions into its jumps up to `limit`.
pub fn step_series(kind: StepKind, limit: u64, primes: &PrimeTable) -> Result<StepSeries> {
    step_series_with(kind, limit, primes, Summation::Naive)
}

pub fn step_series_with(
    kind: StepKind,
    limit: u64,
    primes: &PrimeTable,
    mode: Summation,
) -> Result<StepSeries> {
    if limit > primes.limit() {
        return Err(Error::TableExhausted {
            x: limit as f64,
            limit: primes.limit(),
        });
    }
    let x = limit as f64;
    let jumps: Vec<Jump> = match kind {
        StepKind::Pi => primes
            .up_to(x)
            .iter()
            .map(|&p| Jump {
                position: p as f64,
                increment: 1.0,
            })
            .collect(),
        StepKind::Theta => primes
            .up_to(x)
            .iter()
            .map(|&p| Jump {
                position: p as f64,
                increment: ln(p),
            })
            .collect(),
        StepKind::Mertens => primes
            .up_to(x)
            .iter()
            .map(|&p| Jump {
                position: p as f64,
                increment: ln(p) / p as f64,
            })
            .collect(),
        StepKind::Psi => prime_power_jumps(primes, x)
            .map(|(v, l)| Jump {
                position: v as f64,
                increment: l,
            })
            .collect(),
    };
    let mut acc = Accumulator::new(mode);
    let cumulative = jumps
        .iter()
        .map(|j| {
            acc.add(j.increment);
            acc.value()
        })
        .collect();
    Ok(StepSeries {
        kind,
        limit: x,
        jumps,
        cumulative,
    })
}
