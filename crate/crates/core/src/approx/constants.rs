//! Euler's constant, ζ on the real axis, and the limit of R(x).
//!
//! The limit of R(x) is `−γ − Σ_p log p / (p(p − 1))`. The direct path sums
//! the primes up to a cutoff and brackets the remainder by an integral
//! comparison, yielding a certified interval. The accelerated path uses
//!
//! ```text
//! Σ_p log p / (p(p − 1)) = Σ_{n≥2} μ(n) ζ'(n)/ζ(n)
//! ```
//!
//! which converges like 2^-n and reaches double precision with ~60 terms.

use serde::Serialize;

use super::li::li_pv_estimate;
use super::ApproxConfig;
use crate::error::{domain, Error, Result};
use crate::exact::{Accumulator, Summation};
use crate::sieve::{mobius_table, PrimeTable};

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_43;

/// The published value of lim R(x), to the 17 digits it is quoted with.
pub const PUBLISHED_R_LIMIT: f64 = -1.332_582_275_733_220_87;

/// γ from the Euler–Maclaurin expansion of H_n − log n.
pub fn euler_gamma_series(n: u32) -> f64 {
    let nf = n as f64;
    let mut acc = Accumulator::new(Summation::Compensated);
    for k in (1..=n).rev() {
        acc.add(1.0 / k as f64);
    }
    let n2 = 1.0 / (nf * nf);
    // B_2k / (2k n^2k) for k = 1..5
    let tail = n2
        * (1.0 / 12.0 - n2 * (1.0 / 120.0 - n2 * (1.0 / 252.0 - n2 * (1.0 / 240.0 - n2 / 132.0))));
    acc.add(-nf.ln());
    acc.add(-0.5 / nf);
    acc.add(tail);
    acc.value()
}

/// B_2, B_4, ..., B_20.
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

const EM_N: u32 = 16;

/// (ζ(s), ζ'(s)) for real s > 1 by Euler–Maclaurin summation.
fn zeta_pair(s: f64) -> (f64, f64) {
    let n = EM_N as f64;
    let ln_n = n.ln();
    let mut z = Accumulator::new(Summation::Compensated);
    let mut dz = Accumulator::new(Summation::Compensated);
    for k in (1..EM_N).rev() {
        let kf = k as f64;
        let t = kf.powf(-s);
        z.add(t);
        dz.add(-kf.ln() * t);
    }
    let n1s = n.powf(1.0 - s);
    z.add(n1s / (s - 1.0));
    dz.add(n1s * (-ln_n / (s - 1.0) - 1.0 / ((s - 1.0) * (s - 1.0))));
    let ns = n.powf(-s);
    z.add(0.5 * ns);
    dz.add(-0.5 * ln_n * ns);

    // T_j = B_2j/(2j)! · s(s+1)...(s+2j−2) · N^(−s−2j+1)
    let mut rising = s; // s(s+1)...(s+2j−2)
    let mut dlog = 1.0 / s; // Σ 1/(s+i)
    let mut fact = 2.0; // (2j)!
    let mut npow = ns / n; // N^(−s−2j+1)
    for (j, b) in BERNOULLI.iter().enumerate() {
        if j > 0 {
            let i0 = (2 * j - 1) as f64;
            rising *= (s + i0) * (s + i0 + 1.0);
            dlog += 1.0 / (s + i0) + 1.0 / (s + i0 + 1.0);
            fact *= (2 * j + 1) as f64 * (2 * j + 2) as f64;
            npow /= n * n;
        }
        let t = b / fact * rising * npow;
        z.add(t);
        dz.add(t * (dlog - ln_n));
    }
    (z.value(), dz.value())
}

/// ζ(s) for real s > 1.
pub fn zeta(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return domain(format!("ζ(s) needs s > 1, got {s}"));
    }
    Ok(zeta_pair(s).0)
}

/// ζ'(s) for real s > 1.
pub fn zeta_prime(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return domain(format!("ζ'(s) needs s > 1, got {s}"));
    }
    Ok(zeta_pair(s).1)
}

/// −ζ'(s)/ζ(s) = Σ Λ(n) n^-s for real s > 1.
pub fn zeta_log_derivative(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return domain(format!("ζ'/ζ needs s > 1, got {s}"));
    }
    let (z, dz) = zeta_pair(s);
    Ok(-dz / z)
}

/// A value known to lie in `[lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertifiedValue {
    pub value: f64,
    pub radius: f64,
    pub lower: f64,
    pub upper: f64,
}

impl CertifiedValue {
    fn from_bounds(lower: f64, upper: f64) -> Self {
        CertifiedValue {
            value: 0.5 * (lower + upper),
            radius: 0.5 * (upper - lower),
            lower,
            upper,
        }
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }
}

/// lim R(x) from the primes up to `cfg.prime_sum_cutoff`, with a certified
/// bracket covering the prime tail and floating-point rounding.
pub fn limit_constant(primes: &PrimeTable, cfg: &ApproxConfig) -> Result<CertifiedValue> {
    let cutoff = cfg.prime_sum_cutoff;
    if cutoff < 2 {
        return Err(Error::Config("prime_sum_cutoff must be >= 2".into()));
    }
    if cutoff > primes.limit() {
        return Err(Error::Config(format!(
            "prime_sum_cutoff {cutoff} exceeds the prime table limit {}",
            primes.limit()
        )));
    }
    let mut acc = Accumulator::new(Summation::Compensated);
    let used = primes.up_to(cutoff as f64);
    for &p in used {
        let pf = p as f64;
        acc.add(pf.ln() / (pf * (pf - 1.0)));
    }
    let partial = acc.value();
    let head = -EULER_GAMMA - partial;

    // Σ_{n>P} log n / (n(n−1)) <= ∫_P^∞ P/(P−1) · log t / t² dt
    let p = cutoff as f64;
    let tail = (p.ln() + 1.0) / (p - 1.0);
    // each term carries a few ulps from log, product and quotient; Neumaier
    // summation adds at most 2 ulps of the total
    let rounding = 8.0 * f64::EPSILON * (partial + EULER_GAMMA) + 4.0 * f64::EPSILON * tail;
    Ok(CertifiedValue::from_bounds(
        head - tail - rounding,
        head + rounding,
    ))
}

/// As [`limit_constant`], failing when the certified radius exceeds `tol`.
pub fn limit_constant_within(
    primes: &PrimeTable,
    cfg: &ApproxConfig,
    tol: f64,
) -> Result<CertifiedValue> {
    let v = limit_constant(primes, cfg)?;
    if v.radius > tol {
        return Err(Error::Precision {
            requested: tol,
            achievable: v.radius,
        });
    }
    Ok(v)
}

/// lim R(x) via the Möbius-weighted ζ'/ζ series. The radius is an estimate
/// of truncation plus rounding, not a proof.
pub fn limit_constant_accelerated() -> CertifiedValue {
    const TERMS: u64 = 72;
    let mu = mobius_table(TERMS).expect("small Möbius table");
    let mut acc = Accumulator::new(Summation::Compensated);
    let mut magnitude = 0.0;
    // smallest terms first
    for n in (2..=TERMS).rev() {
        let m = mu.mu(n);
        if m == 0 {
            continue;
        }
        let l = zeta_log_derivative(n as f64).expect("n >= 2");
        acc.add(-(m as f64) * l);
        magnitude += l.abs();
    }
    let inner = acc.value();
    let value = -EULER_GAMMA - inner;
    // Σ_{n>TERMS} Λ-series <= 2 log 2 · 2^-TERMS
    let trunc = 2.0 * std::f64::consts::LN_2 * (TERMS as f64 * -std::f64::consts::LN_2).exp();
    let radius = trunc + 16.0 * f64::EPSILON * (magnitude + EULER_GAMMA);
    CertifiedValue {
        value,
        radius,
        lower: value - radius,
        upper: value + radius,
    }
}

/// The named constants every regular-part computation shares.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    pub gamma: f64,
    /// lim R(x).
    pub r_limit: f64,
    /// Certified bracket for `r_limit` from the direct prime sum.
    pub r_limit_bracket: CertifiedValue,
    /// li(x) − Li(x), i.e. the principal-value li(2).
    pub li_offset: f64,
}

impl Constants {
    /// Computes all constants. The prime sum runs to the smaller of
    /// `cfg.prime_sum_cutoff` and the table limit; the reported `r_limit`
    /// is the accelerated value, which must fall inside that bracket.
    pub fn compute(primes: &PrimeTable, cfg: &ApproxConfig) -> Result<Self> {
        cfg.validate()?;
        let direct_cfg = ApproxConfig {
            prime_sum_cutoff: cfg.prime_sum_cutoff.min(primes.limit()),
            ..*cfg
        };
        let bracket = limit_constant(primes, &direct_cfg)?;
        let accel = limit_constant_accelerated();
        if !(accel.upper >= bracket.lower && accel.lower <= bracket.upper) {
            return Err(Error::Precision {
                requested: bracket.radius,
                achievable: (accel.value - bracket.value).abs(),
            });
        }
        let li_offset = li_pv_estimate(2.0, cfg)?.value;
        Ok(Constants {
            gamma: EULER_GAMMA,
            r_limit: accel.value,
            r_limit_bracket: bracket,
            li_offset,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::sieve_primes;

    #[test]
    fn gamma_series_cross_check() {
        for n in [200, 1000, 5000] {
            let g = euler_gamma_series(n);
            assert!((g - EULER_GAMMA).abs() < 1e-12, "n={n}: {g}");
        }
    }

    #[test]
    fn zeta_known_values() {
        let pi = std::f64::consts::PI;
        assert!((zeta(2.0).unwrap() - pi * pi / 6.0).abs() < 1e-15);
        assert!((zeta(4.0).unwrap() - pi.powi(4) / 90.0).abs() < 1e-15);
        assert!((zeta(3.0).unwrap() - 1.202_056_903_159_594_3).abs() < 1e-15);
        assert!((zeta_prime(2.0).unwrap() + 0.937_548_254_315_843_75).abs() < 1e-15);
        assert!(zeta(1.0).is_err());
        assert!(zeta_prime(0.5).is_err());
    }

    #[test]
    fn log_derivative_matches_dirichlet_series() {
        // Σ Λ(n) n^-s summed directly converges fast for large s
        let primes = sieve_primes(10_000).unwrap();
        for s in [6.0, 10.0, 20.0, 40.0] {
            let mut direct = 0.0;
            for &p in primes.primes() {
                let mut q = p as f64;
                while q <= 1e4 {
                    direct += (p as f64).ln() * q.powf(-s);
                    q *= p as f64;
                }
            }
            let got = zeta_log_derivative(s).unwrap();
            assert!(
                (got - direct).abs() < 1e-15 * direct.max(1e-300) + 1e-18,
                "s={s}: {got} vs {direct}"
            );
        }
    }

    #[test]
    fn accelerated_matches_published_digits() {
        let v = limit_constant_accelerated();
        assert!((v.value - PUBLISHED_R_LIMIT).abs() <= 1e-12, "{v:?}");
        assert!(v.radius < 1e-13);
    }

    #[test]
    fn ten_prime_cutoff_bracket() {
        let primes = sieve_primes(100).unwrap();
        let cfg = ApproxConfig {
            prime_sum_cutoff: 10,
            ..Default::default()
        };
        let v = limit_constant(&primes, &cfg).unwrap();
        let l = |p: f64| p.ln();
        let head = -EULER_GAMMA - (l(2.0) / 2.0 + l(3.0) / 6.0 + l(5.0) / 20.0 + l(7.0) / 42.0);
        assert!((v.upper - head).abs() < 1e-14);
        assert!(v.contains(PUBLISHED_R_LIMIT));
        assert!(matches!(
            limit_constant_within(&primes, &cfg, 1e-3),
            Err(Error::Precision { .. })
        ));
    }

    #[test]
    fn doubling_cutoff_nests_intervals() {
        let primes = sieve_primes(1 << 17).unwrap();
        let mut prev: Option<CertifiedValue> = None;
        let mut cutoff = 4;
        while cutoff <= 1 << 17 {
            let cfg = ApproxConfig {
                prime_sum_cutoff: cutoff,
                ..Default::default()
            };
            let v = limit_constant(&primes, &cfg).unwrap();
            assert!(v.contains(PUBLISHED_R_LIMIT), "cutoff {cutoff}");
            if let Some(p) = prev {
                assert!(p.lower <= v.lower && v.upper <= p.upper, "cutoff {cutoff}");
            }
            prev = Some(v);
            cutoff *= 2;
        }
    }

    #[test]
    fn cutoff_beyond_table_is_rejected() {
        let primes = sieve_primes(100).unwrap();
        let cfg = ApproxConfig {
            prime_sum_cutoff: 1000,
            ..Default::default()
        };
        assert!(matches!(
            limit_constant(&primes, &cfg),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn constants_bundle() {
        let primes = sieve_primes(100_000).unwrap();
        let c = Constants::compute(&primes, &ApproxConfig::default()).unwrap();
        assert!(c.r_limit_bracket.contains(c.r_limit));
        assert!((c.li_offset - 1.045_163_780_117_492_8).abs() < 1e-10);
        assert_eq!(c.gamma, EULER_GAMMA);
    }
}
