//! Prime, prime-power and Möbius tables.
//!
//! Primes come from an odd-only segmented sieve of Eratosthenes. Each segment
//! is sieved independently against the base primes up to `√limit`, so the
//! working memory is one segment per worker regardless of `limit`. Segments
//! are concatenated in order, which keeps the output identical between the
//! parallel and sequential execution modes.

use crate::error::{domain, Error, Result};
use crate::par::{self, Execution};

/// Default number of odd candidates per segment (64 KiB of flags).
pub const DEFAULT_SEGMENT_SIZE: usize = 1 << 16;

/// Default ceiling on the estimated size of a prime table.
pub const DEFAULT_MEMORY_BUDGET: usize = 8 << 30;

#[derive(Debug, Clone, Copy)]
pub struct SieveConfig {
    /// Odd candidates per segment.
    pub segment_size: usize,
    pub execution: Execution,
    /// Estimated table size in bytes above which sieving is refused.
    pub memory_budget: usize,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            segment_size: DEFAULT_SEGMENT_SIZE,
            execution: Execution::default(),
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }
}

/// The primes in `[2, limit]`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    /// Inclusive upper bound the table was sieved to.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }

    /// Number of table primes `p` with `p <= x` (no limit check).
    pub fn count_le(&self, x: f64) -> usize {
        self.primes.partition_point(|&p| (p as f64) <= x)
    }

    /// The primes `p <= x`.
    pub fn up_to(&self, x: f64) -> &[u64] {
        &self.primes[..self.count_le(x)]
    }

    /// All prime powers `p^k <= limit` (k ≥ 1), sorted by value.
    ///
    /// `limit` must not exceed the table limit, otherwise primes would be missed.
    pub fn prime_powers(&self, limit: u64) -> Result<Vec<PrimePower>> {
        if limit < 2 {
            return domain(format!("prime powers need limit >= 2, got {limit}"));
        }
        if limit > self.limit {
            return Err(Error::TableExhausted {
                x: limit as f64,
                limit: self.limit,
            });
        }
        let primes = self.up_to(limit as f64);
        let mut out: Vec<PrimePower> = primes
            .iter()
            .map(|&p| PrimePower { p, k: 1, value: p })
            .collect();
        for &p in primes {
            let Some(mut value) = p.checked_mul(p) else {
                break;
            };
            if value > limit {
                break;
            }
            let mut k = 2;
            while value <= limit {
                out.push(PrimePower { p, k, value });
                match value.checked_mul(p) {
                    Some(v) => value = v,
                    None => break,
                }
                k += 1;
            }
        }
        out.sort_unstable_by_key(|pp| pp.value);
        Ok(out)
    }
}

/// A prime power `p^k` with `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrimePower {
    pub p: u64,
    pub k: u32,
    pub value: u64,
}

/// μ(n) for `1 <= n <= limit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusTable {
    values: Vec<i8>,
}

impl MobiusTable {
    pub fn limit(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    /// μ(n), or `None` when `n` is 0 or beyond the table.
    pub fn get(&self, n: u64) -> Option<i8> {
        if n == 0 {
            return None;
        }
        self.values.get(n as usize).copied()
    }

    /// μ(n); panics outside `1..=limit`.
    pub fn mu(&self, n: u64) -> i8 {
        self.get(n)
            .unwrap_or_else(|| panic!("μ({n}) outside table 1..={}", self.limit()))
    }
}

/// Sieves the primes up to `limit` with the default configuration.
pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    sieve_primes_with(limit, &SieveConfig::default())
}

pub fn sieve_primes_with(limit: u64, cfg: &SieveConfig) -> Result<PrimeTable> {
    if limit < 2 {
        return domain(format!("sieve limit must be >= 2, got {limit}"));
    }
    if cfg.segment_size == 0 {
        return Err(Error::Config("segment size must be positive".into()));
    }
    check_budget(limit, cfg.memory_budget)?;

    let base = simple_sieve(isqrt(limit));
    let odd_base: Vec<u64> = base.into_iter().filter(|&p| p != 2).collect();

    // odd candidates 3, 5, ..., <= limit
    let n_odd = if limit >= 3 {
        ((limit - 3) / 2 + 1) as usize
    } else {
        0
    };
    let seg = cfg.segment_size;
    let n_segments = n_odd.div_ceil(seg);

    let chunks = par::map_indexed(n_segments, cfg.execution, |s| {
        let first = s * seg;
        let len = seg.min(n_odd - first);
        sieve_odd_segment(3 + 2 * first as u64, len, &odd_base)
    });

    let mut primes = Vec::new();
    primes
        .try_reserve_exact(1 + chunks.iter().map(Vec::len).sum::<usize>())
        .map_err(|e| Error::Resource(format!("prime table for limit {limit}: {e}")))?;
    primes.push(2);
    for chunk in chunks {
        primes.extend_from_slice(&chunk);
    }
    Ok(PrimeTable { limit, primes })
}

/// Sieves the `len` odd numbers `lo, lo + 2, ...` and returns the primes among them.
fn sieve_odd_segment(lo: u64, len: usize, odd_base: &[u64]) -> Vec<u64> {
    let hi = lo + 2 * (len as u64 - 1);
    let mut composite = vec![false; len];
    for &p in odd_base {
        let sq = p * p;
        if sq > hi {
            break;
        }
        let mut start = lo.div_ceil(p) * p;
        if start % 2 == 0 {
            start += p;
        }
        let start = start.max(sq);
        let mut i = ((start - lo) / 2) as usize;
        let step = p as usize;
        while i < len {
            composite[i] = true;
            i += step;
        }
    }
    composite
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(i, _)| lo + 2 * i as u64)
        .collect()
}

/// Monolithic sieve of Eratosthenes over `[0, limit]`. Used for the base
/// primes of the segmented sieve and as its reference.
pub fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut is_prime = vec![true; n + 1];
    is_prime[0] = false;
    is_prime[1] = false;
    let mut i = 2;
    while i * i <= n {
        if is_prime[i] {
            let mut j = i * i;
            while j <= n {
                is_prime[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    is_prime
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}

/// Möbius values up to `limit` from a linear smallest-prime-factor sieve.
pub fn mobius_table(limit: u64) -> Result<MobiusTable> {
    if limit < 1 {
        return domain("Möbius table needs limit >= 1");
    }
    if limit > u32::MAX as u64 {
        return Err(Error::Config(format!(
            "Möbius table limit {limit} exceeds {}",
            u32::MAX
        )));
    }
    let n = limit as usize;
    let mut mu = vec![0i8; n + 1];
    let mut spf = vec![0u32; n + 1];
    let mut primes: Vec<u32> = Vec::new();
    mu[1] = 1;
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
            mu[i] = -1;
        }
        for &p in &primes {
            let m = i * p as usize;
            if p > spf[i] || m > n {
                break;
            }
            spf[m] = p;
            mu[m] = if p == spf[i] { 0 } else { -mu[i] };
        }
    }
    Ok(MobiusTable { values: mu })
}

/// Every prime power `p^k <= limit`, sorted by value.
pub fn prime_powers(limit: u64) -> Result<Vec<PrimePower>> {
    if limit < 2 {
        return domain(format!("prime powers need limit >= 2, got {limit}"));
    }
    sieve_primes(limit)?.prime_powers(limit)
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn check_budget(limit: u64, budget: usize) -> Result<()> {
    // π(x) < 1.25506 x / ln x for x > 1
    let lf = limit as f64;
    let est_primes = if limit < 17 {
        8.0
    } else {
        1.25506 * lf / lf.ln()
    };
    let bytes = est_primes * std::mem::size_of::<u64>() as f64;
    if bytes > budget as f64 {
        return Err(Error::Resource(format!(
            "a prime table to {limit} needs about {:.1} GiB (budget {:.1} GiB)",
            bytes / (1u64 << 30) as f64,
            budget as f64 / (1u64 << 30) as f64
        )));
    }
    Ok(())
}
