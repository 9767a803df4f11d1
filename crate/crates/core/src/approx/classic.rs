use crate::error::{domain, Result};
use crate::sieve::PrimeTable;

/// Legendre's fitted constant.
pub const LEGENDRE_A: f64 = 1.08366;

/// x / (log x − a).
pub fn legendre_approx(x: f64, a: f64) -> Result<f64> {
    if !(x > 0.0) || !a.is_finite() {
        return domain(format!(
            "Legendre approximation needs x > 0 and finite A, got x={x}, A={a}"
        ));
    }
    let denom = x.ln() - a;
    if !(denom > 0.0) {
        return domain(format!("log x <= A ({} <= {a})", x.ln()));
    }
    Ok(x / denom)
}

/// x / log x.
pub fn pnt_approx(x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return domain(format!("x / log x needs x > 1, got {x}"));
    }
    Ok(x / x.ln())
}

/// Partial Dirichlet sum Σ_{n<=nterms} n^-s and the Euler product
/// 1/Π_p (1 − p^-s) over every prime in the table.
pub fn euler_product_partial(s: f64, primes: &PrimeTable, nterms: u64) -> Result<(f64, f64)> {
    if !(s > 1.0) {
        return domain(format!("Euler product needs s > 1, got {s}"));
    }
    // smallest terms first
    let sum: f64 = (1..=nterms).rev().map(|n| (n as f64).powf(-s)).sum();
    let product: f64 = primes.iter().map(|p| 1.0 - (p as f64).powf(-s)).product();
    Ok((sum, 1.0 / product))
}
