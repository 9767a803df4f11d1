//! Brute-force oracles shared by the integration tests.

#![allow(dead_code)]

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Prime factorization by trial division, as (prime, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn mobius(n: u64) -> i8 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Λ(n): log p when n = p^k, else 0.
pub fn mangoldt(n: u64) -> Option<u64> {
    match factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

/// π, θ, ψ and r at every integer 0..=n, summed in ascending order.
pub struct BruteTables {
    pub pi: Vec<u64>,
    pub theta: Vec<f64>,
    pub psi: Vec<f64>,
    pub r: Vec<f64>,
}

pub fn brute_tables(n: u64) -> BruteTables {
    let mut t = BruteTables {
        pi: vec![0],
        theta: vec![0.0],
        psi: vec![0.0],
        r: vec![0.0],
    };
    let (mut pi, mut theta, mut psi, mut r) = (0u64, 0.0f64, 0.0f64, 0.0f64);
    for m in 1..=n {
        if is_prime(m) {
            pi += 1;
            theta += (m as f64).ln();
            r += (m as f64).ln() / m as f64;
        }
        if let Some(p) = mangoldt(m) {
            psi += (p as f64).ln();
        }
        t.pi.push(pi);
        t.theta.push(theta);
        t.psi.push(psi);
        t.r.push(r);
    }
    t
}
