mod common;

use common::{brute_tables, factorize, is_prime, mangoldt, mobius};
use primeparts::exact::{
    pi_exact, psi_exact, r_exact, step_series, theta_exact, R_exact, StepKind,
};
use primeparts::sieve::{mobius_table, prime_powers, sieve_primes, sieve_primes_with, SieveConfig};
use primeparts::Execution;

const N: u64 = 10_000;

#[test]
fn sieve_matches_trial_division() {
    let want: Vec<u64> = (0..=N).filter(|&n| is_prime(n)).collect();
    assert_eq!(sieve_primes(N).unwrap().primes(), want.as_slice());
    for segment_size in [1, 7, 64, 1000] {
        for execution in [Execution::Sequential, Execution::Parallel] {
            let cfg = SieveConfig {
                segment_size,
                execution,
                ..Default::default()
            };
            assert_eq!(
                sieve_primes_with(N, &cfg).unwrap().primes(),
                want.as_slice()
            );
        }
    }
    for limit in 2..200 {
        let want: Vec<u64> = (0..=limit).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve_primes(limit).unwrap().primes(), want.as_slice());
    }
}

#[test]
fn mobius_matches_factorization() {
    let table = mobius_table(N).unwrap();
    for n in 1..=N {
        assert_eq!(table.mu(n), mobius(n), "n = {n}");
    }
}

#[test]
fn prime_powers_match_double_loop() {
    let got: Vec<(u64, u64, u32)> = prime_powers(N)
        .unwrap()
        .iter()
        .map(|pp| (pp.value, pp.p, pp.k))
        .collect();
    let want: Vec<(u64, u64, u32)> = (2..=N)
        .filter_map(|n| mangoldt(n).map(|p| (n, p, factorize(n)[0].1)))
        .collect();
    assert_eq!(got, want);
}

#[test]
fn exact_functions_match_brute_force_bitwise() {
    let primes = sieve_primes(N).unwrap();
    let brute = brute_tables(N);
    let series: Vec<_> = [StepKind::Theta, StepKind::Psi, StepKind::Mertens]
        .into_iter()
        .map(|k| step_series(k, N, &primes).unwrap())
        .collect();
    for n in 0..=N {
        let i = n as usize;
        // integers and mid-plateau points
        for x in [n as f64, n as f64 + 0.5]
            .into_iter()
            .filter(|&x| x <= N as f64)
        {
            assert_eq!(pi_exact(x, &primes).unwrap(), brute.pi[i], "pi({x})");
            assert_eq!(
                theta_exact(x, &primes).unwrap(),
                brute.theta[i],
                "theta({x})"
            );
            assert_eq!(psi_exact(x, &primes).unwrap(), brute.psi[i], "psi({x})");
            assert_eq!(r_exact(x, &primes).unwrap(), brute.r[i], "r({x})");
            assert_eq!(series[0].value_at(x).unwrap(), brute.theta[i]);
            assert_eq!(series[1].value_at(x).unwrap(), brute.psi[i]);
            assert_eq!(series[2].value_at(x).unwrap(), brute.r[i]);
            if x >= 2.0 {
                assert_eq!(R_exact(x, &primes).unwrap(), brute.r[i] - x.ln(), "R({x})");
            }
        }
    }
}
