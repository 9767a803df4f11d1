use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use primeparts::sieve::{sieve_primes_with, simple_sieve, SieveConfig};
use primeparts::Execution;

fn sieve(c: &mut Criterion) {
    let mut group = c.benchmark_group("sieve");
    group.sample_size(10);
    for limit in [1_000_000u64, 10_000_000] {
        for (name, execution) in [
            ("sequential", Execution::Sequential),
            ("parallel", Execution::Parallel),
        ] {
            let cfg = SieveConfig {
                execution,
                ..Default::default()
            };
            group.bench_with_input(BenchmarkId::new(name, limit), &limit, |b, &n| {
                b.iter(|| sieve_primes_with(black_box(n), &cfg).unwrap())
            });
        }
        group.bench_with_input(BenchmarkId::new("simple", limit), &limit, |b, &n| {
            b.iter(|| simple_sieve(black_box(n)))
        });
    }
    group.finish();
}

criterion_group!(benches, sieve);
criterion_main!(benches);
