use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use heckendo::endosolve::{endomorphism_space, idempotent_oracle_with, Parallelism};
use heckendo::polyring::{CharacterLattice, CoefficientRing, LatticePreset};
use heckendo::rootsys::{CosetSystem, RootSystem, TypeLabel};

fn case(t: TypeLabel, n: usize, par: &[usize], preset: LatticePreset) -> (CosetSystem, CharacterLattice) {
    let rs = Arc::new(RootSystem::new(t, n).unwrap());
    let lat = CharacterLattice::preset(preset, &rs).unwrap();
    (CosetSystem::new(rs, par).unwrap(), lat)
}

fn oracle(c: &mut Criterion) {
    // P^5 mod 2 has a 19-dimensional space: 2^19 candidates.
    let cases = [
        ("A5/P1 mod 2", case(TypeLabel::A, 5, &[1, 2, 3, 4], LatticePreset::Root), 2),
        ("A3/P2 mod 2", case(TypeLabel::A, 3, &[0, 2], LatticePreset::A3Omega2), 2),
    ];
    let mut group = c.benchmark_group("idempotent_oracle");
    group.sample_size(10);
    for (name, (cs, lat), p) in &cases {
        let space = endomorphism_space(cs, lat, CoefficientRing::PrimeField(*p)).unwrap();
        for (label, par) in [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Parallel)] {
            group.bench_function(format!("{name} {label}"), |b| {
                b.iter(|| idempotent_oracle_with(cs, lat, &space, 22, par).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, oracle);
criterion_main!(benches);
