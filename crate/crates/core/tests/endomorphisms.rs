mod common;

use common::*;
use heckendo::endosolve::*;
use heckendo::polyring::{CoefficientRing, LatticePreset};

fn first_column_dim(cs: &heckendo::rootsys::CosetSystem, lat: &heckendo::polyring::CharacterLattice, p: u64) -> usize {
    endomorphism_space(cs, lat, CoefficientRing::prime_field(p).unwrap()).unwrap().dim()
}

#[test]
fn dimension_matches_full_matrix_solve() {
    for (cs, lat, p) in [
        (projective(2).0, projective(2).1, 2),
        (projective(3).0, projective(3).1, 3),
        (klein().0, klein().1, 2),
        (d4(LatticePreset::Root).0, d4(LatticePreset::Root).1, 2),
        (d4(LatticePreset::D4So8).0, d4(LatticePreset::D4So8).1, 2),
        (d4(LatticePreset::D4HSpin8).0, d4(LatticePreset::D4HSpin8).1, 2),
    ] {
        let full = full_matrix_endos(&cs, &lat, p);
        assert_eq!(first_column_dim(&cs, &lat, p), full.dim(), "{}", lat.name());
        let space = endomorphism_space(&cs, &lat, CoefficientRing::prime_field(p).unwrap()).unwrap();
        let report = diagonal_congruence(&cs, &lat, &space).unwrap();
        assert_eq!(report.algebra_dim, full.block_image_dim(p), "{}", lat.name());
    }
}

use std::sync::OnceLock;

use heckendo::nilhecke::{ModuleElement, SchubertFunctions};
use heckendo::localized::membership_check;
use heckendo::rootsys::{CosetSystem, TypeLabel};
use heckendo::polyring::CharacterLattice;
use proptest::prelude::*;

struct Preset {
    cs: CosetSystem,
    lat: CharacterLattice,
    space: EndomorphismSpace,
    p: u64,
}

fn presets() -> &'static [Preset] {
    static P: OnceLock<Vec<Preset>> = OnceLock::new();
    P.get_or_init(|| {
        [
            (projective(3), 2),
            (projective(4), 5),
            (klein(), 2),
            (d4(LatticePreset::Root), 2),
            (d4(LatticePreset::D4So8), 2),
            (d4(LatticePreset::D4HSpin8), 2),
        ]
        .into_iter()
        .map(|((cs, lat), p)| {
            let space = endomorphism_space(&cs, &lat, CoefficientRing::PrimeField(p)).unwrap();
            Preset { cs, lat, space, p }
        })
        .collect()
    })
}

fn params(pr: &Preset, seed: &[u64]) -> Vec<i64> {
    (0..pr.space.dim()).map(|k| (seed.get(k).copied().unwrap_or(0) % pr.p) as i64).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn propagated_matrices_are_homomorphisms(k in 0usize..6, seed in prop::collection::vec(0u64..1000, 60)) {
        let pr = &presets()[k];
        let m = pr.space.instance(&pr.lat, &params(pr, &seed));
        prop_assert!(m.check_degrees(&pr.cs).is_ok());
        prop_assert!(m.check_homomorphism(&pr.cs, &pr.lat).is_ok());
    }

    #[test]
    fn composition_is_a_homomorphism(k in 0usize..6, s1 in prop::collection::vec(0u64..1000, 60), s2 in prop::collection::vec(0u64..1000, 60)) {
        let pr = &presets()[k];
        let a = pr.space.instance(&pr.lat, &params(pr, &s1));
        let b = pr.space.instance(&pr.lat, &params(pr, &s2));
        let ab = a.compose(&b);
        prop_assert!(ab.check_homomorphism(&pr.cs, &pr.lat).is_ok());
        // (ab)(xi_w) = a(b(xi_w)).
        let ring = CoefficientRing::PrimeField(pr.p);
        for w in 0..pr.cs.len() {
            let e = ModuleElement::basis(&pr.cs, &pr.lat, ring, w);
            prop_assert_eq!(ab.apply(&e), a.apply(&b.apply(&e)));
        }
    }
}

#[test]
fn identity_parameters_give_the_identity() {
    for pr in presets() {
        let x = pr.space.identity_params();
        let m = pr.space.instance(&pr.lat, &x);
        assert_eq!(m, EndomorphismMatrix::identity(&pr.cs, &pr.lat, CoefficientRing::PrimeField(pr.p)));
    }
}

#[test]
fn oracle_agrees_between_schedules_and_refines_classes() {
    for pr in presets() {
        if !within_cap(pr.p, pr.space.dim(), DEFAULT_ORACLE_CAP) {
            continue;
        }
        let seq = idempotent_oracle_with(&pr.cs, &pr.lat, &pr.space, DEFAULT_ORACLE_CAP, Parallelism::Sequential).unwrap();
        let par = idempotent_oracle_with(&pr.cs, &pr.lat, &pr.space, DEFAULT_ORACLE_CAP, Parallelism::Parallel).unwrap();
        assert_eq!(seq.all_params, par.all_params);
        assert!(seq.idempotent_count >= 2);
        let report = diagonal_congruence(&pr.cs, &pr.lat, &pr.space).unwrap();
        let classes: Vec<Vec<usize>> = report
            .classes
            .iter()
            .map(|c| c.members.iter().map(|m| (0..pr.cs.len()).find(|&k| pr.cs.rep_name(k) == *m).unwrap()).collect())
            .collect();
        assert!(seq.refines(&classes), "{}", pr.lat.name());
        // Every idempotent found really is one.
        for x in seq.all_params.iter().take(16) {
            let x: Vec<i64> = x.iter().map(|&c| c as i64).collect();
            let m = pr.space.instance(&pr.lat, &x);
            assert_eq!(m.compose(&m), m);
        }
    }
}

#[test]
fn oracle_refuses_above_the_cap() {
    let pr = &presets()[5];
    let err = idempotent_oracle(&pr.cs, &pr.lat, &pr.space, 10).unwrap_err();
    assert!(err.to_string().contains("dimension 30"), "{err}");
}

/// Projective spaces: `c_{i,i-1} = sum b_k alpha_k` with
/// `b_k = k b_1 = (n+1-k) b_n` around `i`, and the diagonal step
/// `c_{i,i} - c_{i-1,i-1} = Delta_i(c_{i,i-1}) = b_1 + b_n`.
#[test]
fn projective_space_obstruction() {
    let z = CoefficientRing::Integers;
    for n in [2usize, 3, 4, 5, 6] {
        let (cs, lat) = projective(n);
        let space = endomorphism_space(&cs, &lat, z).unwrap();
        for k in 0..space.dim() {
            let mut x = vec![0i64; space.dim()];
            x[k] = 1;
            let m = space.instance(&lat, &x);
            for i in 1..=n {
                let c = &m.entries[i][i - 1];
                let b = if c.is_zero() { vec![0; n] } else { lat.to_coords(c, 1) };
                for t in 1..=n {
                    let expect = if t <= i { t as i64 * b[0] } else { (n + 1 - t) as i64 * b[n - 1] };
                    assert_eq!(b[t - 1], expect, "A{n}, c_({i},{}) = {b:?}", i - 1);
                }
                let step = m.entries[i][i].constant_term() - m.entries[i - 1][i - 1].constant_term();
                assert_eq!(step, b[0] + b[n - 1], "A{n}, i = {i}");
                assert_eq!(lat.demazure(i - 1, c).constant_term(), b[0] + b[n - 1]);
                let q = n as i64 + 1;
                if let Some(p) = [2i64, 3, 5, 7].into_iter().find(|p| {
                    let mut r = q;
                    while r % p == 0 {
                        r /= p;
                    }
                    r == 1
                }) {
                    assert_eq!((b[0] + b[n - 1]).rem_euclid(p), 0, "A{n}");
                }
            }
        }
    }
}

/// Columns of integral endomorphisms, read as fixed point functions, satisfy
/// the divisibility criterion.
#[test]
fn endomorphism_columns_pass_membership() {
    let z = CoefficientRing::Integers;
    for (cs, lat) in [projective(2), projective(3), klein(), setup(TypeLabel::A, 3, &[1, 2], LatticePreset::Root)] {
        let space = endomorphism_space(&cs, &lat, z).unwrap();
        let sf = SchubertFunctions::new(&cs, &lat).unwrap();
        for k in 0..space.dim() {
            let mut x = vec![0i64; space.dim()];
            x[k] = 1;
            x[0] = -1;
            let m = space.instance(&lat, &x);
            m.check_homomorphism(&cs, &lat).unwrap();
            for w in 0..cs.len() {
                let f = sf.to_function(&m.column(w));
                assert!(membership_check(&cs, &lat, &f, false).passed);
                assert_eq!(sf.from_function(&f).unwrap(), m.column(w));
            }
        }
    }
}

#[test]
fn symbolic_matrix_matches_known_entries() {
    let (cs, lat) = klein();
    let m = symbolic_matrix(&cs, &lat);
    let s2 = (0..cs.len()).find(|&k| cs.rep_name(k) == "s2").unwrap();
    assert_eq!(m.entries[s2][s2].format(&cs), "a_1 + D[2,1,3](a_132)");
    let (cs, lat) = d4(LatticePreset::Root);
    let m = symbolic_matrix(&cs, &lat);
    let s1 = (0..cs.len()).find(|&k| cs.rep_name(k) == "s1").unwrap();
    assert_eq!(m.entries[s1][s1].format(&cs), "a_1 + D[1,2,3,4,2](a_23421)");
}
