//! Algebraic identities of the Demazure operators and the Weyl action, on
//! random polynomials over every preset lattice.

mod common;

use std::sync::OnceLock;

use common::setup;
use heckendo::polyring::{CharacterLattice, CoefficientRing, GradedPolynomial, LatticePreset, Op};
use heckendo::rootsys::{RootSystem, TypeLabel};
use proptest::prelude::*;

struct Case {
    rs: RootSystem,
    lat: CharacterLattice,
}

fn cases() -> &'static [Case] {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| {
        [
            (TypeLabel::A, 2, LatticePreset::Root),
            (TypeLabel::A, 3, LatticePreset::Root),
            (TypeLabel::A, 3, LatticePreset::A3Omega2),
            (TypeLabel::D, 4, LatticePreset::Root),
            (TypeLabel::D, 4, LatticePreset::D4So8),
            (TypeLabel::D, 4, LatticePreset::D4HSpin8),
            (TypeLabel::B, 3, LatticePreset::Root),
            (TypeLabel::G, 2, LatticePreset::Root),
        ]
        .into_iter()
        .map(|(t, n, p)| {
            let (cs, lat) = setup(t, n, &[], p);
            Case {
                rs: (**cs.root_system()).clone(),
                lat,
            }
        })
        .collect()
    })
}

/// A random polynomial of degree at most 3 on case `k`, with small
/// integer coefficients.
fn poly(k: usize, seed: &[i8]) -> GradedPolynomial {
    let lat = &cases()[k].lat;
    let z = CoefficientRing::Integers;
    let mut f = GradedPolynomial::zero(lat.rank(), z);
    let mut it = seed.iter();
    for d in 0..=3 {
        let n = lat.basis(d).len();
        let coords: Vec<i64> = (0..n).map(|_| *it.next().unwrap_or(&0) as i64).collect();
        f = f.add(&lat.from_coords(&coords, d, z));
    }
    f
}

fn arb_case() -> impl Strategy<Value = (usize, Vec<i8>, usize, usize)> {
    (0..cases().len(), prop::collection::vec(-3i8..=3, 0..40), 0usize..4, 0usize..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn nil_relation((k, seed, i, _) in arb_case()) {
        let c = &cases()[k];
        let i = i % c.lat.rank();
        let f = poly(k, &seed);
        prop_assert!(c.lat.demazure(i, &c.lat.demazure(i, &f)).is_zero());
    }

    #[test]
    fn braid_and_commutation((k, seed, i, j) in arb_case()) {
        let c = &cases()[k];
        let (i, j) = (i % c.lat.rank(), j % c.lat.rank());
        prop_assume!(i != j);
        let f = poly(k, &seed);
        let m = c.rs.braid_order(i, j);
        let word = |a: usize, b: usize| -> Vec<Op> {
            (0..m).map(|t| Op::Delta(if t % 2 == 0 { a } else { b })).collect()
        };
        prop_assert_eq!(c.lat.apply_ops(&word(i, j), &f), c.lat.apply_ops(&word(j, i), &f));
    }

    #[test]
    fn twisted_leibniz((k, seed, i, _) in arb_case(), seed2 in prop::collection::vec(-3i8..=3, 0..40)) {
        let c = &cases()[k];
        let i = i % c.lat.rank();
        let (f, g) = (poly(k, &seed), poly(k, &seed2));
        let lhs = c.lat.demazure(i, &f.mul(&g));
        let rhs = c.lat.demazure(i, &f).mul(&g).add(&c.lat.reflect(i, &f).mul(&c.lat.demazure(i, &g)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reflection_absorbs_delta((k, seed, i, _) in arb_case()) {
        let c = &cases()[k];
        let i = i % c.lat.rank();
        let f = poly(k, &seed);
        let d = c.lat.demazure(i, &f);
        prop_assert_eq!(c.lat.reflect(i, &d), d.clone());
        // Delta_i s_i = -Delta_i.
        prop_assert_eq!(c.lat.demazure(i, &c.lat.reflect(i, &f)), d.neg());
    }

    #[test]
    fn delta_is_division((k, seed, i, _) in arb_case()) {
        let c = &cases()[k];
        let i = i % c.lat.rank();
        let f = poly(k, &seed);
        prop_assert_eq!(c.lat.demazure(i, &f), c.lat.demazure_by_division(i, &f));
    }

    #[test]
    fn reduction_mod_p_commutes((k, seed, i, _) in arb_case(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let c = &cases()[k];
        let i = i % c.lat.rank();
        let f = poly(k, &seed);
        let fp = CoefficientRing::PrimeField(p);
        prop_assert_eq!(c.lat.demazure(i, &f).change_ring(fp), c.lat.demazure(i, &f.change_ring(fp)));
    }

    #[test]
    fn weyl_action_is_an_action((k, seed, _, _) in arb_case(), u in prop::collection::vec(0usize..4, 0..6), v in prop::collection::vec(0usize..4, 0..6)) {
        let c = &cases()[k];
        let r = c.lat.rank();
        let u: Vec<usize> = u.into_iter().map(|x| x % r).collect();
        let v: Vec<usize> = v.into_iter().map(|x| x % r).collect();
        let f = poly(k, &seed);
        let (wu, wv) = (c.rs.from_word(&u), c.rs.from_word(&v));
        let lhs = c.lat.act(&c.rs, &c.rs.mul(&wu, &wv), &f);
        let rhs = c.lat.act(&c.rs, &wu, &c.lat.act(&c.rs, &wv, &f));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn operator_matrices_satisfy_relations_up_to_degree_six() {
    let z = CoefficientRing::Integers;
    for c in cases() {
        let r = c.lat.rank();
        for d in 0..=6 {
            for i in 0..r {
                let ii = c.lat.ops_matrix(&[Op::Delta(i), Op::Delta(i)], d, z);
                assert!(ii.iter().flatten().all(|&x| x == 0));
                for j in 0..r {
                    if i != j && c.rs.braid_order(i, j) == 2 {
                        let a = c.lat.ops_matrix(&[Op::Delta(i), Op::Delta(j)], d, z);
                        let b = c.lat.ops_matrix(&[Op::Delta(j), Op::Delta(i)], d, z);
                        assert_eq!(a, b);
                    }
                }
            }
        }
    }
}
