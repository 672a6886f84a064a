mod common;

use common::*;
use heckendo::endosolve::EndomorphismMatrix;
use heckendo::localized::*;
use heckendo::nilhecke::{point_class, FixedPointFunction, ModuleElement, SchubertFunctions};
use heckendo::polyring::{CharacterLattice, CoefficientRing, GradedPolynomial, LatticePreset};
use heckendo::rootsys::{CosetSystem, TypeLabel};
use proptest::prelude::*;

const Z: CoefficientRing = CoefficientRing::Integers;

fn a2() -> (CosetSystem, CharacterLattice) {
    setup(TypeLabel::A, 2, &[1], LatticePreset::Root)
}

fn cases() -> Vec<(CosetSystem, CharacterLattice)> {
    vec![
        a2(),
        projective(3),
        klein(),
        setup(TypeLabel::A, 3, &[1, 2], LatticePreset::Root),
        setup(TypeLabel::B, 2, &[1], LatticePreset::Root),
        d4(LatticePreset::D4HSpin8),
    ]
}

/// Product over the positive roots of `alpha^2`, with the sign `(-1)^N`.
fn square_product(cs: &CosetSystem, lat: &CharacterLattice, levi: bool) -> GradedPolynomial {
    let rs = cs.root_system();
    let inside: Vec<usize> = cs.parabolic_roots();
    let mut f = GradedPolynomial::one(lat.rank(), Z);
    let mut sign = 1;
    for k in 0..rs.num_positive() {
        if inside.contains(&k) == levi {
            let a = lat.root_form(&rs.roots()[k], Z);
            f = f.mul(&a).mul(&a);
            sign = -sign;
        }
    }
    f.scale(sign)
}

#[test]
fn torsion_products_are_signed_squares() {
    for (cs, lat) in cases() {
        let t = TorsionProducts::new(&cs, &lat, Z);
        assert_eq!(t.x_p, square_product(&cs, &lat, true));
        assert_eq!(t.x_pi_over_p, square_product(&cs, &lat, false));
        assert_eq!(t.x_pi, t.x_p.mul(&t.x_pi_over_p));
    }
    let (cs, lat) = a2();
    let t = TorsionProducts::new(&cs, &lat, Z);
    let ab = lat.parse("a1 + a2", Z).unwrap();
    assert_eq!(t.x_pi, lat.parse("-a1^2*a2^2", Z).unwrap().mul(&ab.pow(2)));
}

#[test]
fn trivial_idempotents_solve_both_systems() {
    for (cs, lat) in cases().into_iter().take(4) {
        let t = TorsionProducts::new(&cs, &lat, Z);
        let plain = convolution_idempotent_system(&cs, &lat);
        let cleared = cleared_system(&cs, &lat);
        let k = plain.unknowns.len();
        assert_eq!(k, cs.double_cosets().len());
        let zero = GradedPolynomial::zero(lat.rank(), Z);
        let one = GradedPolynomial::one(lat.rank(), Z);
        let id = cs.block_of(0);
        let unit: Vec<GradedPolynomial> = (0..k).map(|b| if b == id { one.clone() } else { zero.clone() }).collect();
        let nothing = vec![zero.clone(); k];
        assert!(plain.failures(&cs, &lat, &unit).is_empty());
        assert!(plain.failures(&cs, &lat, &nothing).is_empty());
        let cleared_unit: Vec<GradedPolynomial> = unit.iter().map(|a| a.mul(&t.x_pi_over_p)).collect();
        assert!(cleared.failures(&cs, &lat, &cleared_unit).is_empty());
        assert!(cleared.failures(&cs, &lat, &nothing).is_empty());
        // With the opposite sign on the right the identity would not solve it.
        let flipped: Vec<GradedPolynomial> = cleared_unit.iter().map(|b| b.scale(-1)).collect();
        assert!(!cleared.failures(&cs, &lat, &flipped).is_empty());
        // Twice the identity is not idempotent.
        let two: Vec<GradedPolynomial> = unit.iter().map(|a| a.scale(2)).collect();
        assert!(!plain.failures(&cs, &lat, &two).is_empty());
    }
}

#[test]
fn identities_are_homogeneous() {
    for (cs, lat) in cases().into_iter().take(4) {
        let t = TorsionProducts::new(&cs, &lat, Z);
        let sys = cleared_system(&cs, &lat);
        let deg = t.x_pi.degree().unwrap();
        let bdeg = t.x_pi_over_p.degree().unwrap();
        for id in &sys.identities {
            for term in id.lhs.iter().chain(&id.rhs) {
                // Every unknown b has the degree of x_{Pi/P}.
                let d = term.coeff.degree().unwrap() + term.factors.len() * bdeg;
                assert_eq!(d, deg + bdeg, "{}", id.class);
            }
        }
    }
}

#[test]
fn invariance_constraints_for_projective_space() {
    for n in 2..=4 {
        let (cs, _) = projective(n);
        let inv = invariance_constraints(&cs);
        // W_P \ W / W_P has two elements for P^n.
        assert_eq!(inv.unknowns.len(), 2);
        assert_eq!(inv.entries[0].unknown, cs.block_of(0));
        assert!(inv.entries[0].word.is_empty());
        for w in 1..cs.len() {
            assert_ne!(inv.entries[w].unknown, inv.entries[0].unknown);
        }
    }
}

#[test]
fn a2_membership_failure() {
    let (cs, lat) = a2();
    let mut f = FixedPointFunction::zero(&cs, &lat, Z);
    f.values[0] = lat.simple_root(0, Z);
    let broad = membership_check(&cs, &lat, &f, false);
    assert!(!broad.passed);
    // The pair (1, s_{a+b}) fails, seen once from each end.
    assert_eq!(broad.failures.len(), 2);
    assert!(broad.failures.iter().any(|f| f.rep == cs.rep_name(0) && f.root == "a1 + a2"));
    // Changing the value by a multiple of alpha + beta repairs it.
    f.values[0] = lat.parse("a1", Z).unwrap().mul(&lat.parse("a1 + a2", Z).unwrap());
    assert!(membership_check(&cs, &lat, &f, false).passed);
    assert!(membership_check(&cs, &lat, &point_class(&cs, &lat, Z), false).passed);
}

#[test]
fn permutation_endomorphisms() {
    for (cs, lat) in cases() {
        let ends = perm_module_endos(&cs, &lat, Z).unwrap();
        assert_eq!(ends.len(), cs.double_cosets().len());
        for m in &ends {
            m.check_degrees(&cs).unwrap();
            m.check_homomorphism(&cs, &lat).unwrap();
        }
        let id = EndomorphismMatrix::identity(&cs, &lat, Z);
        assert_eq!(ends[cs.block_of(0)], id);
    }
}

fn random_element(cs: &CosetSystem, lat: &CharacterLattice, seed: &[i64]) -> ModuleElement {
    let mut e = ModuleElement::zero(cs, lat, Z);
    for w in 0..cs.len() {
        let c = seed[w % seed.len()];
        let k = seed[(w + 1) % seed.len()].unsigned_abs() as usize % lat.rank();
        let coef = lat.simple_root(k, Z).scale(c).add(&GradedPolynomial::one(lat.rank(), Z).scale(c + 1));
        e = e.add(&ModuleElement::basis(cs, lat, Z, w).mul_poly(&coef));
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn schubert_functions_satisfy_membership(k in 0usize..6, seed in prop::collection::vec(-4i64..5, 1..8)) {
        let (cs, lat) = cases().swap_remove(k);
        let sf = SchubertFunctions::new(&cs, &lat).unwrap();
        let e = random_element(&cs, &lat, &seed);
        let f = sf.to_function(&e);
        prop_assert!(membership_check(&cs, &lat, &f, false).passed);
        prop_assert_eq!(sf.from_function(&f).unwrap(), e);
    }
}
