use heckendo::polyring::GradedPolynomial;
use heckendo_cli::reproduce::{demazure_convention, properties};

#[test]
fn flipped_delta_sign_fails_the_convention_row() {
    assert!(demazure_convention(|lat, i, f| lat.demazure(i, f)).passed);
    let flipped = demazure_convention(|lat, i, f| lat.demazure(i, f).neg());
    assert!(!flipped.passed);
    assert!(flipped.details[0].contains("A1: Delta_1"));
}

#[test]
fn reflection_is_not_a_demazure_operator() {
    let c = demazure_convention(|lat, i, f: &GradedPolynomial| lat.reflect(i, f));
    assert!(!c.passed);
}

#[test]
fn property_sample_with_another_seed() {
    let c = properties(2024, 5, 50);
    assert!(c.passed, "{:?}", c.details);
}
