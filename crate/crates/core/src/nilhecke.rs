//! The module `D_P^*`: Schubert classes `xi_w` indexed by `W^P`, the action
//! of the Demazure elements `X_j` on them, and fixed-point functions on
//! `W/W_P` with the twisted Weyl group action.

use crate::error::{Error, Result};
use crate::localized::TorsionProducts;
use crate::polyring::{CharacterLattice, CoefficientRing, GradedPolynomial};
use crate::rootsys::{CosetSystem, WeylElement};

/// `sum_w a_w xi_w`, stored densely in the order of `CosetSystem::reps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement {
    pub coeffs: Vec<GradedPolynomial>,
}

impl ModuleElement {
    pub fn zero(cs: &CosetSystem, lat: &CharacterLattice, ring: CoefficientRing) -> Self {
        ModuleElement {
            coeffs: vec![GradedPolynomial::zero(lat.rank(), ring); cs.len()],
        }
    }

    /// The Schubert class `xi_w` for the rep with index `w`.
    pub fn basis(cs: &CosetSystem, lat: &CharacterLattice, ring: CoefficientRing, w: usize) -> Self {
        let mut e = Self::zero(cs, lat, ring);
        e.coeffs[w] = GradedPolynomial::one(lat.rank(), ring);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        ModuleElement {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ModuleElement {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn mul_poly(&self, q: &GradedPolynomial) -> Self {
        ModuleElement {
            coeffs: self.coeffs.iter().map(|a| a.mul(q)).collect(),
        }
    }
}

/// `X_j (.) e`. Each coefficient is commuted past `X_j` with
/// `X_j a = s_j(a) X_j + Delta_j(a)`, then `X_j (.) xi_v = xi_{s_j v}` when
/// `s_j v` is a longer element of `W^P` and zero otherwise.
pub fn x_act(cs: &CosetSystem, lat: &CharacterLattice, j: usize, e: &ModuleElement) -> ModuleElement {
    let mut out: Vec<GradedPolynomial> = e.coeffs.iter().map(|a| lat.demazure(j, a)).collect();
    for (v, a) in e.coeffs.iter().enumerate() {
        if let Some(u) = cs.up(v, j) {
            if !a.is_zero() {
                out[u] = out[u].add(&lat.reflect(j, a));
            }
        }
    }
    ModuleElement { coeffs: out }
}

/// A function `W/W_P -> S`, i.e. `sum_w b_w f_w` in the standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointFunction {
    pub values: Vec<GradedPolynomial>,
}

impl FixedPointFunction {
    pub fn zero(cs: &CosetSystem, lat: &CharacterLattice, ring: CoefficientRing) -> Self {
        FixedPointFunction {
            values: vec![GradedPolynomial::zero(lat.rank(), ring); cs.len()],
        }
    }

    pub fn constant(cs: &CosetSystem, lat: &CharacterLattice, c: GradedPolynomial) -> Self {
        let _ = lat;
        FixedPointFunction {
            values: vec![c; cs.len()],
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        FixedPointFunction {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        FixedPointFunction {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn mul_poly(&self, q: &GradedPolynomial) -> Self {
        FixedPointFunction {
            values: self.values.iter().map(|a| a.mul(q)).collect(),
        }
    }
}

/// `(w . f)(u) = w(f(w^{-1} u))`.
pub fn weyl_act(
    cs: &CosetSystem,
    lat: &CharacterLattice,
    w: &WeylElement,
    f: &FixedPointFunction,
) -> FixedPointFunction {
    let rs = cs.root_system();
    let winv = rs.inverse(w);
    let word = rs.reduced_word(w);
    let values = (0..cs.len())
        .map(|u| {
            let src = cs.class_of(&rs.mul(&winv, cs.rep(u)));
            lat.act_word(&word, &f.values[src])
        })
        .collect();
    FixedPointFunction { values }
}

/// `(X_j . f)(u) = (f(u) - s_j(f(s_j u))) / alpha_j`, defined when every
/// quotient is a polynomial. Integer coefficients only.
pub fn x_act_function(
    cs: &CosetSystem,
    lat: &CharacterLattice,
    j: usize,
    f: &FixedPointFunction,
) -> Option<FixedPointFunction> {
    let rs = cs.root_system();
    let alpha = lat.simple_root(j, CoefficientRing::Integers);
    let values = (0..cs.len())
        .map(|u| {
            let su = cs.class_of(&rs.left_mul_simple(j, cs.rep(u)));
            let diff = f.values[u].sub(&lat.reflect(j, &f.values[su]));
            diff.div_exact(&alpha)
        })
        .collect::<Option<Vec<_>>>()?;
    Some(FixedPointFunction { values })
}

/// `[pt] = x_{Pi/P} f_1`.
pub fn point_class(cs: &CosetSystem, lat: &CharacterLattice, ring: CoefficientRing) -> FixedPointFunction {
    let t = TorsionProducts::new(cs, lat, ring);
    let mut f = FixedPointFunction::zero(cs, lat, ring);
    f.values[0] = t.x_pi_over_p;
    f
}

/// The Schubert classes `xi_w` written as fixed-point functions, generated
/// from the tangent Euler class at the base point by the operators `X_j`
/// along the weak Bruhat edges. Used to move between the two bases.
#[derive(Clone, Debug)]
pub struct SchubertFunctions {
    pub xi: Vec<FixedPointFunction>,
}

impl SchubertFunctions {
    pub fn new(cs: &CosetSystem, lat: &CharacterLattice) -> Result<Self> {
        let rs = cs.root_system();
        let z = CoefficientRing::Integers;
        let parabolic_roots = cs.parabolic_roots();
        let mut euler = GradedPolynomial::one(lat.rank(), z);
        for k in 0..rs.num_positive() {
            if !parabolic_roots.contains(&k) {
                euler = euler.mul(&lat.root_form(&rs.roots()[k], z).neg());
            }
        }
        let mut base = FixedPointFunction::zero(cs, lat, z);
        base.values[0] = euler;
        let mut xi: Vec<Option<FixedPointFunction>> = vec![None; cs.len()];
        xi[0] = Some(base);
        for edge in cs.hasse_edges() {
            let src = xi[edge.from].clone().expect("edges are listed in length order");
            let img = x_act_function(cs, lat, edge.generator, &src).ok_or_else(|| {
                Error::Invariant("X_j applied to a Schubert class left the polynomial ring".into())
            })?;
            match &xi[edge.to] {
                None => xi[edge.to] = Some(img),
                Some(prev) if *prev == img => {}
                Some(_) => {
                    return Err(Error::Invariant(format!(
                        "two paths to {} give different Schubert classes",
                        cs.rep_name(edge.to)
                    )))
                }
            }
        }
        Ok(SchubertFunctions {
            xi: xi.into_iter().map(|x| x.expect("W^P is connected")).collect(),
        })
    }

    /// `sum_v a_v xi_v` as a function. Integer coefficients only.
    pub fn to_function(&self, e: &ModuleElement) -> FixedPointFunction {
        let n = self.xi.len();
        let rank = self.xi[0].values[0].nvars();
        let z = CoefficientRing::Integers;
        let mut out = FixedPointFunction {
            values: vec![GradedPolynomial::zero(rank, z); n],
        };
        for (a, xi) in e.coeffs.iter().zip(&self.xi) {
            if !a.is_zero() {
                out = out.add(&xi.mul_poly(a));
            }
        }
        out
    }

    /// Inverse of [`to_function`](Self::to_function); `None` if `f` is not
    /// an integral combination of Schubert classes.
    pub fn from_function(&self, f: &FixedPointFunction) -> Option<ModuleElement> {
        let n = self.xi.len();
        let mut rest = f.clone();
        let mut coeffs = vec![GradedPolynomial::zero(f.values[0].nvars(), f.values[0].ring()); n];
        // xi_v vanishes at every class not below v, so the system is
        // triangular when solved from the longest rep down.
        for u in (0..n).rev() {
            let c = rest.values[u].div_exact(&self.xi[u].values[u])?;
            if !c.is_zero() {
                rest = rest.sub(&self.xi[u].mul_poly(&c));
            }
            coeffs[u] = c;
        }
        if rest.values.iter().all(|v| v.is_zero()) {
            Some(ModuleElement { coeffs })
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{RootSystem, TypeLabel};
    use std::sync::Arc;

    fn klein() -> (CosetSystem, CharacterLattice) {
        let rs = Arc::new(RootSystem::new(TypeLabel::A, 3).unwrap());
        let lat = CharacterLattice::preset(crate::polyring::LatticePreset::A3Omega2, &rs).unwrap();
        (CosetSystem::new(rs, &[0, 2]).unwrap(), lat)
    }

    #[test]
    fn x_act_follows_hasse_edges() {
        let (cs, lat) = klein();
        let z = CoefficientRing::Integers;
        let xi1 = ModuleElement::basis(&cs, &lat, z, 0);
        let out = x_act(&cs, &lat, 1, &xi1);
        let s2 = cs.index_of(&cs.root_system().simple_reflection(1)).unwrap();
        assert_eq!(out, ModuleElement::basis(&cs, &lat, z, s2));
        assert!(x_act(&cs, &lat, 0, &xi1).is_zero());
    }

    #[test]
    fn x_act_on_scaled_class() {
        let rs = Arc::new(RootSystem::new(TypeLabel::A, 2).unwrap());
        let lat = CharacterLattice::root_lattice(&rs).unwrap();
        let cs = CosetSystem::new(rs, &[1]).unwrap();
        let z = CoefficientRing::Integers;
        let e = ModuleElement::basis(&cs, &lat, z, 0).mul_poly(&lat.simple_root(0, z));
        let out = x_act(&cs, &lat, 0, &e);
        assert_eq!(lat.format(&out.coeffs[0]), "2");
        assert_eq!(lat.format(&out.coeffs[1]), "-a1");
    }

    #[test]
    fn weyl_action_moves_support() {
        let rs = Arc::new(RootSystem::new(TypeLabel::A, 2).unwrap());
        let lat = CharacterLattice::root_lattice(&rs).unwrap();
        let cs = CosetSystem::new(rs.clone(), &[1]).unwrap();
        let z = CoefficientRing::Integers;
        let mut f = FixedPointFunction::zero(&cs, &lat, z);
        f.values[0] = lat.var(1, z);
        let g = weyl_act(&cs, &lat, &rs.simple_reflection(0), &f);
        assert!(g.values[0].is_zero());
        assert_eq!(lat.format(&g.values[1]), "a1 + a2");
        assert_eq!(weyl_act(&cs, &lat, &rs.identity(), &f), f);
    }

    #[test]
    fn schubert_functions_round_trip() {
        let (cs, lat) = klein();
        let sf = SchubertFunctions::new(&cs, &lat).unwrap();
        let z = CoefficientRing::Integers;
        for w in 0..cs.len() {
            let e = ModuleElement::basis(&cs, &lat, z, w).mul_poly(&lat.var(2, z));
            let f = sf.to_function(&e);
            assert_eq!(sf.from_function(&f), Some(e));
        }
    }

    #[test]
    fn x_act_agrees_with_functions() {
        let (cs, lat) = klein();
        let sf = SchubertFunctions::new(&cs, &lat).unwrap();
        let z = CoefficientRing::Integers;
        for w in 0..cs.len() {
            let e = ModuleElement::basis(&cs, &lat, z, w).mul_poly(&lat.parse("a1*w2 - a2", z).unwrap());
            for j in 0..3 {
                let lhs = sf.to_function(&x_act(&cs, &lat, j, &e));
                let rhs = x_act_function(&cs, &lat, j, &sf.to_function(&e)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
