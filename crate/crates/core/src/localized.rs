//! Endomorphisms of the localized module `Q_{W/W_P}^*` in the fixed point
//! basis `f_w`: invariance under `W_P`, the convolution equations for
//! idempotents, their cleared polynomial form with divisibility conditions,
//! the GKM membership test and the permutation module endomorphisms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::endosolve::EndomorphismMatrix;
use crate::error::{Error, Result};
use crate::nilhecke::{FixedPointFunction, ModuleElement, SchubertFunctions};
use crate::polyring::{CharacterLattice, CoefficientRing, GradedPolynomial};
use crate::rootsys::{CosetSystem, RootSystem, WeylElement};

/// Products of the linear forms `x_alpha = alpha` over all roots, over the
/// roots of the Levi subsystem, and over the roots outside it.
#[derive(Clone, Debug)]
pub struct TorsionProducts {
    pub x_pi: GradedPolynomial,
    pub x_p: GradedPolynomial,
    pub x_pi_over_p: GradedPolynomial,
}

impl TorsionProducts {
    pub fn new(cs: &CosetSystem, lat: &CharacterLattice, ring: CoefficientRing) -> Self {
        let rs = cs.root_system();
        let levi: BTreeSet<usize> = cs.parabolic_roots().into_iter().collect();
        let mut x_pi = GradedPolynomial::one(lat.rank(), ring);
        let mut x_p = x_pi.clone();
        let mut x_pi_over_p = x_pi.clone();
        for (k, root) in rs.roots().iter().enumerate() {
            let f = lat.root_form(root, ring);
            x_pi = x_pi.mul(&f);
            if levi.contains(&k) {
                x_p = x_p.mul(&f);
            } else {
                x_pi_over_p = x_pi_over_p.mul(&f);
            }
        }
        TorsionProducts {
            x_pi,
            x_p,
            x_pi_over_p,
        }
    }
}

/// `g(c_k)`: a Weyl element applied to the unknown of double coset `k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Factor {
    pub word: Vec<usize>,
    pub unknown: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    #[serde(serialize_with = "ser_poly_terms")]
    pub coeff: GradedPolynomial,
    pub factors: Vec<Factor>,
}

fn ser_poly_terms<S: serde::Serializer>(p: &GradedPolynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    let labels: Vec<String> = (0..p.nvars()).map(|k| format!("x{}", k + 1)).collect();
    s.serialize_str(&p.fmt_with(&labels))
}

/// `lhs = rhs`, one per class `u` of `W/W_P`.
#[derive(Clone, Debug, Serialize)]
pub struct Identity {
    pub class: String,
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
    /// Follows from the identity at the minimal representative of the
    /// double coset by applying an element of `W_P`.
    pub implied: bool,
}

/// `root | lhs - rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Divisibility {
    /// Index of a positive root.
    pub root: usize,
    pub lhs: Factor,
    pub rhs: Factor,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolynomialEquationSystem {
    /// Names of the unknowns, one per double coset.
    pub unknowns: Vec<String>,
    pub identities: Vec<Identity>,
    pub divisibility: Vec<Divisibility>,
    /// Unknowns restricted to `W_P`-invariants.
    pub invariant_unknowns: Vec<String>,
}

/// Double coset bookkeeping shared by the emitters.
struct Cosets<'a> {
    cs: &'a CosetSystem,
    rs: &'a RootSystem,
    /// For each double coset, its minimal rep.
    mins: Vec<usize>,
    /// Elements of `W_P` fixing the unknown of each double coset.
    stabilizers: Vec<Vec<WeylElement>>,
    /// For each rep `w`, the shortest `v` in `W_P` with `v m = w` and its coset.
    carriers: Vec<(WeylElement, usize)>,
}

impl<'a> Cosets<'a> {
    fn new(cs: &'a CosetSystem) -> Self {
        let rs = &**cs.root_system();
        let wp = cs.parabolic_elements();
        let mins: Vec<usize> = cs.double_cosets().iter().map(|d| d.min_rep).collect();
        let stabilizers = mins
            .iter()
            .map(|&m| {
                wp.iter()
                    .filter(|h| cs.class_of(&rs.mul(h, cs.rep(m))) == m)
                    .cloned()
                    .collect()
            })
            .collect();
        let carriers = (0..cs.len())
            .map(|w| {
                let k = cs.block_of(w);
                let m = mins[k];
                // W_P is sorted by length then word, so the first hit is minimal.
                let v = wp
                    .iter()
                    .find(|v| cs.class_of(&rs.mul(v, cs.rep(m))) == w)
                    .expect("double cosets are W_P orbits")
                    .clone();
                (v, k)
            })
            .collect();
        Cosets {
            cs,
            rs,
            mins,
            stabilizers,
            carriers,
        }
    }

    /// Normal form of `g(c_k)`: the shortest element of `g Stab_k`.
    fn factor(&self, g: &WeylElement, k: usize) -> Factor {
        let best = self.stabilizers[k]
            .iter()
            .map(|h| {
                let e = self.rs.mul(g, h);
                let w = self.rs.reduced_word(&e);
                (e.length(), w)
            })
            .min()
            .expect("the stabilizer contains the identity");
        Factor {
            word: best.1,
            unknown: k,
        }
    }

    /// `a_w` in terms of the unknowns.
    fn coefficient(&self, w: usize) -> Factor {
        let (v, k) = &self.carriers[w];
        self.factor(v, *k)
    }

    /// `g(a_w)`.
    fn act(&self, g: &WeylElement, w: usize) -> Factor {
        let (v, k) = &self.carriers[w];
        self.factor(&self.rs.mul(g, v), *k)
    }

    fn unknown_names(&self, tilde: bool) -> Vec<String> {
        self.mins
            .iter()
            .map(|&m| format!("c{}{}", m, if tilde { "~" } else { "" }))
            .collect()
    }
}

/// `a_w` for every rep as an element of `W_P` applied to a double coset unknown.
#[derive(Clone, Debug, Serialize)]
pub struct CosetCoefficientVector {
    pub unknowns: Vec<String>,
    pub entries: Vec<Factor>,
    pub invariant_unknowns: Vec<String>,
}

pub fn invariance_constraints(cs: &CosetSystem) -> CosetCoefficientVector {
    let c = Cosets::new(cs);
    let names = c.unknown_names(false);
    CosetCoefficientVector {
        entries: (0..cs.len()).map(|w| c.coefficient(w)).collect(),
        invariant_unknowns: vec![names[cs.block_of(0)].clone()],
        unknowns: names,
    }
}

fn sort_terms(terms: Vec<Term>) -> Vec<Term> {
    // Combine equal monomials in the unknowns and order them.
    let mut map: BTreeMap<Vec<Factor>, GradedPolynomial> = BTreeMap::new();
    for t in terms {
        let mut f = t.factors;
        f.sort();
        match map.get_mut(&f) {
            Some(c) => *c = c.add(&t.coeff),
            None => {
                map.insert(f, t.coeff);
            }
        }
    }
    let mut out: Vec<Term> = map
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(factors, coeff)| Term { coeff, factors })
        .collect();
    out.sort_by(|a, b| {
        let key = |t: &Term| (t.factors.iter().map(|f| f.word.len()).sum::<usize>(), t.factors.clone());
        key(a).cmp(&key(b))
    });
    out
}

fn convolution(cs: &CosetSystem, lat: &CharacterLattice, cleared: bool, ring: CoefficientRing) -> PolynomialEquationSystem {
    let c = Cosets::new(cs);
    let rs = c.rs;
    let table = cs.mult_table();
    let n = cs.len();
    let tp = TorsionProducts::new(cs, lat, ring);
    let one = GradedPolynomial::one(lat.rank(), ring);
    let mins: BTreeSet<usize> = c.mins.iter().copied().collect();
    let identities = (0..n)
        .map(|u| {
            let mut lhs = Vec::new();
            for w in 0..n {
                for v in 0..n {
                    if table[w][v] != u {
                        continue;
                    }
                    let coeff = if cleared {
                        lat.act(rs, cs.rep(w), &tp.x_p)
                    } else {
                        one.clone()
                    };
                    lhs.push(Term {
                        coeff,
                        factors: vec![c.coefficient(w), c.act(cs.rep(w), v)],
                    });
                }
            }
            let rhs = Term {
                coeff: if cleared { tp.x_pi.clone() } else { one.clone() },
                factors: vec![c.coefficient(u)],
            };
            Identity {
                class: cs.rep_name(u),
                lhs: sort_terms(lhs),
                rhs: vec![rhs],
                implied: !mins.contains(&u),
            }
        })
        .collect();
    let names = c.unknown_names(cleared);
    PolynomialEquationSystem {
        invariant_unknowns: vec![names[cs.block_of(0)].clone()],
        unknowns: names,
        identities,
        divisibility: if cleared { divisibility_conditions(&c) } else { Vec::new() },
    }
}

/// `sum_{wv = u} a_w w(a_v) = a_u`.
pub fn convolution_idempotent_system(cs: &CosetSystem, lat: &CharacterLattice) -> PolynomialEquationSystem {
    convolution(cs, lat, false, CoefficientRing::Integers)
}

/// `sum_{wv = u} w(x_P) b_w w(b_v) = x_Pi b_u` for `b_w = x_{Pi/P} a_w`,
/// together with `x_{w(alpha)} | b_w - b_{s_{w(alpha)} w}`. Conditions with
/// `w(alpha)` in the Levi subsystem hold for every polynomial `b` and are
/// omitted; the rest are reduced modulo `W_P` and sign.
pub fn cleared_system(cs: &CosetSystem, lat: &CharacterLattice) -> PolynomialEquationSystem {
    convolution(cs, lat, true, CoefficientRing::Integers)
}

fn divisibility_conditions(c: &Cosets) -> Vec<Divisibility> {
    let cs = c.cs;
    let rs = c.rs;
    let levi: BTreeSet<usize> = cs.parabolic_roots().into_iter().collect();
    let wp = cs.parabolic_elements();
    let positive = |r: usize| if rs.is_positive(r) { r } else { rs.negate(r) };
    let mut out = BTreeSet::new();
    for w in 0..cs.len() {
        for alpha in 0..rs.num_positive() {
            if levi.contains(&alpha) {
                continue;
            }
            let gamma = cs.rep(w).apply(alpha);
            if levi.contains(&gamma) {
                continue;
            }
            let other = cs.class_of(&rs.mul(&rs.reflection(gamma), cs.rep(w)));
            let best = wp
                .iter()
                .map(|h| {
                    let mut pair = [c.act(h, w), c.act(h, other)];
                    pair.sort();
                    Divisibility {
                        root: positive(h.apply(gamma)),
                        lhs: pair[0].clone(),
                        rhs: pair[1].clone(),
                    }
                })
                .min()
                .unwrap();
            if best.lhs != best.rhs {
                out.insert(best);
            }
        }
    }
    out.into_iter().collect()
}

fn format_factor(f: &Factor, names: &[String]) -> String {
    if f.word.is_empty() {
        names[f.unknown].clone()
    } else {
        format!("{}({})", RootSystem::format_word(&f.word), names[f.unknown])
    }
}

fn format_term(t: &Term, lat: &CharacterLattice, names: &[String]) -> (bool, String) {
    let mut body: Vec<String> = Vec::new();
    let mut neg = false;
    let coeff = &t.coeff;
    if coeff.num_terms() == 1 {
        let (m, c) = coeff.leading().unwrap();
        neg = c < 0;
        let mono = GradedPolynomial::monomial(coeff.nvars(), coeff.ring(), m, c.abs());
        if mono.degree() != Some(0) || c.abs() != 1 {
            body.push(lat.format(&mono));
        }
    } else {
        body.push(format!("({})", lat.format(coeff)));
    }
    let mut counts: BTreeMap<&Factor, usize> = BTreeMap::new();
    for f in &t.factors {
        *counts.entry(f).or_default() += 1;
    }
    for (f, k) in counts {
        let s = format_factor(f, names);
        body.push(if k == 1 { s } else { format!("{s}^{k}") });
    }
    if body.is_empty() {
        body.push("1".into());
    }
    (neg, body.join("*"))
}

fn format_sum(terms: &[Term], lat: &CharacterLattice, names: &[String]) -> String {
    let mut out = String::new();
    for (k, t) in terms.iter().enumerate() {
        let (neg, body) = format_term(t, lat, names);
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl PolynomialEquationSystem {
    pub fn identity_line(&self, i: usize, lat: &CharacterLattice) -> String {
        let id = &self.identities[i];
        format!(
            "{} = {}",
            format_sum(&id.lhs, lat, &self.unknowns),
            format_sum(&id.rhs, lat, &self.unknowns)
        )
    }

    pub fn divisibility_line(&self, d: &Divisibility, rs: &RootSystem, lat: &CharacterLattice) -> String {
        let root = lat.root_form(&rs.roots()[d.root], CoefficientRing::Integers);
        format!(
            "{} | {} - {}",
            lat.format(&root),
            format_factor(&d.lhs, &self.unknowns),
            format_factor(&d.rhs, &self.unknowns)
        )
    }

    /// One identity per line, then the divisibility conditions.
    pub fn to_text(&self, rs: &RootSystem, lat: &CharacterLattice) -> String {
        let mut out = String::new();
        for (i, id) in self.identities.iter().enumerate() {
            let tag = if id.implied { "  [implied]" } else { "" };
            let _ = writeln!(out, "[{}] {}{}", id.class, self.identity_line(i, lat), tag);
        }
        for d in &self.divisibility {
            let _ = writeln!(out, "{}", self.divisibility_line(d, rs, lat));
        }
        for u in &self.invariant_unknowns {
            let _ = writeln!(out, "{u} is W_P-invariant");
        }
        out
    }

    /// Evaluates every identity at concrete values of the unknowns and
    /// returns the classes where it fails.
    pub fn failures(
        &self,
        cs: &CosetSystem,
        lat: &CharacterLattice,
        values: &[GradedPolynomial],
    ) -> Vec<String> {
        let rs = cs.root_system();
        let eval = |terms: &[Term]| {
            let mut acc = GradedPolynomial::zero(lat.rank(), CoefficientRing::Integers);
            for t in terms {
                let mut x = t.coeff.clone();
                for f in &t.factors {
                    x = x.mul(&lat.act_word(&f.word, &values[f.unknown]));
                }
                acc = acc.add(&x);
            }
            acc
        };
        let _ = rs;
        self.identities
            .iter()
            .filter(|id| eval(&id.lhs) != eval(&id.rhs))
            .map(|id| id.class.clone())
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipFailure {
    pub rep: String,
    pub root: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipVerdict {
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<MembershipFailure>,
}

/// `x_{w(alpha)} | b_w - b_{s_{w(alpha)} w}` for all `w` in `W^P` and all
/// roots `alpha` outside the Levi subsystem. With `narrow`, only the pairs
/// with `w(alpha)` inside the Levi subsystem are checked.
pub fn membership_check(
    cs: &CosetSystem,
    lat: &CharacterLattice,
    b: &FixedPointFunction,
    narrow: bool,
) -> MembershipVerdict {
    let rs = cs.root_system();
    let levi: BTreeSet<usize> = cs.parabolic_roots().into_iter().collect();
    let ring = b.values[0].ring();
    let mut failures = Vec::new();
    let mut checked = 0;
    for w in 0..cs.len() {
        for alpha in 0..rs.num_positive() {
            if levi.contains(&alpha) {
                continue;
            }
            let gamma = cs.rep(w).apply(alpha);
            if narrow && !levi.contains(&gamma) {
                continue;
            }
            checked += 1;
            let other = cs.class_of(&rs.mul(&rs.reflection(gamma), cs.rep(w)));
            let diff = b.values[w].sub(&b.values[other]);
            let form = lat.root_form(&rs.roots()[gamma], ring);
            if diff.div_exact(&form).is_none() {
                failures.push(MembershipFailure {
                    rep: cs.rep_name(w),
                    root: lat.format(&lat.root_form(&rs.roots()[alpha], CoefficientRing::Integers)),
                });
            }
        }
    }
    MembershipVerdict {
        passed: failures.is_empty(),
        checked,
        failures,
    }
}

/// `phi(b)` for the permutation module endomorphism with `phi(f_1) =
/// sum_w a_w f_w` and constant `a_w`.
pub fn perm_apply(cs: &CosetSystem, a: &[i64], b: &FixedPointFunction) -> FixedPointFunction {
    let table = cs.mult_table();
    let ring = b.values[0].ring();
    let nv = b.values[0].nvars();
    let mut out = vec![GradedPolynomial::zero(nv, ring); cs.len()];
    for (u, bu) in b.values.iter().enumerate() {
        if bu.is_zero() {
            continue;
        }
        for (w, &aw) in a.iter().enumerate() {
            if aw != 0 {
                let t = table[u][w];
                out[t] = out[t].add(&bu.scale(aw));
            }
        }
    }
    FixedPointFunction { values: out }
}

/// One endomorphism per double coset: `a_w = 1` on that double coset and 0
/// elsewhere, written in the Schubert basis.
pub fn perm_module_endos(
    cs: &CosetSystem,
    lat: &CharacterLattice,
    ring: CoefficientRing,
) -> Result<Vec<EndomorphismMatrix>> {
    let sf = SchubertFunctions::new(cs, lat)?;
    let z = CoefficientRing::Integers;
    let n = cs.len();
    cs.double_cosets()
        .iter()
        .map(|d| {
            let mut a = vec![0i64; n];
            for &w in &d.members {
                a[w] = 1;
            }
            let cols: Vec<ModuleElement> = (0..n)
                .map(|w| {
                    let f = sf.to_function(&ModuleElement::basis(cs, lat, z, w));
                    sf.from_function(&perm_apply(cs, &a, &f)).ok_or_else(|| {
                        Error::Invariant("permutation endomorphism leaves the Schubert lattice".into())
                    })
                })
                .collect::<Result<_>>()?;
            Ok(EndomorphismMatrix {
                entries: (0..n)
                    .map(|v| (0..n).map(|w| cols[w].coeffs[v].change_ring(ring)).collect())
                    .collect(),
            })
        })
        .collect()
}
