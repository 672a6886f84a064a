use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use super::poly::{determinant, monomials_of_degree, CoefficientRing, GradedPolynomial, Monomial};
use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, TypeLabel};

/// An elementary operator on the polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Op {
    Delta(usize),
    Reflect(usize),
}

impl Op {
    pub fn degree_drop(self) -> usize {
        match self {
            Op::Delta(_) => 1,
            Op::Reflect(_) => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LatticePreset {
    /// The root lattice of any type.
    Root,
    /// `A3` with basis `{a1, a2, w2}`.
    A3Omega2,
    /// `D4` with basis `{a1, a2, a3, w1}`.
    D4So8,
    /// `D4` with basis `{a2, a3, a4, w4}`.
    D4HSpin8,
}

impl LatticePreset {
    pub const ALL: [LatticePreset; 4] = [
        LatticePreset::Root,
        LatticePreset::A3Omega2,
        LatticePreset::D4So8,
        LatticePreset::D4HSpin8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LatticePreset::Root => "root",
            LatticePreset::A3Omega2 => "A3-omega2",
            LatticePreset::D4So8 => "D4-SO8",
            LatticePreset::D4HSpin8 => "D4-HSpin8",
        }
    }
}

impl fmt::Display for LatticePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LatticePreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LatticePreset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidLattice(format!("unknown lattice preset {s:?}")))
    }
}

/// Monomials of one degree with a reverse lookup table.
#[derive(Debug)]
pub struct MonomialBasis {
    pub degree: usize,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    fn new(nvars: usize, degree: usize) -> Self {
        let monomials = monomials_of_degree(nvars, degree);
        let index = monomials.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        MonomialBasis {
            degree,
            monomials,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index(&self, m: &Monomial) -> usize {
        self.index[m]
    }
}

/// Integer matrix between monomial bases, stored by source column.
#[derive(Debug)]
pub struct SparseOp {
    pub source_degree: usize,
    pub target_degree: usize,
    pub rows: usize,
    pub columns: Vec<Vec<(u32, i64)>>,
}

impl SparseOp {
    pub fn apply(&self, v: &[i64], ring: CoefficientRing) -> Vec<i64> {
        assert_eq!(v.len(), self.columns.len());
        let mut out = vec![0i64; self.rows];
        for (col, &x) in self.columns.iter().zip(v) {
            if x == 0 {
                continue;
            }
            for &(r, c) in col {
                let t = &mut out[r as usize];
                *t = ring.add(*t, ring.mul(c, x));
            }
        }
        out
    }

    /// Dense copy reduced into `ring`, indexed `[row][col]`.
    pub fn dense(&self, ring: CoefficientRing) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.columns.len()]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, x) in col {
                m[r as usize][c] = ring.reduce(x);
            }
        }
        m
    }
}

type MonoImage = Arc<Vec<(Monomial, i64)>>;

/// A lattice `T*` with a chosen basis: coordinates of the simple roots and
/// the coroot pairings of the basis vectors. Determines the Weyl group
/// action on the symmetric algebra.
#[derive(Debug)]
pub struct CharacterLattice {
    name: String,
    type_label: TypeLabel,
    rank: usize,
    labels: Vec<String>,
    simple_roots: Vec<Vec<i64>>,
    pairings: Vec<Vec<i64>>,
    reflection_images: Vec<Vec<GradedPolynomial>>,
    bases: RwLock<HashMap<usize, Arc<MonomialBasis>>>,
    delta_cache: RwLock<HashMap<(usize, Monomial), MonoImage>>,
    reflect_cache: RwLock<HashMap<(usize, Monomial), MonoImage>>,
    op_cache: RwLock<HashMap<(Op, usize), Arc<SparseOp>>>,
}

impl CharacterLattice {
    /// Validates the data against the Cartan matrix of `rs`.
    /// `simple_roots[i]` are the coordinates of `alpha_i` and
    /// `pairings[i][b]` is `<b, alpha_i^vee>`.
    pub fn new(
        name: &str,
        rs: &RootSystem,
        labels: Vec<String>,
        simple_roots: Vec<Vec<i64>>,
        pairings: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let r = rs.rank();
        let bad = |msg: String| Err(Error::InvalidLattice(msg));
        if labels.len() != r || simple_roots.len() != r || pairings.len() != r {
            return bad(format!("expected {r} basis labels, roots and pairings"));
        }
        if r > super::MAX_VARS {
            return bad(format!("at most {} basis vectors are supported", super::MAX_VARS));
        }
        if simple_roots.iter().chain(&pairings).any(|v| v.len() != r) {
            return bad(format!("every coordinate vector must have length {r}"));
        }
        for (k, l) in labels.iter().enumerate() {
            let ok = !l.is_empty()
                && l.chars().next().unwrap().is_ascii_alphabetic()
                && l.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok || labels[..k].contains(l) {
                return bad(format!("invalid or repeated basis label {l:?}"));
            }
        }
        for i in 0..r {
            for j in 0..r {
                let pairing: i64 = simple_roots[j]
                    .iter()
                    .zip(&pairings[i])
                    .map(|(a, b)| a * b)
                    .sum();
                if pairing != rs.cartan()[i][j] {
                    return bad(format!(
                        "<alpha_{}, alpha_{}^vee> = {pairing}, Cartan matrix says {}",
                        j + 1,
                        i + 1,
                        rs.cartan()[i][j]
                    ));
                }
            }
        }
        if determinant(&simple_roots) == 0 {
            return bad("simple roots are linearly dependent".into());
        }
        let z = CoefficientRing::Integers;
        let reflection_images: Vec<Vec<GradedPolynomial>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|b| {
                        let mut coeffs = vec![0i64; r];
                        coeffs[b] = 1;
                        for (c, a) in coeffs.iter_mut().zip(&simple_roots[i]) {
                            *c -= pairings[i][b] * a;
                        }
                        GradedPolynomial::linear(z, &coeffs)
                    })
                    .collect()
            })
            .collect();
        let lattice = CharacterLattice {
            name: name.to_string(),
            type_label: rs.type_label(),
            rank: r,
            labels,
            simple_roots,
            pairings,
            reflection_images,
            bases: RwLock::new(HashMap::new()),
            delta_cache: RwLock::new(HashMap::new()),
            reflect_cache: RwLock::new(HashMap::new()),
            op_cache: RwLock::new(HashMap::new()),
        };
        for i in 0..r {
            for b in 0..r {
                let x = GradedPolynomial::var(r, z, b);
                let back = lattice.reflect(i, &lattice.reflect(i, &x));
                if back != x {
                    return bad(format!("s_{} does not square to the identity", i + 1));
                }
            }
        }
        Ok(lattice)
    }

    pub fn root_lattice(rs: &RootSystem) -> Result<Self> {
        let r = rs.rank();
        let labels = (1..=r).map(|k| format!("a{k}")).collect();
        let roots = (0..r)
            .map(|i| (0..r).map(|b| (i == b) as i64).collect())
            .collect();
        // <alpha_b, alpha_i^vee> is the Cartan entry c[i][b].
        let pairings = rs.cartan().to_vec();
        Self::new("root", rs, labels, roots, pairings)
    }

    pub fn preset(preset: LatticePreset, rs: &RootSystem) -> Result<Self> {
        let want = |t: TypeLabel, n: usize| {
            if rs.type_label() == t && rs.rank() == n {
                Ok(())
            } else {
                Err(Error::InvalidLattice(format!(
                    "preset {preset} needs type {t}{n}, got {}",
                    rs.name()
                )))
            }
        };
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        match preset {
            LatticePreset::Root => Self::root_lattice(rs),
            LatticePreset::A3Omega2 => {
                want(TypeLabel::A, 3)?;
                // w2 = (a1 + 2 a2 + a3) / 2, so a3 = 2 w2 - a1 - 2 a2.
                Self::new(
                    preset.name(),
                    rs,
                    s(&["a1", "a2", "w2"]),
                    vec![vec![1, 0, 0], vec![0, 1, 0], vec![-1, -2, 2]],
                    vec![vec![2, -1, 0], vec![-1, 2, 1], vec![0, -1, 0]],
                )
            }
            LatticePreset::D4So8 => {
                want(TypeLabel::D, 4)?;
                // w1 = a1 + a2 + (a3 + a4) / 2, so a4 = 2 w1 - 2 a1 - 2 a2 - a3.
                Self::new(
                    preset.name(),
                    rs,
                    s(&["a1", "a2", "a3", "w1"]),
                    vec![
                        vec![1, 0, 0, 0],
                        vec![0, 1, 0, 0],
                        vec![0, 0, 1, 0],
                        vec![-2, -2, -1, 2],
                    ],
                    vec![
                        vec![2, -1, 0, 1],
                        vec![-1, 2, -1, 0],
                        vec![0, -1, 2, 0],
                        vec![0, -1, 0, 0],
                    ],
                )
            }
            LatticePreset::D4HSpin8 => {
                want(TypeLabel::D, 4)?;
                // w4 = (a1 + 2 a2 + a3 + 2 a4) / 2, so a1 = 2 w4 - 2 a2 - a3 - 2 a4.
                Self::new(
                    preset.name(),
                    rs,
                    s(&["a2", "a3", "a4", "w4"]),
                    vec![
                        vec![-2, -1, -2, 2],
                        vec![1, 0, 0, 0],
                        vec![0, 1, 0, 0],
                        vec![0, 0, 1, 0],
                    ],
                    vec![
                        vec![-1, 0, 0, 0],
                        vec![2, -1, -1, 0],
                        vec![-1, 2, 0, 0],
                        vec![-1, 0, 2, 1],
                    ],
                )
            }
        }
    }

    /// Parses a custom lattice description:
    ///
    /// ```text
    /// labels = a1, a2, w2
    /// root1 = 1, 0, 0
    /// pairing1 = 2, -1, 0
    /// ```
    pub fn from_text(text: &str, rs: &RootSystem) -> Result<Self> {
        let r = rs.rank();
        let mut labels = None;
        let mut roots = vec![None; r];
        let mut pairings = vec![None; r];
        let ints = |v: &str| -> Result<Vec<i64>> {
            v.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::InvalidLattice(format!("bad integer {x:?}")))
                })
                .collect()
        };
        for line in text.lines() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidLattice(format!("expected key = value, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            let slot = |prefix: &str| -> Option<usize> {
                key.strip_prefix(prefix)
                    .and_then(|n| n.parse::<usize>().ok())
                    .filter(|&n| n >= 1 && n <= r)
                    .map(|n| n - 1)
            };
            if key == "labels" {
                labels = Some(value.split(',').map(|s| s.trim().to_string()).collect());
            } else if let Some(i) = slot("root") {
                roots[i] = Some(ints(value)?);
            } else if let Some(i) = slot("pairing") {
                pairings[i] = Some(ints(value)?);
            } else if key == "name" || key == "type" || key == "rank" {
                continue;
            } else {
                return Err(Error::InvalidLattice(format!("unknown key {key:?}")));
            }
        }
        let missing = |what: &str, i: usize| Error::InvalidLattice(format!("missing {what}{}", i + 1));
        let roots = roots
            .into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| missing("root", i)))
            .collect::<Result<Vec<_>>>()?;
        let pairings = pairings
            .into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| missing("pairing", i)))
            .collect::<Result<Vec<_>>>()?;
        let labels = labels.ok_or_else(|| Error::InvalidLattice("missing labels".into()))?;
        Self::new("custom", rs, labels, roots, pairings)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn type_label(&self) -> TypeLabel {
        self.type_label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn simple_root_coords(&self, i: usize) -> &[i64] {
        &self.simple_roots[i]
    }

    pub fn pairings(&self, i: usize) -> &[i64] {
        &self.pairings[i]
    }

    /// `alpha_i` as a linear polynomial.
    pub fn simple_root(&self, i: usize, ring: CoefficientRing) -> GradedPolynomial {
        GradedPolynomial::linear(ring, &self.simple_roots[i])
    }

    /// A root given in simple-root coordinates, as a linear polynomial.
    pub fn root_form(&self, coords: &[i64], ring: CoefficientRing) -> GradedPolynomial {
        let mut v = vec![0i64; self.rank];
        for (c, a) in coords.iter().zip(&self.simple_roots) {
            for (x, y) in v.iter_mut().zip(a) {
                *x += c * y;
            }
        }
        GradedPolynomial::linear(ring, &v)
    }

    pub fn var(&self, k: usize, ring: CoefficientRing) -> GradedPolynomial {
        GradedPolynomial::var(self.rank, ring, k)
    }

    pub fn parse(&self, text: &str, ring: CoefficientRing) -> Result<GradedPolynomial> {
        GradedPolynomial::parse(text, &self.labels, ring)
    }

    pub fn format(&self, f: &GradedPolynomial) -> String {
        f.fmt_with(&self.labels)
    }

    pub fn basis(&self, degree: usize) -> Arc<MonomialBasis> {
        if let Some(b) = self.bases.read().get(&degree) {
            return b.clone();
        }
        let b = Arc::new(MonomialBasis::new(self.rank, degree));
        self.bases.write().entry(degree).or_insert(b).clone()
    }

    /// `s_i(f)`.
    pub fn reflect(&self, i: usize, f: &GradedPolynomial) -> GradedPolynomial {
        self.map_monomials(f, |m| self.reflect_monomial(i, m))
    }

    /// `w(f)` for `w = s_{word[0]} s_{word[1]} ...`.
    pub fn act_word(&self, word: &[usize], f: &GradedPolynomial) -> GradedPolynomial {
        word.iter()
            .rev()
            .fold(f.clone(), |acc, &i| self.reflect(i, &acc))
    }

    pub fn act(&self, rs: &RootSystem, w: &crate::rootsys::WeylElement, f: &GradedPolynomial) -> GradedPolynomial {
        self.act_word(&rs.reduced_word(w), f)
    }

    /// `Delta_i(f) = (f - s_i f) / alpha_i`. Over `F_p` the integer operator
    /// is applied to a lift and reduced.
    pub fn demazure(&self, i: usize, f: &GradedPolynomial) -> GradedPolynomial {
        self.map_monomials(f, |m| self.delta_monomial(i, m))
    }

    /// `Delta_{word[0]}(Delta_{word[1]}(... f))`.
    pub fn demazure_word(&self, word: &[usize], f: &GradedPolynomial) -> GradedPolynomial {
        word.iter()
            .rev()
            .fold(f.clone(), |acc, &i| self.demazure(i, &acc))
    }

    pub fn apply_op(&self, op: Op, f: &GradedPolynomial) -> GradedPolynomial {
        match op {
            Op::Delta(i) => self.demazure(i, f),
            Op::Reflect(i) => self.reflect(i, f),
        }
    }

    /// Applies `ops[0] o ops[1] o ...`.
    pub fn apply_ops(&self, ops: &[Op], f: &GradedPolynomial) -> GradedPolynomial {
        ops.iter()
            .rev()
            .fold(f.clone(), |acc, &op| self.apply_op(op, &acc))
    }

    /// Reference implementation of `Delta_i` by exact division over `Q`.
    /// Only defined over the integers.
    pub fn demazure_by_division(&self, i: usize, f: &GradedPolynomial) -> GradedPolynomial {
        assert_eq!(f.ring(), CoefficientRing::Integers);
        let diff = f.sub(&self.reflect(i, f));
        diff.div_exact(&self.simple_root(i, f.ring()))
            .unwrap_or_else(|| panic!("f - s_{} f is not divisible by alpha_{}", i + 1, i + 1))
    }

    fn map_monomials(
        &self,
        f: &GradedPolynomial,
        image: impl Fn(&Monomial) -> MonoImage,
    ) -> GradedPolynomial {
        assert_eq!(f.nvars(), self.rank, "polynomial lives on a different lattice");
        let ring = f.ring();
        let mut out = GradedPolynomial::zero(self.rank, ring);
        for (m, &c) in f.terms() {
            for &(mm, cc) in image(m).iter() {
                out.add_term(mm, ring.mul(ring.reduce(cc), c));
            }
        }
        out
    }

    fn first_var(m: &Monomial) -> Option<usize> {
        m.0.iter().position(|&e| e > 0)
    }

    /// `s_i(m)` over the integers; `s_i(x_k m') = s_i(x_k) s_i(m')`.
    pub(crate) fn reflect_monomial(&self, i: usize, m: &Monomial) -> MonoImage {
        if let Some(v) = self.reflect_cache.read().get(&(i, *m)) {
            return v.clone();
        }
        let z = CoefficientRing::Integers;
        let poly = match Self::first_var(m) {
            None => GradedPolynomial::one(self.rank, z),
            Some(k) => {
                let rest = m.with_exp(k, m.exp(k) - 1);
                let tail = GradedPolynomial::from_terms(self.rank, z, self.reflect_monomial(i, &rest).iter().copied());
                self.reflection_images[i][k].mul(&tail)
            }
        };
        let v: MonoImage = Arc::new(poly.terms().map(|(m, &c)| (*m, c)).collect());
        self.reflect_cache.write().insert((i, *m), v.clone());
        v
    }

    /// `Delta_i(m)` over the integers via the twisted Leibniz rule
    /// `Delta_i(x_k m') = <x_k, alpha_i^vee> m' + s_i(x_k) Delta_i(m')`.
    pub(crate) fn delta_monomial(&self, i: usize, m: &Monomial) -> MonoImage {
        if let Some(v) = self.delta_cache.read().get(&(i, *m)) {
            return v.clone();
        }
        let z = CoefficientRing::Integers;
        let poly = match Self::first_var(m) {
            None => GradedPolynomial::zero(self.rank, z),
            Some(k) => {
                let rest = m.with_exp(k, m.exp(k) - 1);
                let tail = GradedPolynomial::from_terms(self.rank, z, self.delta_monomial(i, &rest).iter().copied());
                let mut p = self.reflection_images[i][k].mul(&tail);
                p.add_term(rest, self.pairings[i][k]);
                p
            }
        };
        let v: MonoImage = Arc::new(poly.terms().map(|(m, &c)| (*m, c)).collect());
        self.delta_cache.write().insert((i, *m), v.clone());
        v
    }

    /// Integer matrix of `op` from degree `degree` to the target degree.
    pub fn op_matrix(&self, op: Op, degree: usize) -> Arc<SparseOp> {
        if let Some(m) = self.op_cache.read().get(&(op, degree)) {
            return m.clone();
        }
        let src = self.basis(degree);
        let target_degree = degree.saturating_sub(op.degree_drop());
        let dst = self.basis(target_degree);
        let columns = src
            .monomials
            .iter()
            .map(|m| {
                if degree < op.degree_drop() {
                    return Vec::new();
                }
                let img = match op {
                    Op::Delta(i) => self.delta_monomial(i, m),
                    Op::Reflect(i) => self.reflect_monomial(i, m),
                };
                let mut col: Vec<(u32, i64)> =
                    img.iter().map(|(mm, c)| (dst.index(mm) as u32, *c)).collect();
                col.sort_unstable();
                col
            })
            .collect();
        let m = Arc::new(SparseOp {
            source_degree: degree,
            target_degree,
            rows: dst.len(),
            columns,
        });
        self.op_cache.write().entry((op, degree)).or_insert(m).clone()
    }

    /// Applies `ops` (outermost first) to a coordinate vector of degree `degree`.
    /// Returns the resulting degree and vector.
    pub fn apply_ops_vec(
        &self,
        ops: &[Op],
        degree: usize,
        v: &[i64],
        ring: CoefficientRing,
    ) -> (usize, Vec<i64>) {
        let mut d = degree;
        let mut cur = v.to_vec();
        for &op in ops.iter().rev() {
            if d < op.degree_drop() {
                return (0, vec![0]);
            }
            let m = self.op_matrix(op, d);
            cur = m.apply(&cur, ring);
            d = m.target_degree;
        }
        (d, cur)
    }

    pub fn to_coords(&self, f: &GradedPolynomial, degree: usize) -> Vec<i64> {
        let b = self.basis(degree);
        let mut v = vec![0i64; b.len()];
        for (m, &c) in f.terms() {
            assert_eq!(m.degree(), degree, "polynomial is not homogeneous of degree {degree}");
            v[b.index(m)] = c;
        }
        v
    }

    pub fn from_coords(&self, v: &[i64], degree: usize, ring: CoefficientRing) -> GradedPolynomial {
        let b = self.basis(degree);
        GradedPolynomial::from_terms(
            self.rank,
            ring,
            b.monomials.iter().zip(v).map(|(m, &c)| (*m, c)),
        )
    }

    /// Row-reduced basis of `ops(S^degree)` modulo `p`. Empty means zero.
    pub fn homogeneous_image(&self, ops: &[Op], degree: usize, p: u64) -> Vec<GradedPolynomial> {
        let drop: usize = ops.iter().map(|o| o.degree_drop()).sum();
        if degree < drop {
            return Vec::new();
        }
        let ring = CoefficientRing::PrimeField(p);
        let n = self.basis(degree).len();
        let target = degree - drop;
        let images: Vec<Vec<u64>> = (0..n)
            .map(|k| {
                let mut e = vec![0i64; n];
                e[k] = 1;
                let (_, v) = self.apply_ops_vec(ops, degree, &e, ring);
                v.into_iter().map(|x| x as u64).collect()
            })
            .collect();
        let ncols = self.basis(target).len();
        let (rows, _) = crate::linalg::rref(images, ncols, p);
        rows.into_iter()
            .map(|r| {
                let v: Vec<i64> = r.into_iter().map(|x| x as i64).collect();
                self.from_coords(&v, target, ring)
            })
            .collect()
    }

    /// Dense matrix of `ops` on `S^degree` over `ring`, `[row][col]`.
    pub fn ops_matrix(&self, ops: &[Op], degree: usize, ring: CoefficientRing) -> Vec<Vec<i64>> {
        let n = self.basis(degree).len();
        let cols: Vec<Vec<i64>> = (0..n)
            .map(|k| {
                let mut e = vec![0i64; n];
                e[k] = 1;
                self.apply_ops_vec(ops, degree, &e, ring).1
            })
            .collect();
        let rows = cols.first().map_or(0, |c| c.len());
        (0..rows)
            .map(|r| cols.iter().map(|c| c[r]).collect())
            .collect()
    }

    pub fn format_span(&self, basis: &[GradedPolynomial]) -> String {
        if basis.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = basis.iter().map(|b| self.format(b)).collect();
        format!("span{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::delta_word;

    fn a(n: usize) -> (RootSystem, CharacterLattice) {
        let rs = RootSystem::new(TypeLabel::A, n).unwrap();
        let l = CharacterLattice::root_lattice(&rs).unwrap();
        (rs, l)
    }

    #[test]
    fn simple_reflections_on_roots() {
        let (_, l) = a(3);
        let z = CoefficientRing::Integers;
        let a1 = l.var(0, z);
        assert_eq!(l.format(&l.reflect(1, &a1)), "a1 + a2");
        assert_eq!(l.format(&l.reflect(0, &a1)), "-a1");
        assert_eq!(l.format(&l.demazure(0, &a1)), "2");
        assert_eq!(l.format(&l.demazure(2, &l.var(1, z))), "-1");
    }

    #[test]
    fn fundamental_weight_reflections() {
        let rs = RootSystem::new(TypeLabel::A, 3).unwrap();
        let l = CharacterLattice::preset(LatticePreset::A3Omega2, &rs).unwrap();
        let z = CoefficientRing::Integers;
        let w2 = l.var(2, z);
        assert_eq!(l.format(&l.reflect(1, &w2)), "-a2 + w2");
        assert_eq!(l.reflect(0, &w2), w2);
        assert_eq!(l.format(&l.simple_root(2, z)), "-a1 - 2*a2 + 2*w2");
    }

    #[test]
    fn presets_validate() {
        let d4 = RootSystem::new(TypeLabel::D, 4).unwrap();
        for p in [LatticePreset::Root, LatticePreset::D4So8, LatticePreset::D4HSpin8] {
            CharacterLattice::preset(p, &d4).unwrap();
        }
        assert!(CharacterLattice::preset(LatticePreset::A3Omega2, &d4).is_err());
    }

    #[test]
    fn bad_lattice_rejected() {
        let (rs, _) = a(2);
        let err = CharacterLattice::new(
            "bad",
            &rs,
            vec!["x".into(), "y".into()],
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![2, 0], vec![0, 2]],
        );
        assert!(err.is_err());
    }

    #[test]
    fn leibniz_matches_division() {
        let rs = RootSystem::new(TypeLabel::D, 4).unwrap();
        let l = CharacterLattice::preset(LatticePreset::D4HSpin8, &rs).unwrap();
        let z = CoefficientRing::Integers;
        for m in monomials_of_degree(4, 3) {
            let f = GradedPolynomial::monomial(4, z, m, 1);
            for i in 0..4 {
                assert_eq!(l.demazure(i, &f), l.demazure_by_division(i, &f));
            }
        }
    }

    #[test]
    fn image_of_composite_operator() {
        let rs = RootSystem::new(TypeLabel::D, 4).unwrap();
        let l = CharacterLattice::root_lattice(&rs).unwrap();
        let img = l.homogeneous_image(&delta_word(&[2, 3]), 3, 2);
        assert_eq!(l.format_span(&img), "span{a3 + a4}");
        assert!(l.homogeneous_image(&delta_word(&[2, 3]), 2, 2).is_empty());
        assert!(l.homogeneous_image(&delta_word(&[0, 1, 2]), 2, 2).is_empty());
    }

    #[test]
    fn custom_lattice_text() {
        let rs = RootSystem::new(TypeLabel::A, 3).unwrap();
        let text = "labels = a1, a2, w2\nroot1 = 1,0,0\nroot2 = 0,1,0\nroot3 = -1,-2,2\n\
                    pairing1 = 2,-1,0\npairing2 = -1,2,1\npairing3 = 0,-1,0\n";
        let l = CharacterLattice::from_text(text, &rs).unwrap();
        assert_eq!(l.labels()[2], "w2");
        assert!(CharacterLattice::from_text("labels = a1", &rs).is_err());
    }
}
