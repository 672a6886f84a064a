//! Diagonal congruences of degree-zero endomorphisms modulo `p`.
//!
//! Sending an endomorphism to its entries with `l(v) = l(w)` is a ring
//! homomorphism onto an algebra `A` of block diagonal constant matrices,
//! one block per length. Its kernel consists of strictly length-lowering
//! matrices and is nilpotent, so idempotents lift along it and the
//! decompositions of `D_P^*` mod `p` are read off from `A`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::matrix::EndomorphismSpace;
use super::symbolic::{symbolic_matrix, term_witness, TermWitness};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::polyring::{CharacterLattice, CoefficientRing};
use crate::rootsys::{format_poincare, CosetSystem};

/// Enumerate `A` only if it has at most this many elements.
pub const ALGEBRA_ENUMERATION_LIMIT: u64 = 1 << 20;
/// Witness terms kept per Hasse edge in reports.
const WITNESS_TERMS_SHOWN: usize = 12;

/// The algebra `A` with elements stored as flattened blocks.
#[derive(Clone, Debug)]
pub struct ImageAlgebra {
    pub p: u64,
    /// Rep indices of each length block.
    pub blocks: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    pub width: usize,
    /// Echelon basis of `A`.
    pub basis: Vec<Vec<u64>>,
}

impl ImageAlgebra {
    pub fn new(cs: &CosetSystem, space: &EndomorphismSpace) -> Result<Self> {
        let p = match space.ring() {
            CoefficientRing::PrimeField(p) => p,
            CoefficientRing::Integers => {
                return Err(Error::Config("congruence analysis needs a prime field".into()))
            }
        };
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); cs.max_length() + 1];
        for v in 0..cs.len() {
            blocks[cs.length(v)].push(v);
        }
        let mut offsets = Vec::new();
        let mut width = 0;
        for b in &blocks {
            offsets.push(width);
            width += b.len() * b.len();
        }
        let dim = space.dim();
        let mut images = vec![vec![0u64; width]; dim];
        for (b, members) in blocks.iter().enumerate() {
            for (i, &v) in members.iter().enumerate() {
                for (j, &w) in members.iter().enumerate() {
                    let form = space.constant_form(v, w);
                    for (k, &x) in form.iter().enumerate() {
                        images[k][offsets[b] + i * members.len() + j] = x.rem_euclid(p as i64) as u64;
                    }
                }
            }
        }
        let mut ech = Echelon::new(width, p);
        for img in &images {
            ech.push(img);
        }
        let (basis, _) = ech.into_rref();
        Ok(ImageAlgebra {
            p,
            blocks,
            offsets,
            width,
            basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn one(&self) -> Vec<u64> {
        let mut e = vec![0u64; self.width];
        for (b, members) in self.blocks.iter().enumerate() {
            let n = members.len();
            for i in 0..n {
                e[self.offsets[b] + i * n + i] = 1;
            }
        }
        e
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0u64; self.width];
        for (b, members) in self.blocks.iter().enumerate() {
            let n = members.len();
            let o = self.offsets[b];
            for i in 0..n {
                for k in 0..n {
                    let a = x[o + i * n + k];
                    if a == 0 {
                        continue;
                    }
                    for j in 0..n {
                        let t = &mut out[o + i * n + j];
                        *t = (*t + a * y[o + k * n + j]) % p;
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(&a, &b)| (a + self.p - b) % self.p).collect()
    }

    /// Diagonal entries `e_{vv}`, indexed by rep.
    pub fn diagonal(&self, e: &[u64]) -> Vec<u64> {
        let mut d = vec![0u64; self.blocks.iter().map(|b| b.len()).sum()];
        for (b, members) in self.blocks.iter().enumerate() {
            let n = members.len();
            for (i, &v) in members.iter().enumerate() {
                d[v] = e[self.offsets[b] + i * n + i];
            }
        }
        d
    }

    /// Rank of `e` on each length block.
    pub fn block_ranks(&self, e: &[u64]) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .map(|(b, members)| {
                let n = members.len();
                let rows: Vec<Vec<u64>> = (0..n)
                    .map(|i| e[self.offsets[b] + i * n..self.offsets[b] + (i + 1) * n].to_vec())
                    .collect();
                crate::linalg::rank(rows, n, self.p)
            })
            .collect()
    }

    /// All idempotents, in the order of their coordinates in the basis.
    pub fn idempotents(&self) -> Option<Vec<Vec<u64>>> {
        let r = self.dim() as u32;
        let total = self.p.checked_pow(r)?;
        if total > ALGEBRA_ENUMERATION_LIMIT {
            return None;
        }
        let mut out = Vec::new();
        let mut coeffs = vec![0u64; self.dim()];
        for _ in 0..total {
            let mut e = vec![0u64; self.width];
            for (c, b) in coeffs.iter().zip(&self.basis) {
                if *c != 0 {
                    for (x, &y) in e.iter_mut().zip(b) {
                        *x = (*x + c * y) % self.p;
                    }
                }
            }
            if self.mul(&e, &e) == e {
                out.push(e);
            }
            for c in coeffs.iter_mut() {
                *c += 1;
                if *c < self.p {
                    break;
                }
                *c = 0;
            }
        }
        Some(out)
    }

    /// Splits `e` into primitive orthogonal idempotents taken from `all`.
    pub fn primitive_decomposition(&self, e: &[u64], all: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let zero = vec![0u64; self.width];
        let below = all.iter().find(|f| {
            f.as_slice() != e && **f != zero && self.mul(e, f) == **f && self.mul(f, e) == **f
        });
        match below {
            None => vec![e.to_vec()],
            Some(f) => {
                let mut out = self.primitive_decomposition(f, all);
                out.extend(self.primitive_decomposition(&self.sub(e, f), all));
                out
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruenceClass {
    pub members: Vec<String>,
    pub poincare: String,
    pub poincare_normalized: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summand {
    /// Diagonal of the primitive idempotent, by rep.
    pub diagonal: Vec<u64>,
    /// `sum_k rank(e on length k) t^k`.
    pub poincare: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeWitness {
    pub from: String,
    pub to: String,
    pub generator: usize,
    pub difference: String,
    pub terms: Vec<TermWitness>,
    pub omitted_terms: usize,
    pub vanishes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruenceReport {
    pub prime: u64,
    pub endomorphism_dim: usize,
    pub algebra_dim: usize,
    /// `enumerated` when `A` was searched exhaustively, `linear` otherwise.
    pub method: String,
    pub verdict: String,
    pub blocks: usize,
    pub classes: Vec<CongruenceClass>,
    pub summands: Vec<Summand>,
    pub idempotents_in_algebra: Option<usize>,
    /// Reps whose diagonal entries agree as linear forms on all endomorphisms.
    pub linear_classes: Vec<Vec<String>>,
    /// Degree-zero off-diagonal entries equal to a diagonal entry.
    pub off_diagonal: Vec<String>,
    pub edges: Vec<EdgeWitness>,
    /// Classes obtained by merging Hasse-adjacent pairs whose symbolic
    /// difference vanishes termwise.
    pub witness_classes: Vec<Vec<String>>,
}

impl CongruenceReport {
    pub fn is_irreducible(&self) -> bool {
        self.blocks == 1
    }
}

fn class_info(cs: &CosetSystem, members: &[usize]) -> CongruenceClass {
    let poly = cs.poincare(members);
    let shift = poly.iter().position(|&c| c != 0).unwrap_or(0);
    CongruenceClass {
        members: members.iter().map(|&v| cs.rep_name(v)).collect(),
        poincare: format_poincare(&poly),
        poincare_normalized: format_poincare(&poly[shift..]),
    }
}

fn group_by<K: Ord>(n: usize, key: impl Fn(usize) -> K) -> Vec<Vec<usize>> {
    let mut map: BTreeMap<K, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        map.entry(key(v)).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = map.into_values().collect();
    out.sort();
    out
}

fn union_find_classes(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for &(a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    group_by(n, |v| find(&mut parent.clone(), v))
}

pub fn diagonal_congruence(
    cs: &CosetSystem,
    lat: &CharacterLattice,
    space: &EndomorphismSpace,
) -> Result<CongruenceReport> {
    let alg = ImageAlgebra::new(cs, space)?;
    let p = alg.p;
    let n = cs.len();
    let names = |c: &[usize]| -> Vec<String> { c.iter().map(|&v| cs.rep_name(v)).collect() };

    let diag_forms: Vec<Vec<i64>> = (0..n)
        .map(|v| space.constant_form(v, v).iter().map(|x| x.rem_euclid(p as i64)).collect())
        .collect();
    let linear = group_by(n, |v| diag_forms[v].clone());

    let mut off_diagonal = Vec::new();
    for v in 0..n {
        for w in 0..n {
            if v == w || cs.length(v) != cs.length(w) {
                continue;
            }
            let f: Vec<i64> = space.constant_form(v, w).iter().map(|x| x.rem_euclid(p as i64)).collect();
            if f.iter().all(|&x| x == 0) {
                continue;
            }
            for u in 0..n {
                if diag_forms[u] == f {
                    off_diagonal.push(format!(
                        "a[{},{}] = a[{},{}]",
                        cs.rep_name(v),
                        cs.rep_name(w),
                        cs.rep_name(u),
                        cs.rep_name(u)
                    ));
                }
            }
        }
    }

    let (method, classes, summands, idem_count) = match alg.idempotents() {
        Some(all) => {
            let diagonals: Vec<Vec<u64>> = all.iter().map(|e| alg.diagonal(e)).collect();
            let classes = group_by(n, |v| diagonals.iter().map(|d| d[v]).collect::<Vec<_>>());
            let prims = alg.primitive_decomposition(&alg.one(), &all);
            let summands = prims
                .iter()
                .map(|e| {
                    let ranks = alg.block_ranks(e);
                    Summand {
                        diagonal: alg.diagonal(e),
                        poincare: format_poincare(&ranks),
                    }
                })
                .collect::<Vec<_>>();
            ("enumerated", classes, summands, Some(all.len()))
        }
        None => ("linear", linear.clone(), Vec::new(), None),
    };
    let blocks = if method == "enumerated" {
        summands.len()
    } else if alg.blocks.iter().all(|b| b.len() <= 1) {
        // Orthogonal idempotents then have disjoint diagonal supports, each
        // constant on linear classes.
        linear.len()
    } else {
        n
    };
    let verdict = if blocks == 1 {
        "irreducible".to_string()
    } else {
        format!("at most {blocks} blocks")
    };

    let sym = symbolic_matrix(cs, lat);
    let mut edges = Vec::new();
    let mut merged = Vec::new();
    for e in cs.hasse_edges() {
        let diff = sym.entries[e.to][e.to]
            .sub(&sym.entries[e.from][e.from])
            .reduce_mod(p);
        let witnesses: Vec<TermWitness> = diff
            .terms
            .iter()
            .map(|(t, &c)| term_witness(cs, lat, t, c, p))
            .collect();
        let vanishes = !diff.truncated && witnesses.iter().all(|w| w.vanishes);
        if vanishes {
            merged.push((e.from, e.to));
        }
        let omitted = witnesses.len().saturating_sub(WITNESS_TERMS_SHOWN);
        edges.push(EdgeWitness {
            from: cs.rep_name(e.from),
            to: cs.rep_name(e.to),
            generator: e.generator + 1,
            difference: diff.format(cs),
            terms: witnesses.into_iter().take(WITNESS_TERMS_SHOWN).collect(),
            omitted_terms: omitted,
            vanishes,
        });
    }
    let witness_classes = union_find_classes(n, &merged);

    Ok(CongruenceReport {
        prime: p,
        endomorphism_dim: space.dim(),
        algebra_dim: alg.dim(),
        method: method.to_string(),
        verdict,
        blocks,
        classes: classes.iter().map(|c| class_info(cs, c)).collect(),
        summands,
        idempotents_in_algebra: idem_count,
        linear_classes: linear.iter().map(|c| names(c)).collect(),
        off_diagonal,
        edges,
        witness_classes: witness_classes.iter().map(|c| names(c)).collect(),
    })
}
