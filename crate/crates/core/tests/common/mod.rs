#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use heckendo::nilhecke::{x_act, ModuleElement};
use heckendo::polyring::{
    monomials_of_degree, CharacterLattice, CoefficientRing, GradedPolynomial, LatticePreset, Monomial,
};
use heckendo::rootsys::{CosetSystem, RootSystem, TypeLabel};

pub fn setup(t: TypeLabel, n: usize, parabolic: &[usize], preset: LatticePreset) -> (CosetSystem, CharacterLattice) {
    let rs = Arc::new(RootSystem::new(t, n).unwrap());
    let lat = CharacterLattice::preset(preset, &rs).unwrap();
    let cs = CosetSystem::new(rs, parabolic).unwrap();
    (cs, lat)
}

/// Projective space `P^n`: type `A_n`, everything but the first node.
pub fn projective(n: usize) -> (CosetSystem, CharacterLattice) {
    let par: Vec<usize> = (1..n).collect();
    setup(TypeLabel::A, n, &par, LatticePreset::Root)
}

pub fn d4(preset: LatticePreset) -> (CosetSystem, CharacterLattice) {
    setup(TypeLabel::D, 4, &[1, 2, 3], preset)
}

pub fn klein() -> (CosetSystem, CharacterLattice) {
    setup(TypeLabel::A, 3, &[0, 2], LatticePreset::A3Omega2)
}

/// Reduced row echelon form over `F_p` by plain elimination; returns the
/// nonzero rows and pivot columns.
pub fn rref_mod(mut rows: Vec<Vec<u64>>, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let inv = |a: u64| (1..p).find(|b| a * b % p == 1).unwrap();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] % p != 0) else {
            continue;
        };
        rows.swap(r, k);
        let s = inv(rows[r][c] % p);
        for x in rows[r].iter_mut() {
            *x = *x * s % p;
        }
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[c] % p != 0 {
                let f = row[c] % p;
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank_mod(rows: Vec<Vec<u64>>, p: u64) -> usize {
    rref_mod(rows, p).1.len()
}

pub fn kernel_mod(rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let (r, pivots) = rref_mod(rows, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0u64; ncols];
            x[f] = 1;
            for (row, &pc) in r.iter().zip(&pivots) {
                x[pc] = (p - row[f] % p) % p;
            }
            x
        })
        .collect()
}

/// Dimension over `F_p` of the degree-zero endomorphisms, solved from the
/// full matrix: every entry `a_{v,w}` with `l(v) >= l(w)` is an unknown
/// homogeneous polynomial and every relation `X_j phi(xi_w) = phi(X_j xi_w)`
/// is imposed. Nothing about first columns is assumed.
pub fn full_matrix_endos(cs: &CosetSystem, lat: &CharacterLattice, p: u64) -> FullSolve {
    let ring = CoefficientRing::prime_field(p).unwrap();
    let n = cs.len();
    let r = lat.rank();
    let mut unknowns: Vec<(usize, usize, Monomial)> = Vec::new();
    for v in 0..n {
        for w in 0..n {
            if cs.length(v) >= cs.length(w) {
                for m in monomials_of_degree(r, cs.length(v) - cs.length(w)) {
                    unknowns.push((v, w, m));
                }
            }
        }
    }
    let basis: Vec<ModuleElement> = (0..n).map(|w| ModuleElement::basis(cs, lat, ring, w)).collect();
    let images: Vec<Vec<ModuleElement>> = (0..r)
        .map(|j| basis.iter().map(|b| x_act(cs, lat, j, b)).collect())
        .collect();

    let mut keys: BTreeMap<(usize, usize, usize, Vec<u8>), usize> = BTreeMap::new();
    let mut cols: Vec<Vec<((usize, usize, usize, Vec<u8>), i64)>> = Vec::new();
    for &(v, w, m) in &unknowns {
        // phi sends xi_w to m xi_v and every other basis element to zero.
        let mono = GradedPolynomial::monomial(r, ring, m, 1);
        let mut col = Vec::new();
        for j in 0..r {
            for w2 in 0..n {
                let mut lhs = ModuleElement::zero(cs, lat, ring);
                if w2 == w {
                    lhs.coeffs[v] = mono.clone();
                    lhs = x_act(cs, lat, j, &lhs);
                }
                let c = &images[j][w2].coeffs[w];
                let mut rhs = ModuleElement::zero(cs, lat, ring);
                if !c.is_zero() {
                    rhs.coeffs[v] = c.mul(&mono);
                }
                let diff = lhs.sub(&rhs);
                for (u, f) in diff.coeffs.iter().enumerate() {
                    for (mm, &c) in f.terms() {
                        col.push(((j, w2, u, mm.0.to_vec()), c));
                    }
                }
            }
        }
        for (k, _) in &col {
            let len = keys.len();
            keys.entry(k.clone()).or_insert(len);
        }
        cols.push(col);
    }
    let mut rows = vec![vec![0u64; unknowns.len()]; keys.len()];
    for (k, col) in cols.iter().enumerate() {
        for (key, c) in col {
            let i = keys[key];
            rows[i][k] = (rows[i][k] + c.rem_euclid(p as i64) as u64) % p;
        }
    }
    let kernel = if rows.is_empty() {
        kernel_mod(vec![vec![0; unknowns.len()]], unknowns.len(), p)
    } else {
        kernel_mod(rows, unknowns.len(), p)
    };
    FullSolve { unknowns, kernel }
}

pub struct FullSolve {
    /// `(v, w, m)`: the coefficient of `m` in `a_{v,w}`.
    pub unknowns: Vec<(usize, usize, Monomial)>,
    pub kernel: Vec<Vec<u64>>,
}

impl FullSolve {
    pub fn dim(&self) -> usize {
        self.kernel.len()
    }

    /// Dimension of the span of the constant entries `a_{v,w}` with
    /// `l(v) = l(w)`, i.e. of the image in the degree-zero blocks.
    pub fn block_image_dim(&self, p: u64) -> usize {
        let cols: Vec<usize> = (0..self.unknowns.len())
            .filter(|&k| self.unknowns[k].2.degree() == 0)
            .collect();
        let rows = self.kernel.iter().map(|x| cols.iter().map(|&k| x[k]).collect()).collect();
        rank_mod(rows, p)
    }
}
