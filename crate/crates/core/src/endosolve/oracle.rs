//! Exhaustive search for idempotents modulo `p`.
//!
//! An endomorphism is determined by its first column, so `phi` is
//! idempotent iff `sum_u a_u a_{v,u} = a_v` for all `v`. In the parameters
//! `x` this is a vector quadratic `Q(x) = sum_{k,l} x_k x_l B_kl - sum_k x_k L_k`.
//! The search walks `F_p^m` in modular Gray code order, so each step moves one
//! coordinate by `+1` and updates `Q` with a few vector additions.

use std::collections::BTreeSet;

use serde::Serialize;

use super::matrix::EndomorphismSpace;
use crate::error::{Error, Result};
use crate::polyring::{CharacterLattice, CoefficientRing, GradedPolynomial};
use crate::rootsys::CosetSystem;

pub const DEFAULT_ORACLE_CAP: usize = 22;
/// Idempotents listed individually in a report.
const LISTED: usize = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    /// Splits the search over the top coordinates with rayon. Falls back to
    /// sequential when the `parallel` feature is off.
    #[default]
    Parallel,
}

trait Vector: Clone + Send + Sync {
    fn add_scaled(&mut self, other: &Self, c: u64);
    fn is_zero(&self) -> bool;
}

#[derive(Clone)]
struct Gf2(Vec<u64>);

impl Vector for Gf2 {
    fn add_scaled(&mut self, other: &Self, c: u64) {
        if c & 1 == 1 {
            for (a, b) in self.0.iter_mut().zip(&other.0) {
                *a ^= b;
            }
        }
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
}

#[derive(Clone)]
struct Fp {
    v: Vec<u32>,
    p: u32,
}

impl Vector for Fp {
    fn add_scaled(&mut self, other: &Self, c: u64) {
        let c = (c % self.p as u64) as u32;
        if c == 0 {
            return;
        }
        for (a, &b) in self.v.iter_mut().zip(&other.v) {
            *a = ((*a as u64 + c as u64 * b as u64) % self.p as u64) as u32;
        }
    }

    fn is_zero(&self) -> bool {
        self.v.iter().all(|&x| x == 0)
    }
}

/// The quadratic system in a field-specific vector representation.
struct Quadratic<V> {
    m: usize,
    p: u64,
    b: Vec<Vec<V>>,
    /// `D_st = B_st + B_ts`.
    d: Vec<Vec<V>>,
    /// `C_t = B_tt - L_t`.
    c: Vec<V>,
    l: Vec<V>,
    zero: V,
}

impl<V: Vector> Quadratic<V> {
    fn new(b: Vec<Vec<V>>, l: Vec<V>, zero: V, p: u64) -> Self {
        let m = l.len();
        let d = (0..m)
            .map(|s| {
                (0..m)
                    .map(|t| {
                        let mut x = b[s][t].clone();
                        x.add_scaled(&b[t][s], 1);
                        x
                    })
                    .collect()
            })
            .collect();
        let c = (0..m)
            .map(|t| {
                let mut x = b[t][t].clone();
                x.add_scaled(&l[t], p - 1);
                x
            })
            .collect();
        Quadratic { m, p, b, d, c, l, zero }
    }

    /// Searches all `x` whose top `prefix.len()` coordinates equal `prefix`.
    fn search(&self, prefix: &[u64]) -> Vec<Vec<u64>> {
        let m = self.m;
        let low = m - prefix.len();
        let mut x = vec![0u64; m];
        x[low..].copy_from_slice(prefix);

        let mut q = self.zero.clone();
        for k in 0..m {
            if x[k] == 0 {
                continue;
            }
            for l in 0..m {
                if x[l] != 0 {
                    q.add_scaled(&self.b[k][l], x[k] * x[l]);
                }
            }
            q.add_scaled(&self.l[k], (self.p - 1) * x[k]);
        }
        let mut r: Vec<V> = (0..low)
            .map(|t| {
                let mut acc = self.zero.clone();
                for l in 0..m {
                    if x[l] != 0 {
                        acc.add_scaled(&self.d[t][l], x[l]);
                    }
                }
                acc
            })
            .collect();

        let mut found = Vec::new();
        if q.is_zero() {
            found.push(x.clone());
        }
        let steps = self.p.pow(low as u32);
        for i in 1..steps {
            let mut t = 0;
            let mut k = i;
            while k % self.p == 0 {
                k /= self.p;
                t += 1;
            }
            q.add_scaled(&r[t], 1);
            q.add_scaled(&self.c[t], 1);
            for (s, rs) in r.iter_mut().enumerate() {
                rs.add_scaled(&self.d[s][t], 1);
            }
            x[t] = (x[t] + 1) % self.p;
            if q.is_zero() {
                found.push(x.clone());
            }
        }
        found
    }

    fn run(&self, par: Parallelism) -> Vec<Vec<u64>> {
        let p = self.p;
        // Enough prefixes to keep every worker busy.
        let mut h = 0;
        while h < self.m && p.pow(h as u32) < 256 {
            h += 1;
        }
        let prefixes: Vec<Vec<u64>> = (0..p.pow(h as u32))
            .map(|mut i| {
                let mut v = vec![0u64; h];
                for d in v.iter_mut() {
                    *d = i % p;
                    i /= p;
                }
                v
            })
            .collect();
        let mut out: Vec<Vec<u64>> = match par {
            #[cfg(feature = "parallel")]
            Parallelism::Parallel => {
                use rayon::prelude::*;
                prefixes.par_iter().flat_map_iter(|pre| self.search(pre)).collect()
            }
            _ => prefixes.iter().flat_map(|pre| self.search(pre)).collect(),
        };
        out.sort();
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleIdempotent {
    pub params: Vec<u64>,
    pub diagonal: Vec<u64>,
    /// `zero`, `identity`, or absent.
    pub trivial: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub prime: u64,
    pub dim: usize,
    pub searched: u64,
    pub idempotent_count: usize,
    pub nontrivial_count: usize,
    /// Distinct diagonals of idempotents, by rep.
    pub diagonal_patterns: Vec<Vec<u64>>,
    /// The first idempotents in parameter order.
    pub listed: Vec<OracleIdempotent>,
    #[serde(skip)]
    pub all_params: Vec<Vec<u64>>,
}

impl OracleReport {
    /// Every diagonal pattern is constant on each class.
    pub fn refines(&self, classes: &[Vec<usize>]) -> bool {
        self.diagonal_patterns
            .iter()
            .all(|d| classes.iter().all(|c| c.iter().all(|&v| d[v] == d[c[0]])))
    }
}

/// `p^dim <= 2^cap`.
pub fn within_cap(p: u64, dim: usize, cap: usize) -> bool {
    (dim as f64) * (p as f64).log2() <= cap as f64 + 1e-9
}

fn coords(lat: &CharacterLattice, f: &GradedPolynomial, degree: usize, p: u64) -> Vec<u64> {
    if f.is_zero() {
        return vec![0; lat.basis(degree).len()];
    }
    lat.to_coords(f, degree)
        .into_iter()
        .map(|x| x.rem_euclid(p as i64) as u64)
        .collect()
}

pub fn idempotent_oracle(
    cs: &CosetSystem,
    lat: &CharacterLattice,
    space: &EndomorphismSpace,
    cap: usize,
) -> Result<OracleReport> {
    idempotent_oracle_with(cs, lat, space, cap, Parallelism::default())
}

pub fn idempotent_oracle_with(
    cs: &CosetSystem,
    lat: &CharacterLattice,
    space: &EndomorphismSpace,
    cap: usize,
    par: Parallelism,
) -> Result<OracleReport> {
    let ring = space.ring();
    let p = match ring {
        CoefficientRing::PrimeField(p) => p,
        CoefficientRing::Integers => return Err(Error::Config("the oracle needs a prime field".into())),
    };
    let m = space.dim();
    if !within_cap(p, m, cap) {
        return Err(Error::OracleCap {
            required: m,
            cap,
            prime: p,
        });
    }
    let n = cs.len();
    let first: Vec<Vec<GradedPolynomial>> = (0..m)
        .map(|k| {
            (0..n)
                .map(|u| space.first_column.entries[u].param_poly(lat, k, ring))
                .collect()
        })
        .collect();
    let entry = |v: usize, u: usize, l: usize| space.entries[v][u].param_poly(lat, l, ring);

    let flat_l: Vec<Vec<u64>> = (0..m)
        .map(|k| {
            (0..n)
                .flat_map(|v| coords(lat, &first[k][v], cs.length(v), p))
                .collect()
        })
        .collect();
    let mut flat_b = vec![vec![Vec::new(); m]; m];
    let matrix_polys: Vec<Vec<Vec<GradedPolynomial>>> = (0..m)
        .map(|l| (0..n).map(|v| (0..n).map(|u| entry(v, u, l)).collect()).collect())
        .collect();
    for k in 0..m {
        for l in 0..m {
            let mut flat = Vec::new();
            for v in 0..n {
                let mut acc = GradedPolynomial::zero(lat.rank(), ring);
                for u in 0..n {
                    let a = &first[k][u];
                    let b = &matrix_polys[l][v][u];
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                flat.extend(coords(lat, &acc, cs.length(v), p));
            }
            flat_b[k][l] = flat;
        }
    }

    let params = if p == 2 {
        let pack = |v: &[u64]| {
            let mut w = vec![0u64; v.len().div_ceil(64)];
            for (i, &x) in v.iter().enumerate() {
                if x & 1 == 1 {
                    w[i / 64] |= 1 << (i % 64);
                }
            }
            Gf2(w)
        };
        let len = flat_l.first().map_or(0, |v| v.len());
        let q = Quadratic::new(
            flat_b.iter().map(|row| row.iter().map(|v| pack(v)).collect()).collect(),
            flat_l.iter().map(|v| pack(v)).collect(),
            pack(&vec![0; len]),
            2,
        );
        q.run(par)
    } else {
        let conv = |v: &[u64]| Fp {
            v: v.iter().map(|&x| x as u32).collect(),
            p: p as u32,
        };
        let len = flat_l.first().map_or(0, |v| v.len());
        let q = Quadratic::new(
            flat_b.iter().map(|row| row.iter().map(|v| conv(v)).collect()).collect(),
            flat_l.iter().map(|v| conv(v)).collect(),
            conv(&vec![0; len]),
            p,
        );
        q.run(par)
    };

    let diag_forms: Vec<Vec<i64>> = (0..n).map(|v| space.constant_form(v, v)).collect();
    let diagonal = |x: &[u64]| -> Vec<u64> {
        diag_forms
            .iter()
            .map(|f| {
                f.iter()
                    .zip(x)
                    .fold(0u64, |acc, (&a, &b)| (acc + (a.rem_euclid(p as i64) as u64) * b) % p)
            })
            .collect()
    };
    let identity: Vec<u64> = space.identity_params().iter().map(|&x| x as u64).collect();
    let mut patterns = BTreeSet::new();
    let mut listed = Vec::new();
    let mut nontrivial = 0;
    for x in &params {
        let d = diagonal(x);
        let trivial = if x.iter().all(|&c| c == 0) {
            Some("zero".to_string())
        } else if *x == identity {
            Some("identity".to_string())
        } else {
            nontrivial += 1;
            None
        };
        patterns.insert(d.clone());
        if listed.len() < LISTED {
            listed.push(OracleIdempotent {
                params: x.clone(),
                diagonal: d,
                trivial,
            });
        }
    }
    Ok(OracleReport {
        prime: p,
        dim: m,
        searched: p.pow(m as u32),
        idempotent_count: params.len(),
        nontrivial_count: nontrivial,
        diagonal_patterns: patterns.into_iter().collect(),
        listed,
        all_params: params,
    })
}
