use super::space::{FirstColumnSpace, LinPoly};
use crate::error::{Error, Result};
use crate::nilhecke::{self, ModuleElement};
use crate::polyring::{CharacterLattice, CoefficientRing, GradedPolynomial, Op};
use crate::rootsys::CosetSystem;

/// `(a_{v,w})` with `phi(xi_w) = sum_v a_{v,w} xi_v`, indexed `[v][w]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndomorphismMatrix {
    pub entries: Vec<Vec<GradedPolynomial>>,
}

impl EndomorphismMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn identity(cs: &CosetSystem, lat: &CharacterLattice, ring: CoefficientRing) -> Self {
        let n = cs.len();
        let entries = (0..n)
            .map(|v| {
                (0..n)
                    .map(|w| {
                        if v == w {
                            GradedPolynomial::one(lat.rank(), ring)
                        } else {
                            GradedPolynomial::zero(lat.rank(), ring)
                        }
                    })
                    .collect()
            })
            .collect();
        EndomorphismMatrix { entries }
    }

    pub fn column(&self, w: usize) -> ModuleElement {
        ModuleElement {
            coeffs: self.entries.iter().map(|row| row[w].clone()).collect(),
        }
    }

    /// `phi(e)` for a module element `e`; endomorphisms are `S`-linear.
    pub fn apply(&self, e: &ModuleElement) -> ModuleElement {
        let n = self.size();
        let coeffs = (0..n)
            .map(|v| {
                let mut acc = GradedPolynomial::zero(e.coeffs[0].nvars(), e.coeffs[0].ring());
                for (u, c) in e.coeffs.iter().enumerate() {
                    if !c.is_zero() && !self.entries[v][u].is_zero() {
                        acc = acc.add(&self.entries[v][u].mul(c));
                    }
                }
                acc
            })
            .collect();
        ModuleElement { coeffs }
    }

    /// Matrix of `self o other`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.size();
        let cols: Vec<ModuleElement> = (0..n).map(|w| self.apply(&other.column(w))).collect();
        EndomorphismMatrix {
            entries: (0..n).map(|v| (0..n).map(|w| cols[w].coeffs[v].clone()).collect()).collect(),
        }
    }

    pub fn diagonal_constants(&self) -> Vec<i64> {
        (0..self.size()).map(|v| self.entries[v][v].constant_term()).collect()
    }

    /// Every entry with `l(v) < l(w)` vanishes and every other entry is
    /// homogeneous of degree `l(v) - l(w)`.
    pub fn check_degrees(&self, cs: &CosetSystem) -> Result<()> {
        for v in 0..self.size() {
            for w in 0..self.size() {
                let a = &self.entries[v][w];
                if a.is_zero() {
                    continue;
                }
                let ok = cs.length(v) >= cs.length(w)
                    && a.is_homogeneous()
                    && a.degree() == Some(cs.length(v) - cs.length(w));
                if !ok {
                    return Err(Error::Invariant(format!(
                        "entry ({}, {}) has the wrong degree",
                        cs.rep_name(v),
                        cs.rep_name(w)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `X_j (.) phi(xi_w) = phi(X_j (.) xi_w)` for all `j` and `w`.
    pub fn check_homomorphism(&self, cs: &CosetSystem, lat: &CharacterLattice) -> Result<()> {
        let ring = self.entries[0][0].ring();
        for w in 0..self.size() {
            let col = self.column(w);
            for j in 0..lat.rank() {
                let lhs = nilhecke::x_act(cs, lat, j, &col);
                let xw = nilhecke::x_act(cs, lat, j, &ModuleElement::basis(cs, lat, ring, w));
                let rhs = self.apply(&xw);
                if lhs != rhs {
                    return Err(Error::Invariant(format!(
                        "X_{} does not commute with the endomorphism on xi_{}",
                        j + 1,
                        cs.rep_name(w)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The whole endomorphism space: every entry as a parametrized polynomial.
#[derive(Clone, Debug)]
pub struct EndomorphismSpace {
    pub first_column: FirstColumnSpace,
    /// `entries[v][w]`.
    pub entries: Vec<Vec<LinPoly>>,
    /// For each `w != 1`, the edge `(j, w')` with `w = s_j w'` used to build it.
    pub built_from: Vec<Option<(usize, usize)>>,
}

fn x_act_lin(
    cs: &CosetSystem,
    lat: &CharacterLattice,
    j: usize,
    col: &[LinPoly],
    w_len: usize,
    ring: CoefficientRing,
) -> Vec<LinPoly> {
    let np = col[0].nparams();
    let mut out: Vec<LinPoly> = (0..cs.len())
        .map(|u| {
            let target = (cs.length(u) + 1).saturating_sub(w_len + 1);
            if cs.length(u) < w_len + 1 {
                LinPoly::zero(target, np)
            } else {
                col[u].apply_op(lat, Op::Delta(j), ring)
            }
        })
        .collect();
    for (v, e) in col.iter().enumerate() {
        if let Some(u) = cs.up(v, j) {
            if !e.is_zero() {
                let r = e.apply_op(lat, Op::Reflect(j), ring);
                out[u].add_assign(&r, ring);
            }
        }
    }
    out
}

/// Builds all columns from the first one along the weak Bruhat edges, and
/// checks that every other edge gives the same column and that `X_j`
/// annihilates the image of `xi_w` whenever it annihilates `xi_w`.
pub fn propagate(cs: &CosetSystem, lat: &CharacterLattice, first: FirstColumnSpace) -> Result<EndomorphismSpace> {
    let n = cs.len();
    let ring = first.ring;
    let mut cols: Vec<Option<Vec<LinPoly>>> = vec![None; n];
    let mut built_from = vec![None; n];
    cols[0] = Some(first.entries.clone());
    for w in 0..n {
        let col = cols[w]
            .clone()
            .ok_or_else(|| Error::Invariant(format!("no edge reaches {}", cs.rep_name(w))))?;
        let wl = cs.length(w);
        for j in 0..lat.rank() {
            let img = x_act_lin(cs, lat, j, &col, wl, ring);
            match cs.up(w, j) {
                Some(u) => match &cols[u] {
                    None => {
                        cols[u] = Some(img);
                        built_from[u] = Some((j, w));
                    }
                    Some(prev) => {
                        if !same_column(prev, &img) {
                            return Err(Error::Invariant(format!(
                                "two paths to column {} disagree",
                                cs.rep_name(u)
                            )));
                        }
                    }
                },
                None => {
                    if !img.iter().all(|e| e.is_zero()) {
                        return Err(Error::Invariant(format!(
                            "X_{} does not annihilate the image of xi_{}",
                            j + 1,
                            cs.rep_name(w)
                        )));
                    }
                }
            }
        }
    }
    let cols: Vec<Vec<LinPoly>> = cols.into_iter().map(|c| c.unwrap()).collect();
    let entries = (0..n).map(|v| (0..n).map(|w| cols[w][v].clone()).collect()).collect();
    Ok(EndomorphismSpace {
        first_column: first,
        entries,
        built_from,
    })
}

fn same_column(a: &[LinPoly], b: &[LinPoly]) -> bool {
    a.iter().zip(b).all(|(x, y)| {
        if x.is_zero() || y.is_zero() {
            x.is_zero() && y.is_zero()
        } else {
            x == y
        }
    })
}

impl EndomorphismSpace {
    pub fn ring(&self) -> CoefficientRing {
        self.first_column.ring
    }

    pub fn dim(&self) -> usize {
        self.first_column.dim()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn instance(&self, lat: &CharacterLattice, x: &[i64]) -> EndomorphismMatrix {
        let ring = self.ring();
        EndomorphismMatrix {
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|e| e.evaluate(lat, x, ring)).collect())
                .collect(),
        }
    }

    /// Constant term of `a_{v,w}` as a linear form in the parameters; only
    /// meaningful when `l(v) = l(w)`.
    pub fn constant_form(&self, v: usize, w: usize) -> Vec<i64> {
        self.entries[v][w]
            .cols
            .iter()
            .map(|c| c.first().copied().unwrap_or(0))
            .collect()
    }

    /// Parameters of the identity endomorphism.
    pub fn identity_params(&self) -> Vec<i64> {
        let mut x = vec![0i64; self.dim()];
        x[0] = 1;
        x
    }
}
