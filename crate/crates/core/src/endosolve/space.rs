use crate::error::{Error, Result};
use crate::linalg;
use crate::polyring::{CharacterLattice, CoefficientRing, GradedPolynomial, Op};
use crate::rootsys::CosetSystem;

/// A homogeneous polynomial whose coefficients depend linearly on a vector
/// of parameters: `sum_k x_k f_k` with every `f_k` of degree `degree`.
///
/// `cols[k]` is the coordinate vector of `f_k` in the monomial basis, or
/// empty when `f_k = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinPoly {
    pub degree: usize,
    pub cols: Vec<Vec<i64>>,
}

impl LinPoly {
    pub fn zero(degree: usize, nparams: usize) -> Self {
        LinPoly {
            degree,
            cols: vec![Vec::new(); nparams],
        }
    }

    pub fn nparams(&self) -> usize {
        self.cols.len()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(|&x| x == 0))
    }

    /// Nonzero columns only, so that parameter-free entries cost nothing.
    fn normalize(mut self) -> Self {
        for c in &mut self.cols {
            if c.iter().all(|&x| x == 0) {
                c.clear();
            }
        }
        self
    }

    pub fn apply_op(&self, lat: &CharacterLattice, op: Op, ring: CoefficientRing) -> LinPoly {
        if self.degree < op.degree_drop() {
            return LinPoly::zero(0, self.nparams());
        }
        let m = lat.op_matrix(op, self.degree);
        let cols = self
            .cols
            .iter()
            .map(|c| if c.is_empty() { Vec::new() } else { m.apply(c, ring) })
            .collect();
        LinPoly {
            degree: m.target_degree,
            cols,
        }
        .normalize()
    }

    pub fn add_assign(&mut self, other: &LinPoly, ring: CoefficientRing) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            return;
        }
        assert_eq!(self.degree, other.degree, "adding parametrized polynomials of different degree");
        for (a, b) in self.cols.iter_mut().zip(&other.cols) {
            if b.is_empty() {
                continue;
            }
            if a.is_empty() {
                *a = b.clone();
            } else {
                for (x, &y) in a.iter_mut().zip(b) {
                    *x = ring.add(*x, y);
                }
            }
        }
        for c in &mut self.cols {
            if !c.is_empty() && c.iter().all(|&x| x == 0) {
                c.clear();
            }
        }
    }

    pub fn neg(&self, ring: CoefficientRing) -> LinPoly {
        LinPoly {
            degree: self.degree,
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|&x| ring.neg(x)).collect())
                .collect(),
        }
    }

    /// Substitutes `x = K t`, where `kernel[t]` is the `t`-th column of `K`.
    pub fn reparametrize(&self, kernel: &[Vec<i64>], ring: CoefficientRing) -> LinPoly {
        let cols = kernel
            .iter()
            .map(|kv| {
                let mut acc: Vec<i64> = Vec::new();
                for (c, &s) in self.cols.iter().zip(kv) {
                    if s == 0 || c.is_empty() {
                        continue;
                    }
                    if acc.is_empty() {
                        acc = vec![0; c.len()];
                    }
                    for (a, &x) in acc.iter_mut().zip(c) {
                        *a = ring.add(*a, ring.mul(x, s));
                    }
                }
                acc
            })
            .collect();
        LinPoly {
            degree: self.degree,
            cols,
        }
        .normalize()
    }

    /// Value at a concrete parameter vector.
    pub fn evaluate(&self, lat: &CharacterLattice, x: &[i64], ring: CoefficientRing) -> GradedPolynomial {
        let n = lat.basis(self.degree).len();
        let mut acc = vec![0i64; n];
        for (c, &s) in self.cols.iter().zip(x) {
            if s == 0 || c.is_empty() {
                continue;
            }
            for (a, &v) in acc.iter_mut().zip(c) {
                *a = ring.add(*a, ring.mul(v, s));
            }
        }
        lat.from_coords(&acc, self.degree, ring)
    }

    /// `f_k` as a polynomial.
    pub fn param_poly(&self, lat: &CharacterLattice, k: usize, ring: CoefficientRing) -> GradedPolynomial {
        if self.cols[k].is_empty() {
            GradedPolynomial::zero(lat.rank(), ring)
        } else {
            lat.from_coords(&self.cols[k], self.degree, ring)
        }
    }

    /// Rows of the linear system `self = 0`, one per monomial.
    fn constraint_rows(&self, out: &mut Vec<Vec<i64>>) {
        let Some(len) = self.cols.iter().map(|c| c.len()).max() else {
            return;
        };
        for m in 0..len {
            let row: Vec<i64> = self
                .cols
                .iter()
                .map(|c| if c.is_empty() { 0 } else { c[m] })
                .collect();
            if row.iter().any(|&x| x != 0) {
                out.push(row);
            }
        }
    }
}

/// Parametrization of the first columns `(a_v)_{v in W^P}` of degree-zero
/// endomorphisms. Each `a_v` is homogeneous of degree `l(v)`. Parameter 0
/// is the identity endomorphism.
#[derive(Clone, Debug)]
pub struct FirstColumnSpace {
    pub ring: CoefficientRing,
    /// Reps whose entries are not forced by `a_v = -Delta_j(a_{s_j v})`.
    pub generators: Vec<usize>,
    /// For each derived rep, the `j` in `P` and the longer rep it comes from.
    pub derived_from: Vec<Option<(usize, usize)>>,
    /// Number of unknowns before solving (one per monomial of each generator).
    pub raw_unknowns: usize,
    /// Number of scalar constraints imposed.
    pub num_constraints: usize,
    pub entries: Vec<LinPoly>,
}

impl FirstColumnSpace {
    pub fn dim(&self) -> usize {
        self.entries.first().map_or(0, |e| e.nparams())
    }

    /// The column for a concrete parameter vector.
    pub fn column(&self, lat: &CharacterLattice, x: &[i64]) -> Vec<GradedPolynomial> {
        self.entries.iter().map(|e| e.evaluate(lat, x, self.ring)).collect()
    }
}

/// Solves the conditions `Delta_j(a_v) = -a_{s_j v}` (when `s_j v < v`) and
/// `Delta_j(a_v) = 0` (otherwise) for all `j` in `P`.
pub fn first_column_space(
    cs: &CosetSystem,
    lat: &CharacterLattice,
    ring: CoefficientRing,
) -> Result<FirstColumnSpace> {
    let n = cs.len();
    let parabolic: Vec<usize> = cs.parabolic().iter().copied().collect();

    let mut derived_from = vec![None; n];
    let mut generators = Vec::new();
    for v in 0..n {
        match parabolic.iter().find_map(|&j| cs.up(v, j).map(|u| (j, u))) {
            Some(d) => derived_from[v] = Some(d),
            None => generators.push(v),
        }
    }

    let mut offsets = Vec::with_capacity(generators.len());
    let mut raw = 0usize;
    for &g in &generators {
        offsets.push(raw);
        raw += lat.basis(cs.length(g)).len();
    }

    let mut entries: Vec<Option<LinPoly>> = vec![None; n];
    for (gi, &g) in generators.iter().enumerate() {
        let d = cs.length(g);
        let size = lat.basis(d).len();
        let mut e = LinPoly::zero(d, raw);
        for m in 0..size {
            let mut c = vec![0i64; size];
            c[m] = 1;
            e.cols[offsets[gi] + m] = c;
        }
        entries[g] = Some(e);
    }
    // Reps are sorted by length; the source of a derived entry is longer.
    for v in (0..n).rev() {
        if let Some((j, u)) = derived_from[v] {
            let src = entries[u].as_ref().expect("longer entries are filled first");
            entries[v] = Some(src.apply_op(lat, Op::Delta(j), ring).neg(ring));
        }
    }
    let entries: Vec<LinPoly> = entries.into_iter().map(|e| e.unwrap()).collect();

    let mut rows = Vec::new();
    for v in 0..n {
        for &j in &parabolic {
            let mut c = entries[v].apply_op(lat, Op::Delta(j), ring);
            if let Some(d) = cs.down(v, j) {
                c.add_assign(&entries[d], ring);
            }
            c.constraint_rows(&mut rows);
        }
    }
    let num_constraints = rows.len();

    // The scalar a_1 enters no constraint. Splitting it off makes parameter 0
    // the identity endomorphism.
    if rows.iter().any(|r| r[0] != 0) {
        return Err(Error::Invariant("the constant entry is constrained".into()));
    }
    let rest: Vec<Vec<i64>> = rows.into_iter().map(|r| r[1..].to_vec()).collect();
    let rest_kernel: Vec<Vec<i64>> = match ring {
        CoefficientRing::Integers => linalg::integer_kernel(&rest, raw - 1),
        CoefficientRing::PrimeField(p) => {
            let urows = rest
                .into_iter()
                .map(|r| r.into_iter().map(|x| ring.reduce(x) as u64).collect())
                .collect();
            linalg::kernel(urows, raw - 1, p)
                .into_iter()
                .map(|v| v.into_iter().map(|x| x as i64).collect())
                .collect()
        }
    };
    let mut unit = vec![0i64; raw];
    unit[0] = 1;
    let mut kernel = vec![unit];
    for k in rest_kernel {
        let mut v = Vec::with_capacity(raw);
        v.push(0);
        v.extend(k);
        kernel.push(v);
    }

    let entries = entries.iter().map(|e| e.reparametrize(&kernel, ring)).collect();
    let space = FirstColumnSpace {
        ring,
        generators,
        derived_from,
        raw_unknowns: raw,
        num_constraints,
        entries,
    };
    if space.entries.iter().any(|e| e.nparams() != kernel.len()) {
        return Err(Error::Invariant("parameter count mismatch".into()));
    }
    Ok(space)
}
