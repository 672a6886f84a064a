//! Dense linear algebra over `F_p` (with a bit-packed path for `p = 2`)
//! and integer kernels.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::polyring::pow_mod;

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Bit-packed rows over `F_2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitRow(pub Vec<u64>);

impl BitRow {
    pub fn zeros(n: usize) -> Self {
        BitRow(vec![0; n.div_ceil(64)])
    }

    pub fn from_values(v: &[u64]) -> Self {
        let mut r = Self::zeros(v.len());
        for (k, &x) in v.iter().enumerate() {
            if x & 1 == 1 {
                r.set(k);
            }
        }
        r
    }

    #[inline]
    pub fn get(&self, k: usize) -> bool {
        self.0[k / 64] >> (k % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, k: usize) {
        self.0[k / 64] |= 1 << (k % 64);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn to_values(&self, n: usize) -> Vec<u64> {
        (0..n).map(|k| self.get(k) as u64).collect()
    }
}

/// Incremental row echelon form over `F_p`. Rows are reduced as they are
/// pushed, so dependent rows never need to be stored.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    p: u64,
    rows: EchelonRows,
}

#[derive(Clone, Debug)]
enum EchelonRows {
    Gf2(Vec<(usize, BitRow)>),
    Fp(Vec<(usize, Vec<u64>)>),
}

fn sub_scaled(r: &mut [u64], pr: &[u64], f: u64, from: usize, p: u64) {
    for (x, &y) in r.iter_mut().zip(pr).skip(from) {
        *x = (*x + (p - f) * y) % p;
    }
}

impl Echelon {
    pub fn new(ncols: usize, p: u64) -> Self {
        let rows = if p == 2 {
            EchelonRows::Gf2(Vec::new())
        } else {
            EchelonRows::Fp(Vec::new())
        };
        Echelon { ncols, p, rows }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        match &self.rows {
            EchelonRows::Gf2(r) => r.len(),
            EchelonRows::Fp(r) => r.len(),
        }
    }

    /// Adds a row; returns whether it was independent of the previous ones.
    pub fn push(&mut self, row: &[u64]) -> bool {
        assert_eq!(row.len(), self.ncols);
        let p = self.p;
        match &mut self.rows {
            EchelonRows::Gf2(rows) => {
                let mut r = BitRow::from_values(row);
                for (pc, pr) in rows.iter() {
                    if r.get(*pc) {
                        r.xor_assign(pr);
                    }
                }
                match (0..self.ncols).find(|&c| r.get(c)) {
                    None => false,
                    Some(lead) => {
                        let at = rows.partition_point(|(c, _)| *c < lead);
                        rows.insert(at, (lead, r));
                        true
                    }
                }
            }
            EchelonRows::Fp(rows) => {
                let mut r: Vec<u64> = row.iter().map(|x| x % p).collect();
                for (pc, pr) in rows.iter() {
                    let f = r[*pc];
                    if f != 0 {
                        sub_scaled(&mut r, pr, f, *pc, p);
                    }
                }
                match r.iter().position(|&x| x != 0) {
                    None => false,
                    Some(lead) => {
                        let inv = inv_mod(r[lead], p);
                        for x in r.iter_mut() {
                            *x = *x * inv % p;
                        }
                        let at = rows.partition_point(|(c, _)| *c < lead);
                        rows.insert(at, (lead, r));
                        true
                    }
                }
            }
        }
    }

    /// Whether `row` lies in the span of the pushed rows.
    pub fn contains(&self, row: &[u64]) -> bool {
        let mut tmp = self.clone();
        !tmp.push(row)
    }

    /// Reduced row echelon form: rows and their pivot columns.
    pub fn into_rref(self) -> (Vec<Vec<u64>>, Vec<usize>) {
        let p = self.p;
        let n = self.ncols;
        match self.rows {
            EchelonRows::Gf2(mut rows) => {
                for k in (0..rows.len()).rev() {
                    let (pc, pr) = rows[k].clone();
                    for row in rows[..k].iter_mut() {
                        if row.1.get(pc) {
                            row.1.xor_assign(&pr);
                        }
                    }
                }
                let pivots = rows.iter().map(|r| r.0).collect();
                (rows.into_iter().map(|r| r.1.to_values(n)).collect(), pivots)
            }
            EchelonRows::Fp(mut rows) => {
                for k in (0..rows.len()).rev() {
                    let (pc, pr) = rows[k].clone();
                    for row in rows[..k].iter_mut() {
                        let f = row.1[pc];
                        if f != 0 {
                            sub_scaled(&mut row.1, &pr, f, pc, p);
                        }
                    }
                }
                let pivots = rows.iter().map(|r| r.0).collect();
                (rows.into_iter().map(|r| r.1).collect(), pivots)
            }
        }
    }
}

/// Reduced row echelon form over `F_p`. Zero rows are dropped; returns the
/// rows and their pivot columns (strictly increasing).
pub fn rref(rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut e = Echelon::new(ncols, p);
    for r in &rows {
        e.push(r);
    }
    e.into_rref()
}

/// Kernel from an already reduced system.
pub fn kernel_from_rref(r: &[Vec<u64>], pivots: &[usize], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut is_pivot = vec![false; ncols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0u64; ncols];
            v[free] = 1;
            for (row, &pc) in r.iter().zip(pivots) {
                v[pc] = (p - row[free]) % p;
            }
            v
        })
        .collect()
}

/// Basis of the right kernel `{x : M x = 0}` over `F_p`, one vector per
/// free column (in column order), with a 1 at that column.
pub fn kernel(rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let (r, pivots) = rref(rows, ncols, p);
    kernel_from_rref(&r, &pivots, ncols, p)
}

pub fn rank(rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> usize {
    rref(rows, ncols, p).1.len()
}

/// Solves `x * B = target` for `x` given the rows of `B` over `F_p`.
pub fn solve_combination(basis: &[Vec<u64>], target: &[u64], p: u64) -> Option<Vec<u64>> {
    let n = basis.len();
    let m = target.len();
    // Columns of the augmented system are basis vectors; rows are coordinates.
    let rows: Vec<Vec<u64>> = (0..m)
        .map(|c| {
            let mut r: Vec<u64> = basis.iter().map(|b| b[c] % p).collect();
            r.push((p - target[c] % p) % p);
            r
        })
        .collect();
    let ker = kernel(rows, n + 1, p);
    let v = ker.into_iter().find(|v| v[n] != 0)?;
    let inv = inv_mod(v[n], p);
    Some(v[..n].iter().map(|x| x * inv % p).collect())
}

/// A `Z`-basis of `{x in Z^n : M x = 0}`. Variables with a unit coefficient
/// are eliminated exactly; the rest goes through unimodular column
/// operations, one constraint at a time.
pub fn integer_kernel(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let rows: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    sparse_integer_kernel(&rows, ncols)
}

type SparseRow = BTreeMap<usize, BigInt>;

fn axpy(target: &mut SparseRow, q: &BigInt, src: &SparseRow) {
    for (c, y) in src {
        let e = target.entry(*c).or_insert_with(BigInt::zero);
        *e += q * y;
        if e.is_zero() {
            target.remove(c);
        }
    }
}

/// Eliminates variables with a unit coefficient first (exact over `Z`), then
/// hands the remaining rows, on the surviving variables, to the dense
/// Euclid elimination.
fn sparse_integer_kernel(rows: &[&[i64]], ncols: usize) -> Vec<Vec<i64>> {
    let mut rows: Vec<SparseRow> = rows
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(c, &x)| (c, BigInt::from(x)))
                .collect()
        })
        .collect();
    // (variable, its value in terms of variables still alive at that time)
    let mut eliminated: Vec<(usize, SparseRow)> = Vec::new();
    let mut alive = vec![true; ncols];
    let mut done = vec![false; rows.len()];
    let unit = |r: &SparseRow| r.iter().find(|(_, x)| x.magnitude().is_one()).map(|(c, x)| (*c, x.clone()));
    // Rounds of pivots, shortest rows first to limit fill-in.
    loop {
        let mut order: Vec<usize> = (0..rows.len())
            .filter(|&k| !done[k] && !rows[k].is_empty() && unit(&rows[k]).is_some())
            .collect();
        if order.is_empty() {
            break;
        }
        order.sort_by_key(|&k| rows[k].len());
        for k in order {
            let Some((a, u)) = unit(&rows[k]) else { continue };
            done[k] = true;
            // u x_a + rest = 0, so x_a = -u * rest.
            let mut expr = std::mem::take(&mut rows[k]);
            expr.remove(&a);
            let neg_u = -u;
            for v in expr.values_mut() {
                *v *= &neg_u;
            }
            for (j, r) in rows.iter_mut().enumerate() {
                if done[j] {
                    continue;
                }
                if let Some(q) = r.remove(&a) {
                    axpy(r, &q, &expr);
                }
            }
            alive[a] = false;
            eliminated.push((a, expr));
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|&c| alive[c]).collect();
    let index: BTreeMap<usize, usize> = free.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let rest: Vec<Vec<(usize, BigInt)>> = rows
        .iter()
        .enumerate()
        .filter(|(k, r)| !done[*k] && !r.is_empty())
        .map(|(_, r)| r.iter().map(|(c, x)| (index[c], x.clone())).collect())
        .collect();
    let small = sieved_kernel(&rest, free.len());
    let mut out: Vec<Vec<BigInt>> = small
        .into_iter()
        .map(|v| {
            let mut full = vec![BigInt::zero(); ncols];
            for (k, x) in v.into_iter().enumerate() {
                full[free[k]] = x;
            }
            for (a, expr) in eliminated.iter().rev() {
                full[*a] = expr.iter().map(|(c, y)| &full[*c] * y).sum();
            }
            full
        })
        .collect();
    hermite_reduce(&mut out);
    out.into_iter()
        .map(|v| {
            v.iter()
                .map(|x| x.to_i64().expect("kernel entry exceeds i64"))
                .collect()
        })
        .collect()
}

/// Large prime used to pick independent rows before the integer
/// elimination; products stay below 2^64.
const SIEVE_PRIME: u64 = 4_294_967_291;

/// Integer vectors killed by a spanning set of rows are killed by all of
/// them, so only rows independent mod a large prime are eliminated. A row
/// wrongly dropped (rank loss mod p) is caught afterwards and added back.
fn sieved_kernel(rows: &[Vec<(usize, BigInt)>], ncols: usize) -> Vec<Vec<BigInt>> {
    let p = BigInt::from(SIEVE_PRIME);
    let mut ech = Echelon::new(ncols, SIEVE_PRIME);
    let mut chosen: Vec<usize> = Vec::new();
    for (k, row) in rows.iter().enumerate() {
        let mut dense = vec![0u64; ncols];
        for (c, x) in row {
            dense[*c] = x.mod_floor(&p).to_u64().expect("reduced mod p");
        }
        if ech.push(&dense) {
            chosen.push(k);
        }
    }
    loop {
        let picked: Vec<Vec<(usize, BigInt)>> = chosen.iter().map(|&k| rows[k].clone()).collect();
        let basis = integer_kernel_of(&picked, ncols);
        let missed: Vec<usize> = (0..rows.len())
            .filter(|&k| {
                basis
                    .iter()
                    .any(|b| !rows[k].iter().map(|(c, y)| &b[*c] * y).sum::<BigInt>().is_zero())
            })
            .collect();
        if missed.is_empty() {
            return basis;
        }
        chosen.extend(missed);
    }
}

fn integer_kernel_of(rows: &[Vec<(usize, BigInt)>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut basis: Vec<Vec<BigInt>> = (0..ncols)
        .map(|k| {
            let mut v = vec![BigInt::zero(); ncols];
            v[k] = BigInt::one();
            v
        })
        .collect();
    let mut bound = 64;
    for row in rows {
        if basis.is_empty() {
            break;
        }
        let support = row;
        let mut vals: Vec<BigInt> = basis
            .iter()
            .map(|b| support.iter().map(|(c, y)| &b[*c] * y).sum())
            .collect();
        // Euclid on the values, mirrored on the basis vectors, until at most
        // one value is nonzero.
        loop {
            let nonzero: Vec<usize> = (0..vals.len()).filter(|&k| !vals[k].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&k) = nonzero.first() {
                    basis.remove(k);
                }
                // Reduce only when the entries have doubled in size.
                if basis.iter().flatten().any(|x| x.bits() > bound) {
                    hermite_reduce(&mut basis);
                    bound = 2 * basis.iter().flatten().map(|x| x.bits()).max().unwrap_or(0) + 64;
                }
                break;
            }
            let piv = *nonzero.iter().min_by_key(|&&k| vals[k].abs()).unwrap();
            for &k in &nonzero {
                if k == piv {
                    continue;
                }
                // Nearest quotient keeps remainders at most half the pivot.
                let pv2: BigInt = &vals[piv] * 2i32;
                let q: BigInt = (&vals[k] * 2i32 + &vals[piv]).div_floor(&pv2);
                if q.is_zero() {
                    continue;
                }
                let pv = vals[piv].clone();
                vals[k] -= &q * pv;
                let pb = basis[piv].clone();
                for (x, y) in basis[k].iter_mut().zip(&pb) {
                    if !y.is_zero() {
                        *x -= &q * y;
                    }
                }
            }
        }
    }
    hermite_reduce(&mut basis);
    basis
}

/// Row-style Hermite reduction of a lattice basis (keeps the lattice, makes
/// the output canonical and usually small).
fn hermite_reduce(b: &mut [Vec<BigInt>]) {
    if b.is_empty() {
        return;
    }
    let n = b[0].len();
    let mut r = 0;
    for col in 0..n {
        if r == b.len() {
            break;
        }
        while let Some(piv) = (r..b.len())
            .filter(|&k| !b[k][col].is_zero())
            .min_by_key(|&k| b[k][col].magnitude().clone())
        {
            b.swap(r, piv);
            let (head, tail) = b.split_at_mut(r + 1);
            let pr = &head[r];
            let mut done = true;
            for row in tail.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let q = row[col].div_floor(&pr[col]);
                sub_multiple(row, &q, pr, col);
                if !row[col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if b[r][col].is_zero() {
            continue;
        }
        if b[r][col].is_negative() {
            for x in b[r].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        let (head, tail) = b.split_at_mut(r);
        let pr = &tail[0];
        for row in head.iter_mut() {
            let q = row[col].div_floor(&pr[col]);
            if !q.is_zero() {
                sub_multiple(row, &q, pr, col);
            }
        }
        r += 1;
    }
}

/// `row -= q * pr`, where `pr` vanishes before `from`.
fn sub_multiple(row: &mut [BigInt], q: &BigInt, pr: &[BigInt], from: usize) {
    for (x, y) in row[from..].iter_mut().zip(&pr[from..]) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn to_fp(v: &[i64], p: u64) -> Vec<u64> {
        v.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()
    }

    proptest! {
        #[test]
        fn integer_kernel_is_a_saturated_kernel(
            m in prop::collection::vec(prop::collection::vec(-6i64..=6, 7), 0..6)
        ) {
            let n = 7;
            let ker = integer_kernel(&m, n);
            for v in &ker {
                for r in &m {
                    prop_assert_eq!(v.iter().zip(r).map(|(a, b)| a * b).sum::<i64>(), 0);
                }
            }
            let big = 4_294_967_291;
            let q_rank = rank(m.iter().map(|r| to_fp(r, big)).collect(), n, big);
            prop_assert_eq!(ker.len(), n - q_rank);
            // Saturated: the basis stays independent modulo every prime.
            for p in [2u64, 3, 5, 7, 11, 13] {
                prop_assert_eq!(rank(ker.iter().map(|v| to_fp(v, p)).collect(), n, p), ker.len());
            }
        }
    }

    #[test]
    fn rref_small() {
        let (r, piv) = rref(vec![vec![1, 2, 3], vec![2, 4, 1]], 3, 7);
        assert_eq!(piv, vec![0, 2]);
        assert_eq!(r, vec![vec![1, 2, 0], vec![0, 0, 1]]);
        let (r2, piv2) = rref(vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]], 3, 2);
        assert_eq!(piv2, vec![0, 1]);
        assert_eq!(r2, vec![vec![1, 0, 1], vec![0, 1, 1]]);
    }

    #[test]
    fn kernel_is_annihilated() {
        let m = vec![vec![1, 2, 0, 1], vec![0, 1, 1, 2]];
        for p in [2, 3, 7] {
            for v in kernel(m.clone(), 4, p) {
                for row in &m {
                    let s: u64 = row.iter().zip(&v).map(|(a, b)| a * b).sum();
                    assert_eq!(s % p, 0);
                }
            }
        }
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // 2x - 2y = 0 has kernel spanned by (1, 1) over Z, not (2, 2).
        let k = integer_kernel(&[vec![2, -2, 0]], 3);
        assert_eq!(k, vec![vec![1, 1, 0], vec![0, 0, 1]]);
        let k = integer_kernel(&[vec![2, 3, 5]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(2 * v[0] + 3 * v[1] + 5 * v[2], 0);
        }
        assert!(integer_kernel(&[vec![1, 0], vec![0, 1]], 2).is_empty());
    }

    #[test]
    fn combination() {
        let basis = vec![vec![1, 0, 1], vec![0, 1, 1]];
        assert_eq!(solve_combination(&basis, &[1, 1, 2], 3), Some(vec![1, 1]));
        assert_eq!(solve_combination(&basis, &[1, 1, 1], 3), None);
    }
}
