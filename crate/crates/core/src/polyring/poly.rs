use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maximum number of lattice variables; equal to the default rank cap.
pub const MAX_VARS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientRing {
    Integers,
    PrimeField(u64),
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoefficientRing::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            CoefficientRing::Integers => 0,
            CoefficientRing::PrimeField(p) => p,
        }
    }

    #[inline]
    pub fn reduce(self, c: i64) -> i64 {
        match self {
            CoefficientRing::Integers => c,
            CoefficientRing::PrimeField(p) => c.rem_euclid(p as i64),
        }
    }

    #[inline]
    pub fn add(self, a: i64, b: i64) -> i64 {
        match self {
            CoefficientRing::Integers => a.checked_add(b).expect("integer coefficient overflow"),
            CoefficientRing::PrimeField(p) => (a + b).rem_euclid(p as i64),
        }
    }

    #[inline]
    pub fn mul(self, a: i64, b: i64) -> i64 {
        match self {
            CoefficientRing::Integers => a.checked_mul(b).expect("integer coefficient overflow"),
            CoefficientRing::PrimeField(p) => {
                ((a as i128 * b as i128).rem_euclid(p as i128)) as i64
            }
        }
    }

    #[inline]
    pub fn neg(self, a: i64) -> i64 {
        self.reduce(-a)
    }

    pub fn inverse(self, a: i64) -> Option<i64> {
        match self {
            CoefficientRing::Integers => match a {
                1 | -1 => Some(a),
                _ => None,
            },
            CoefficientRing::PrimeField(p) => {
                let a = a.rem_euclid(p as i64);
                if a == 0 {
                    return None;
                }
                Some(pow_mod(a as u64, p - 2, p) as i64)
            }
        }
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => f.write_str("Z"),
            CoefficientRing::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then the exponent of the first variable, and so on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u8; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn var(k: usize) -> Self {
        let mut m = Self::one();
        m.0[k] = 1;
        m
    }

    pub fn from_exponents(exps: &[u8]) -> Self {
        let mut m = Self::one();
        m.0[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn exp(&self, k: usize) -> u8 {
        self.0[k]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a = a.checked_add(b).expect("exponent overflow");
        }
        out
    }

    pub fn with_exp(&self, k: usize, e: u8) -> Monomial {
        let mut out = *self;
        out.0[k] = e;
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of degree `d` in `nvars` variables, in descending order.
pub fn monomials_of_degree(nvars: usize, d: usize) -> Vec<Monomial> {
    fn rec(k: usize, nvars: usize, left: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if k + 1 == nvars {
            cur.0[k] = left as u8;
            out.push(*cur);
            cur.0[k] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur.0[k] = e as u8;
            rec(k + 1, nvars, left - e, cur, out);
        }
        cur.0[k] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(0, nvars, d, &mut Monomial::one(), &mut out);
    out
}

/// A polynomial over `Z` or `F_p` in the basis variables of a character
/// lattice. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedPolynomial {
    nvars: usize,
    ring: CoefficientRing,
    terms: BTreeMap<Monomial, i64>,
}

impl GradedPolynomial {
    pub fn zero(nvars: usize, ring: CoefficientRing) -> Self {
        assert!(nvars <= MAX_VARS);
        GradedPolynomial {
            nvars,
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, ring: CoefficientRing, c: i64) -> Self {
        Self::monomial(nvars, ring, Monomial::one(), c)
    }

    pub fn one(nvars: usize, ring: CoefficientRing) -> Self {
        Self::constant(nvars, ring, 1)
    }

    pub fn var(nvars: usize, ring: CoefficientRing, k: usize) -> Self {
        Self::monomial(nvars, ring, Monomial::var(k), 1)
    }

    pub fn monomial(nvars: usize, ring: CoefficientRing, m: Monomial, c: i64) -> Self {
        let mut p = Self::zero(nvars, ring);
        p.add_term(m, c);
        p
    }

    /// The linear form `sum coeffs[k] * x_k`.
    pub fn linear(ring: CoefficientRing, coeffs: &[i64]) -> Self {
        let mut p = Self::zero(coeffs.len(), ring);
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(k), c);
        }
        p
    }

    pub fn from_terms(
        nvars: usize,
        ring: CoefficientRing,
        terms: impl IntoIterator<Item = (Monomial, i64)>,
    ) -> Self {
        let mut p = Self::zero(nvars, ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &i64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Constant term.
    pub fn constant_term(&self) -> i64 {
        self.coeff(&Monomial::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: i64) {
        let c = self.ring.reduce(c);
        if c == 0 {
            return;
        }
        let ring = self.ring;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = ring.add(*e.get(), c);
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Highest total degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        Self::from_terms(
            self.nvars,
            self.ring,
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, &c)| (*m, c)),
        )
    }

    pub fn leading(&self) -> Option<(Monomial, i64)> {
        self.terms.iter().next_back().map(|(m, &c)| (*m, c))
    }

    /// Same polynomial with coefficients taken in `ring`.
    pub fn change_ring(&self, ring: CoefficientRing) -> Self {
        Self::from_terms(self.nvars, ring, self.terms.iter().map(|(m, &c)| (*m, c)))
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        assert_eq!(self.ring, other.ring, "coefficient ring mismatch");
    }

    pub fn add_assign_scaled(&mut self, other: &Self, scale: i64) {
        self.check(other);
        let scale = self.ring.reduce(scale);
        if scale == 0 {
            return;
        }
        for (m, &c) in &other.terms {
            self.add_term(*m, self.ring.mul(c, scale));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, 1);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, -1);
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(self.nvars, self.ring);
        out.add_assign_scaled(self, c);
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = Self::zero(self.nvars, self.ring);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                out.add_term(ma.mul(mb), self.ring.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(self.nvars, self.ring), |acc, _| acc.mul(self))
    }

    pub fn product<'a>(
        nvars: usize,
        ring: CoefficientRing,
        factors: impl IntoIterator<Item = &'a GradedPolynomial>,
    ) -> Self {
        factors
            .into_iter()
            .fold(Self::one(nvars, ring), |acc, f| acc.mul(f))
    }

    /// Ring homomorphism sending `x_k` to `images[k]`.
    pub fn substitute(&self, images: &[GradedPolynomial]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let out_vars = images.first().map_or(self.nvars, |p| p.nvars);
        let mut out = Self::zero(out_vars, self.ring);
        let mut powers: Vec<Vec<GradedPolynomial>> = images
            .iter()
            .map(|p| vec![Self::one(out_vars, self.ring), p.change_ring(self.ring)])
            .collect();
        for (m, &c) in &self.terms {
            let mut term = Self::constant(out_vars, self.ring, c);
            for k in 0..self.nvars {
                let e = m.exp(k) as usize;
                if e == 0 {
                    continue;
                }
                while powers[k].len() <= e {
                    let next = powers[k].last().unwrap().mul(&powers[k][1]);
                    powers[k].push(next);
                }
                term = term.mul(&powers[k][e]);
            }
            out.add_assign_scaled(&term, 1);
        }
        out
    }

    /// Coordinates on the given monomial list (missing monomials must be absent).
    pub fn coordinates(&self, basis: &[Monomial]) -> Vec<i64> {
        basis.iter().map(|m| self.coeff(m)).collect()
    }

    /// Exact quotient over `Q`, returned only if it has integral coefficients.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        self.check(divisor);
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if let CoefficientRing::PrimeField(_) = self.ring {
            return self.div_exact_field(divisor);
        }
        type Q = Ratio<i128>;
        let to_q = |p: &Self| -> BTreeMap<Monomial, Q> {
            p.terms.iter().map(|(m, &c)| (*m, Q::from_integer(c as i128))).collect()
        };
        let mut rem = to_q(self);
        let div = to_q(divisor);
        let (lm, lc) = {
            let (m, c) = div.iter().next_back().unwrap();
            (*m, *c)
        };
        let mut quot: BTreeMap<Monomial, Q> = BTreeMap::new();
        while let Some((&m, &c)) = rem.iter().next_back() {
            let qm = divide_monomial(&m, &lm)?;
            let qc = c / lc;
            for (dm, dc) in &div {
                let key = qm.mul(dm);
                let v = rem.entry(key).or_insert_with(Q::zero);
                *v -= qc * dc;
                if v.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.insert(qm, qc);
        }
        let mut out = Self::zero(self.nvars, self.ring);
        for (m, q) in quot {
            if !q.is_integer() {
                return None;
            }
            let v = q.to_integer();
            if v.abs() > i64::MAX as i128 {
                return None;
            }
            out.add_term(m, v as i64);
        }
        Some(out)
    }

    fn div_exact_field(&self, divisor: &Self) -> Option<Self> {
        let ring = self.ring;
        let (lm, lc) = divisor.leading().unwrap();
        let inv = ring.inverse(lc)?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars, ring);
        while let Some((m, c)) = rem.leading() {
            let qm = divide_monomial(&m, &lm)?;
            let qc = ring.mul(c, inv);
            let t = Self::monomial(self.nvars, ring, qm, qc);
            rem = rem.sub(&t.mul(divisor));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn fmt_with(&self, labels: &[String]) -> String {
        format_terms(
            self.terms.iter().rev().map(|(m, &c)| (m, c)),
            self.ring,
            labels,
        )
    }

    /// Parses the text produced by [`fmt_with`](Self::fmt_with).
    pub fn parse(s: &str, labels: &[String], ring: CoefficientRing) -> Result<Self> {
        let nvars = labels.len();
        let mut out = Self::zero(nvars, ring);
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if compact == "0" {
            return Ok(out);
        }
        // split on +/- keeping signs; a sign directly after '^' is not allowed
        let mut terms: Vec<(i64, String)> = Vec::new();
        let mut sign = 1i64;
        let mut cur = String::new();
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() {
                terms.push((sign, std::mem::take(&mut cur)));
                sign = if ch == '-' { -1 } else { 1 };
            } else if ch == '+' || ch == '-' {
                if ch == '-' {
                    sign = -sign;
                }
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(Error::Parse(format!("dangling sign in {s:?}")));
        }
        terms.push((sign, cur));
        for (sign, body) in terms {
            let mut coeff = sign;
            let mut mono = Monomial::one();
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in {s:?}")));
                }
                if let Ok(n) = factor.parse::<i64>() {
                    coeff = coeff
                        .checked_mul(n)
                        .ok_or_else(|| Error::Parse("coefficient overflow".into()))?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<u8>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                let k = labels
                    .iter()
                    .position(|l| l == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                mono.0[k] = mono.0[k]
                    .checked_add(exp)
                    .ok_or_else(|| Error::Parse("exponent overflow".into()))?;
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }
}

fn divide_monomial(m: &Monomial, d: &Monomial) -> Option<Monomial> {
    let mut out = Monomial::one();
    for k in 0..MAX_VARS {
        out.0[k] = m.0[k].checked_sub(d.0[k])?;
    }
    Some(out)
}

pub(crate) fn format_monomial(m: &Monomial, labels: &[String]) -> String {
    let parts: Vec<String> = labels
        .iter()
        .enumerate()
        .filter(|(k, _)| m.exp(*k) > 0)
        .map(|(k, l)| match m.exp(k) {
            1 => l.clone(),
            e => format!("{l}^{e}"),
        })
        .collect();
    parts.join("*")
}

/// Shared term formatting; over `F_p` coefficients are printed in `0..p`.
pub(crate) fn format_terms<'a>(
    terms: impl Iterator<Item = (&'a Monomial, i64)>,
    _ring: CoefficientRing,
    labels: &[String],
) -> String {
    let mut out = String::new();
    for (m, c) in terms {
        let mono = format_monomial(m, labels);
        let (neg, abs) = if c < 0 { (true, -c) } else { (false, c) };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs == 1 {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Debug for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (1..=self.nvars).map(|k| format!("x{k}")).collect();
        write!(f, "{} [{}]", self.fmt_with(&labels), self.ring)
    }
}

/// Integer determinant by fraction-free elimination.
pub(crate) fn determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        return 1;
    }
    (sign * a[n - 1][n - 1]) as i64
}

#[allow(dead_code)]
fn _ratio_traits_in_scope(q: Ratio<i128>) -> bool {
    q.is_one() || q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|k| format!("a{k}")).collect()
    }

    #[test]
    fn ring_arithmetic() {
        let f = CoefficientRing::PrimeField(5);
        assert_eq!(f.add(3, 4), 2);
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.neg(1), 4);
        assert_eq!(f.inverse(3), Some(2));
        assert!(CoefficientRing::prime_field(6).is_err());
        assert_eq!(CoefficientRing::Integers.inverse(2), None);
    }

    #[test]
    fn monomial_order_and_enumeration() {
        let ms = monomials_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(ms[0], Monomial::from_exponents(&[2, 0, 0]));
        assert_eq!(monomials_of_degree(7, 7).len(), 1716);
        assert!(Monomial::var(0) > Monomial::var(1));
        assert!(Monomial::from_exponents(&[0, 2]) > Monomial::var(0));
    }

    #[test]
    fn arithmetic() {
        let z = CoefficientRing::Integers;
        let a = GradedPolynomial::var(2, z, 0);
        let b = GradedPolynomial::var(2, z, 1);
        let s = a.add(&b);
        let sq = s.mul(&s);
        assert_eq!(sq.fmt_with(&labels(2)), "a1^2 + 2*a1*a2 + a2^2");
        assert!(sq.is_homogeneous());
        assert_eq!(sq.degree(), Some(2));
        let f2 = sq.change_ring(CoefficientRing::PrimeField(2));
        assert_eq!(f2.fmt_with(&labels(2)), "a1^2 + a2^2");
        assert!(s.sub(&s).is_zero());
    }

    #[test]
    fn parse_round_trip() {
        let z = CoefficientRing::Integers;
        let l = labels(3);
        for text in ["a1^2*a3 - 3*a2 + 7", "-a1", "0", "a3^4 + 2*a1*a2*a3"] {
            let p = GradedPolynomial::parse(text, &l, z).unwrap();
            assert_eq!(p.fmt_with(&l), text);
        }
        assert!(GradedPolynomial::parse("a9", &l, z).is_err());
        assert!(GradedPolynomial::parse("a1 +", &l, z).is_err());
    }

    #[test]
    fn exact_division() {
        let z = CoefficientRing::Integers;
        let l = labels(2);
        let f = GradedPolynomial::parse("a1^2 - a2^2", &l, z).unwrap();
        let g = GradedPolynomial::parse("a1 + a2", &l, z).unwrap();
        assert_eq!(f.div_exact(&g).unwrap().fmt_with(&l), "a1 - a2");
        let h = GradedPolynomial::parse("2*a1 + a2", &l, z).unwrap();
        let prod = h.mul(&g);
        assert_eq!(prod.div_exact(&h).unwrap(), g);
        assert!(g.div_exact(&h).is_none());
        // divisible over Q only
        let two = GradedPolynomial::parse("2*a1", &l, z).unwrap();
        assert!(GradedPolynomial::parse("a1", &l, z).unwrap().div_exact(&two).is_none());
    }

    #[test]
    fn substitution() {
        let z = CoefficientRing::Integers;
        let l = labels(2);
        let f = GradedPolynomial::parse("a1^2*a2", &l, z).unwrap();
        let images = [
            GradedPolynomial::parse("a1 + a2", &l, z).unwrap(),
            GradedPolynomial::parse("-a2", &l, z).unwrap(),
        ];
        let g = f.substitute(&images);
        assert_eq!(g.fmt_with(&l), "-a1^2*a2 - 2*a1*a2^2 - a2^3");
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[vec![2, -1], vec![-1, 2]]), 3);
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]), 0);
    }
}
