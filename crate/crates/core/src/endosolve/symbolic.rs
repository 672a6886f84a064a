//! Matrix entries written as sums of composite operators applied to the
//! generators of the first column, e.g. `a_{2,2} = a_1 + D[2,1,3](a_132)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::polyring::{format_ops, CharacterLattice, Op};
use crate::rootsys::{CosetSystem, RootSystem};

/// Expressions stop growing past this many terms.
pub const TERM_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpTerm {
    /// Outermost first.
    pub ops: Vec<Op>,
    /// Generator rep index.
    pub source: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OpExpr {
    pub terms: BTreeMap<OpTerm, i64>,
    pub truncated: bool,
}

struct Ctx<'a> {
    cs: &'a CosetSystem,
}

impl Ctx<'_> {
    fn degree(&self, t: &OpTerm) -> usize {
        let drop = t.ops.iter().filter(|o| matches!(o, Op::Delta(_))).count();
        self.cs.length(t.source) - drop
    }

    /// Applies `op` on the outside of `t`, with the local rewriting rules
    /// `s s = 1`, `s D = D`, `D D = 0`, `D s = -D`.
    fn apply(&self, op: Op, t: &OpTerm, c: i64) -> Option<(OpTerm, i64)> {
        let deg = self.degree(t);
        let mut ops = t.ops.clone();
        let mut c = c;
        match op {
            Op::Delta(j) => {
                if deg == 0 {
                    return None;
                }
                match ops.first() {
                    Some(Op::Delta(i)) if *i == j => return None,
                    Some(Op::Reflect(i)) if *i == j => {
                        ops[0] = Op::Delta(j);
                        c = -c;
                    }
                    _ => ops.insert(0, op),
                }
                // Delta_j(a_g) = 0 for j in P when s_j g is not shorter.
                if let [Op::Delta(i)] = ops[..] {
                    if self.cs.in_parabolic(i) && self.cs.down(t.source, i).is_none() {
                        return None;
                    }
                }
            }
            Op::Reflect(j) => {
                if deg == 0 {
                    return Some((t.clone(), c));
                }
                match ops.first() {
                    Some(Op::Reflect(i)) if *i == j => {
                        ops.remove(0);
                    }
                    Some(Op::Delta(i)) if *i == j => {}
                    _ => ops.insert(0, op),
                }
            }
        }
        Some((OpTerm { ops, source: t.source }, c))
    }
}

impl OpExpr {
    pub fn generator(g: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(OpTerm { ops: Vec::new(), source: g }, 1);
        OpExpr { terms, truncated: false }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn push(&mut self, t: OpTerm, c: i64) {
        if self.terms.len() >= TERM_CAP && !self.terms.contains_key(&t) {
            self.truncated = true;
            return;
        }
        let e = self.terms.entry(t.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&t);
        }
    }

    pub fn add_assign(&mut self, other: &OpExpr) {
        self.truncated |= other.truncated;
        for (t, &c) in &other.terms {
            self.push(t.clone(), c);
        }
    }

    pub fn scale(&self, s: i64) -> OpExpr {
        OpExpr {
            terms: self
                .terms
                .iter()
                .filter(|(_, &c)| c * s != 0)
                .map(|(t, &c)| (t.clone(), c * s))
                .collect(),
            truncated: self.truncated,
        }
    }

    pub fn sub(&self, other: &OpExpr) -> OpExpr {
        let mut out = self.clone();
        out.add_assign(&other.scale(-1));
        out
    }

    fn apply(&self, cs: &CosetSystem, op: Op) -> OpExpr {
        let ctx = Ctx { cs };
        let mut out = OpExpr {
            terms: BTreeMap::new(),
            truncated: self.truncated,
        };
        for (t, &c) in &self.terms {
            if let Some((t2, c2)) = ctx.apply(op, t, c) {
                out.push(t2, c2);
            }
        }
        out
    }

    /// Drops terms whose coefficient vanishes modulo `p`.
    pub fn reduce_mod(&self, p: u64) -> OpExpr {
        let p = p as i64;
        OpExpr {
            terms: self
                .terms
                .iter()
                .filter(|(_, &c)| c.rem_euclid(p) != 0)
                .map(|(t, &c)| (t.clone(), c.rem_euclid(p)))
                .collect(),
            truncated: self.truncated,
        }
    }

    pub fn format(&self, cs: &CosetSystem) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (t, &c)) in self.terms.iter().enumerate() {
            let body = format_term(cs, t);
            let mag = c.unsigned_abs();
            let coeff = if mag == 1 { String::new() } else { format!("{mag}*") };
            if k == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let _ = write!(out, "{coeff}{body}");
        }
        if self.truncated {
            out.push_str(" + ...");
        }
        out
    }
}

/// `a_<word>` with the compact word of the generator, e.g. `a_132`.
pub fn param_name(cs: &CosetSystem, g: usize) -> String {
    let w = cs.word(g);
    if w.is_empty() {
        "a_1".to_string()
    } else {
        format!("a_{}", RootSystem::compact_word(w))
    }
}

pub fn format_term(cs: &CosetSystem, t: &OpTerm) -> String {
    let name = param_name(cs, t.source);
    if t.ops.is_empty() {
        name
    } else {
        format!("{}({})", format_ops(&t.ops), name)
    }
}

/// The endomorphism matrix in terms of the generator entries of the first
/// column, built with the same recursion as the numeric propagation.
#[derive(Clone, Debug)]
pub struct SymbolicMatrix {
    pub generators: Vec<usize>,
    /// `entries[v][w]`.
    pub entries: Vec<Vec<OpExpr>>,
}

pub fn symbolic_matrix(cs: &CosetSystem, lat: &CharacterLattice) -> SymbolicMatrix {
    let n = cs.len();
    let parabolic: Vec<usize> = cs.parabolic().iter().copied().collect();
    let mut first: Vec<OpExpr> = vec![OpExpr::default(); n];
    let mut generators = Vec::new();
    for v in (0..n).rev() {
        match parabolic.iter().find_map(|&j| cs.up(v, j).map(|u| (j, u))) {
            Some((j, u)) => first[v] = first[u].apply(cs, Op::Delta(j)).scale(-1),
            None => {
                first[v] = OpExpr::generator(v);
                generators.push(v);
            }
        }
    }
    generators.sort_unstable();

    let mut cols: Vec<Option<Vec<OpExpr>>> = vec![None; n];
    cols[0] = Some(first);
    for w in 0..n {
        let col = cols[w].clone().expect("W^P is connected");
        for j in 0..lat.rank() {
            if let Some(u) = cs.up(w, j) {
                if cols[u].is_some() {
                    continue;
                }
                let mut out: Vec<OpExpr> = col.iter().map(|e| e.apply(cs, Op::Delta(j))).collect();
                for (v, e) in col.iter().enumerate() {
                    if let Some(t) = cs.up(v, j) {
                        out[t].add_assign(&e.apply(cs, Op::Reflect(j)));
                    }
                }
                cols[u] = Some(out);
            }
        }
    }
    let cols: Vec<Vec<OpExpr>> = cols.into_iter().map(|c| c.unwrap()).collect();
    SymbolicMatrix {
        generators,
        entries: (0..n).map(|v| (0..n).map(|w| cols[w][v].clone()).collect()).collect(),
    }
}

/// Image of one term's operator on the homogeneous component it acts on.
#[derive(Clone, Debug, serde::Serialize)]
pub struct TermWitness {
    pub term: String,
    pub coefficient: i64,
    pub source_degree: usize,
    /// Images of the successive inner suffixes of the operator, innermost first.
    pub chain: Vec<String>,
    pub vanishes: bool,
}

pub fn term_witness(cs: &CosetSystem, lat: &CharacterLattice, t: &OpTerm, c: i64, p: u64) -> TermWitness {
    let d = cs.length(t.source);
    let mut chain = Vec::new();
    let mut vanishes = false;
    for k in 1..=t.ops.len() {
        let suffix = &t.ops[t.ops.len() - k..];
        let img = lat.homogeneous_image(suffix, d, p);
        chain.push(format!("{} on degree {} = {}", format_ops(suffix), d, lat.format_span(&img)));
        if img.is_empty() {
            vanishes = true;
            break;
        }
    }
    TermWitness {
        term: format_term(cs, t),
        coefficient: c,
        source_degree: d,
        chain,
        vanishes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::LatticePreset;
    use crate::rootsys::TypeLabel;
    use std::sync::Arc;

    #[test]
    fn klein_second_diagonal() {
        let rs = Arc::new(RootSystem::new(TypeLabel::A, 3).unwrap());
        let lat = CharacterLattice::preset(LatticePreset::A3Omega2, &rs).unwrap();
        let cs = CosetSystem::new(rs.clone(), &[0, 2]).unwrap();
        let m = symbolic_matrix(&cs, &lat);
        let s2 = cs.index_of(&rs.simple_reflection(1)).unwrap();
        assert_eq!(m.entries[s2][s2].format(&cs), "a_1 + D[2,1,3](a_132)");
    }
}
