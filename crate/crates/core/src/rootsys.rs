//! Root systems, Weyl groups and parabolic coset combinatorics.
//!
//! Simple reflections are indexed from 0 internally; every printed word and
//! every node list read from the outside uses the usual 1-based Dynkin
//! labels (Bourbaki numbering, so the central node of `D4` is node 2).
//!
//! Weyl group elements are stored as permutations of the full root set.
//! Two elements are equal iff they permute the roots identically; reduced
//! words are recovered on demand.

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_RANK_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl TypeLabel {
    pub fn is_simply_laced(self) -> bool {
        matches!(self, TypeLabel::A | TypeLabel::D | TypeLabel::E)
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeLabel::A => "A",
            TypeLabel::B => "B",
            TypeLabel::C => "C",
            TypeLabel::D => "D",
            TypeLabel::E => "E",
            TypeLabel::F => "F",
            TypeLabel::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(TypeLabel::A),
            "B" => Ok(TypeLabel::B),
            "C" => Ok(TypeLabel::C),
            "D" => Ok(TypeLabel::D),
            "E" => Ok(TypeLabel::E),
            "F" => Ok(TypeLabel::F),
            "G" => Ok(TypeLabel::G),
            other => Err(Error::Parse(format!("unknown type label {other:?}"))),
        }
    }
}

/// Cartan matrix with `cartan[i][j] = <alpha_j, alpha_i^vee>`.
fn cartan_matrix(label: TypeLabel, rank: usize) -> Option<Vec<Vec<i64>>> {
    let valid = match label {
        TypeLabel::A => rank >= 1,
        TypeLabel::B | TypeLabel::C => rank >= 2,
        TypeLabel::D => rank >= 4,
        TypeLabel::E => (6..=8).contains(&rank),
        TypeLabel::F => rank == 4,
        TypeLabel::G => rank == 2,
    };
    if !valid {
        return None;
    }
    let mut c = vec![vec![0i64; rank]; rank];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match label {
        TypeLabel::A => (1..rank).for_each(|i| link(i - 1, i)),
        TypeLabel::B | TypeLabel::C => (1..rank).for_each(|i| link(i - 1, i)),
        TypeLabel::D => {
            (1..rank - 1).for_each(|i| link(i - 1, i));
            link(rank - 3, rank - 1);
        }
        TypeLabel::E => {
            // 1-3-4-5-6(-7-8) with 2 attached to 4
            link(0, 2);
            link(1, 3);
            (3..rank).for_each(|i| link(i - 1, i));
        }
        TypeLabel::F => (1..rank).for_each(|i| link(i - 1, i)),
        TypeLabel::G => link(0, 1),
    }
    match label {
        // alpha_n short
        TypeLabel::B => c[rank - 1][rank - 2] = -2,
        // alpha_n long
        TypeLabel::C => c[rank - 2][rank - 1] = -2,
        // alpha_1, alpha_2 long; alpha_3, alpha_4 short
        TypeLabel::F => c[2][1] = -2,
        // alpha_1 short
        TypeLabel::G => c[0][1] = -3,
        _ => {}
    }
    Some(c)
}

/// An element of the Weyl group, stored as the permutation it induces on
/// the root indices of its [`RootSystem`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    perm: Box<[u16]>,
    length: u32,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.length as usize
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Index of `w(root)`.
    pub fn apply(&self, root: usize) -> usize {
        self.perm[root] as usize
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement(len {})", self.length)
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    type_label: TypeLabel,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    /// Positive roots first (by height, then simple-root order), then their
    /// negatives in the same order.
    roots: Vec<Vec<i64>>,
    npos: usize,
    root_index: HashMap<Vec<i64>, usize>,
    simple_perms: Vec<Box<[u16]>>,
    /// For each positive root, a word `u` and a node `i` with `u(alpha_i)` equal to it.
    conjugators: Vec<(Vec<usize>, usize)>,
}

impl RootSystem {
    pub fn new(type_label: TypeLabel, rank: usize) -> Result<Self> {
        Self::with_cap(type_label, rank, DEFAULT_RANK_CAP)
    }

    pub fn with_cap(type_label: TypeLabel, rank: usize, cap: usize) -> Result<Self> {
        if rank > cap {
            return Err(Error::RankCap { rank, cap });
        }
        let cartan = cartan_matrix(type_label, rank).ok_or_else(|| Error::InvalidType {
            label: type_label.to_string(),
            rank,
        })?;
        Ok(Self::from_cartan(type_label, cartan))
    }

    fn from_cartan(type_label: TypeLabel, cartan: Vec<Vec<i64>>) -> Self {
        let rank = cartan.len();
        let reflect = |beta: &[i64], i: usize| -> Vec<i64> {
            let pairing: i64 = beta.iter().zip(&cartan[i]).map(|(b, c)| b * c).sum();
            let mut out = beta.to_vec();
            out[i] -= pairing;
            out
        };

        // Close the simple roots under the simple reflections.
        let mut seen: HashMap<Vec<i64>, (Vec<usize>, usize)> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..rank {
            let mut e = vec![0; rank];
            e[i] = 1;
            seen.insert(e.clone(), (Vec::new(), i));
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            let (word, node) = seen[&beta].clone();
            for i in 0..rank {
                let gamma = reflect(&beta, i);
                if !seen.contains_key(&gamma) {
                    let mut w = vec![i];
                    w.extend_from_slice(&word);
                    seen.insert(gamma.clone(), (w, node));
                    queue.push_back(gamma);
                }
            }
        }

        let mut positive: Vec<Vec<i64>> = seen
            .keys()
            .filter(|r| r.iter().all(|&x| x >= 0))
            .cloned()
            .collect();
        positive.sort_by_key(|r| (r.iter().sum::<i64>(), Reverse(r.clone())));
        let npos = positive.len();
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        let root_index: HashMap<Vec<i64>, usize> =
            roots.iter().cloned().enumerate().map(|(k, r)| (r, k)).collect();
        let simple_perms = (0..rank)
            .map(|i| {
                roots
                    .iter()
                    .map(|r| root_index[&reflect(r, i)] as u16)
                    .collect::<Box<[u16]>>()
            })
            .collect();
        let conjugators = positive.iter().map(|r| seen[r].clone()).collect();
        RootSystem {
            type_label,
            rank,
            cartan,
            roots,
            npos,
            root_index,
            simple_perms,
            conjugators,
        }
    }

    pub fn type_label(&self) -> TypeLabel {
        self.type_label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.type_label, self.rank)
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// All roots in simple-root coordinates.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn is_positive(&self, root: usize) -> bool {
        root < self.npos
    }

    pub fn negate(&self, root: usize) -> usize {
        if root < self.npos {
            root + self.npos
        } else {
            root - self.npos
        }
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.root_index.get(coords).copied()
    }

    /// Index of the simple root `alpha_i`.
    pub fn simple_root(&self, i: usize) -> usize {
        let mut e = vec![0; self.rank];
        e[i] = 1;
        self.root_index[&e]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] != 0
    }

    /// Order of `s_i s_j`.
    pub fn braid_order(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        match self.cartan[i][j] * self.cartan[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            _ => unreachable!("finite type"),
        }
    }

    fn element(&self, perm: Box<[u16]>) -> WeylElement {
        let length = perm[..self.npos]
            .iter()
            .filter(|&&k| k as usize >= self.npos)
            .count() as u32;
        WeylElement { perm, length }
    }

    pub fn identity(&self) -> WeylElement {
        self.element((0..self.roots.len() as u16).collect())
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        self.element(self.simple_perms[i].clone())
    }

    /// `u * v`, acting as `v` first.
    pub fn mul(&self, u: &WeylElement, v: &WeylElement) -> WeylElement {
        self.element(v.perm.iter().map(|&k| u.perm[k as usize]).collect())
    }

    /// `s_i * w`.
    pub fn left_mul_simple(&self, i: usize, w: &WeylElement) -> WeylElement {
        let s = &self.simple_perms[i];
        self.element(w.perm.iter().map(|&k| s[k as usize]).collect())
    }

    /// `w * s_i`.
    pub fn right_mul_simple(&self, w: &WeylElement, i: usize) -> WeylElement {
        let s = &self.simple_perms[i];
        self.element(s.iter().map(|&k| w.perm[k as usize]).collect())
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let mut inv = vec![0u16; w.perm.len()];
        for (k, &image) in w.perm.iter().enumerate() {
            inv[image as usize] = k as u16;
        }
        self.element(inv.into())
    }

    /// Product `s_{word[0]} s_{word[1]} ...`.
    pub fn from_word(&self, word: &[usize]) -> WeylElement {
        word.iter()
            .rev()
            .fold(self.identity(), |acc, &i| self.left_mul_simple(i, &acc))
    }

    /// `l(w s_i) < l(w)`, i.e. `w(alpha_i) < 0`.
    pub fn has_right_descent(&self, w: &WeylElement, i: usize) -> bool {
        !self.is_positive(w.apply(self.simple_root(i)))
    }

    /// `l(s_i w) < l(w)`, i.e. `w^{-1}(alpha_i) < 0`.
    pub fn has_left_descent(&self, w: &WeylElement, i: usize) -> bool {
        let target = self.simple_root(i) as u16;
        let pre = w.perm.iter().position(|&k| k == target).unwrap();
        !self.is_positive(pre)
    }

    /// The lexicographically smallest reduced word of `w`.
    pub fn reduced_word(&self, w: &WeylElement) -> Vec<usize> {
        let mut word = Vec::with_capacity(w.length());
        let mut cur = w.clone();
        while !cur.is_identity() {
            let i = (0..self.rank)
                .find(|&i| self.has_left_descent(&cur, i))
                .expect("nontrivial element has a left descent");
            word.push(i);
            cur = self.left_mul_simple(i, &cur);
        }
        word
    }

    /// The reflection `s_beta` in the given root.
    pub fn reflection(&self, root: usize) -> WeylElement {
        let pos = if self.is_positive(root) {
            root
        } else {
            self.negate(root)
        };
        let (word, i) = &self.conjugators[pos];
        let u = self.from_word(word);
        let ui = self.inverse(&u);
        self.mul(&self.mul(&u, &self.simple_reflection(*i)), &ui)
    }

    /// Roots of the subsystem spanned by the given simple roots.
    pub fn parabolic_roots(&self, nodes: &BTreeSet<usize>) -> Vec<usize> {
        (0..self.roots.len())
            .filter(|&k| {
                self.roots[k]
                    .iter()
                    .enumerate()
                    .all(|(i, &c)| c == 0 || nodes.contains(&i))
            })
            .collect()
    }

    /// All elements of the subgroup generated by the given simple reflections.
    pub fn subgroup_elements(&self, nodes: &BTreeSet<usize>) -> Vec<WeylElement> {
        let id = self.identity();
        let mut seen: HashMap<WeylElement, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for &i in nodes {
                let u = self.left_mul_simple(i, &w);
                if seen.insert(u.clone(), ()).is_none() {
                    out.push(u.clone());
                    queue.push_back(u);
                }
            }
        }
        let mut keyed: Vec<(usize, Vec<usize>, WeylElement)> = out
            .into_iter()
            .map(|w| (w.length(), self.reduced_word(&w), w))
            .collect();
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        keyed.into_iter().map(|(_, _, w)| w).collect()
    }

    pub fn group_order(&self) -> usize {
        self.subgroup_elements(&(0..self.rank).collect()).len()
    }

    pub fn format_word(word: &[usize]) -> String {
        if word.is_empty() {
            "1".to_string()
        } else {
            word.iter().map(|i| format!("s{}", i + 1)).collect()
        }
    }

    /// Compact form used for subscripts: `[1,0,2]` becomes `"213"`.
    pub fn compact_word(word: &[usize]) -> String {
        if word.is_empty() {
            "1".to_string()
        } else if word.iter().all(|&i| i < 9) {
            word.iter().map(|i| (i + 1).to_string()).collect()
        } else {
            word.iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HasseEdge {
    pub from: usize,
    pub generator: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCoset {
    /// Index into `reps` of the length-minimal member.
    pub min_rep: usize,
    pub members: Vec<usize>,
}

/// Minimal left coset representatives `W^P` together with the weak Bruhat
/// edges between them and the double coset decomposition.
#[derive(Clone, Debug)]
pub struct CosetSystem {
    root_system: Arc<RootSystem>,
    parabolic: BTreeSet<usize>,
    reps: Vec<WeylElement>,
    words: Vec<Vec<usize>>,
    index: HashMap<WeylElement, usize>,
    hasse_edges: Vec<HasseEdge>,
    /// `up[v][j] = Some(u)` iff `s_j v` lies in `W^P` and is longer than `v`.
    up: Vec<Vec<Option<usize>>>,
    /// `down[v][j] = Some(u)` iff `s_j v` is shorter than `v`.
    down: Vec<Vec<Option<usize>>>,
    double_cosets: Vec<DoubleCoset>,
    block_of: Vec<usize>,
}

impl CosetSystem {
    /// `parabolic` lists 0-based nodes generating `W_P`.
    pub fn new(root_system: Arc<RootSystem>, parabolic: &[usize]) -> Result<Self> {
        let rank = root_system.rank();
        if let Some(&node) = parabolic.iter().find(|&&n| n >= rank) {
            return Err(Error::InvalidParabolic {
                node: node + 1,
                rank,
            });
        }
        let parabolic: BTreeSet<usize> = parabolic.iter().copied().collect();
        let rs = &*root_system;
        let in_quotient = |w: &WeylElement| parabolic.iter().all(|&j| !rs.has_right_descent(w, j));

        // W^P is closed under removing left descents, so a BFS by left
        // multiplication from the identity reaches all of it.
        let id = rs.identity();
        let mut found: HashMap<WeylElement, ()> = HashMap::from([(id.clone(), ())]);
        let mut all = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for i in 0..rank {
                let u = rs.left_mul_simple(i, &w);
                if u.length() == w.length() + 1 && in_quotient(&u) && !found.contains_key(&u) {
                    found.insert(u.clone(), ());
                    all.push(u.clone());
                    queue.push_back(u);
                }
            }
        }
        let mut keyed: Vec<(usize, Vec<usize>, WeylElement)> = all
            .into_iter()
            .map(|w| (w.length(), rs.reduced_word(&w), w))
            .collect();
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let words: Vec<Vec<usize>> = keyed.iter().map(|k| k.1.clone()).collect();
        let reps: Vec<WeylElement> = keyed.into_iter().map(|k| k.2).collect();
        let index: HashMap<WeylElement, usize> =
            reps.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();

        let mut up = vec![vec![None; rank]; reps.len()];
        let mut down = vec![vec![None; rank]; reps.len()];
        let mut hasse_edges = Vec::new();
        for (v, w) in reps.iter().enumerate() {
            for j in 0..rank {
                let u = rs.left_mul_simple(j, w);
                if u.length() > w.length() {
                    if let Some(&k) = index.get(&u) {
                        up[v][j] = Some(k);
                        hasse_edges.push(HasseEdge {
                            from: v,
                            generator: j,
                            to: k,
                        });
                    }
                } else {
                    let k = *index.get(&u).ok_or_else(|| {
                        Error::Invariant(format!(
                            "s{} {} is shorter but not a minimal representative",
                            j + 1,
                            RootSystem::format_word(&words[v])
                        ))
                    })?;
                    down[v][j] = Some(k);
                }
            }
        }

        let mut sys = CosetSystem {
            root_system,
            parabolic,
            reps,
            words,
            index,
            hasse_edges,
            up,
            down,
            double_cosets: Vec::new(),
            block_of: Vec::new(),
        };
        sys.compute_double_cosets();
        Ok(sys)
    }

    fn compute_double_cosets(&mut self) {
        let n = self.reps.len();
        let mut block_of = vec![usize::MAX; n];
        let mut blocks = Vec::new();
        for start in 0..n {
            if block_of[start] != usize::MAX {
                continue;
            }
            let b = blocks.len();
            let mut members = vec![start];
            block_of[start] = b;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &j in &self.parabolic {
                    let u = self.class_of_left_simple(j, v);
                    if block_of[u] == usize::MAX {
                        block_of[u] = b;
                        members.push(u);
                        queue.push_back(u);
                    }
                }
            }
            members.sort_unstable();
            blocks.push(DoubleCoset {
                min_rep: members[0],
                members,
            });
        }
        self.double_cosets = blocks;
        self.block_of = block_of;
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.root_system
    }

    pub fn parabolic(&self) -> &BTreeSet<usize> {
        &self.parabolic
    }

    pub fn in_parabolic(&self, j: usize) -> bool {
        self.parabolic.contains(&j)
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[WeylElement] {
        &self.reps
    }

    pub fn rep(&self, k: usize) -> &WeylElement {
        &self.reps[k]
    }

    pub fn word(&self, k: usize) -> &[usize] {
        &self.words[k]
    }

    pub fn length(&self, k: usize) -> usize {
        self.reps[k].length()
    }

    pub fn max_length(&self) -> usize {
        self.reps.last().map_or(0, |w| w.length())
    }

    pub fn rep_name(&self, k: usize) -> String {
        RootSystem::format_word(&self.words[k])
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn hasse_edges(&self) -> &[HasseEdge] {
        &self.hasse_edges
    }

    pub fn up(&self, v: usize, j: usize) -> Option<usize> {
        self.up[v][j]
    }

    pub fn down(&self, v: usize, j: usize) -> Option<usize> {
        self.down[v][j]
    }

    pub fn double_cosets(&self) -> &[DoubleCoset] {
        &self.double_cosets
    }

    pub fn block_of(&self, k: usize) -> usize {
        self.block_of[k]
    }

    /// Minimal representative of `w W_P`.
    pub fn min_rep(&self, w: &WeylElement) -> WeylElement {
        let rs = &*self.root_system;
        let mut cur = w.clone();
        while let Some(&j) = self
            .parabolic
            .iter()
            .find(|&&j| rs.has_right_descent(&cur, j))
        {
            cur = rs.right_mul_simple(&cur, j);
        }
        cur
    }

    /// Index of the class of `w W_P`.
    pub fn class_of(&self, w: &WeylElement) -> usize {
        self.index[&self.min_rep(w)]
    }

    fn class_of_left_simple(&self, j: usize, v: usize) -> usize {
        self.class_of(&self.root_system.left_mul_simple(j, &self.reps[v]))
    }

    /// `T[i][j]` is the index of the class of `reps[i] * reps[j]`.
    pub fn mult_table(&self) -> Vec<Vec<usize>> {
        let rs = &*self.root_system;
        self.reps
            .iter()
            .map(|a| {
                self.reps
                    .iter()
                    .map(|b| self.class_of(&rs.mul(a, b)))
                    .collect()
            })
            .collect()
    }

    /// Elements of `W_P`, sorted by length then word.
    pub fn parabolic_elements(&self) -> Vec<WeylElement> {
        self.root_system.subgroup_elements(&self.parabolic)
    }

    /// Roots of the Levi subsystem `Sigma_P`.
    pub fn parabolic_roots(&self) -> Vec<usize> {
        self.root_system.parabolic_roots(&self.parabolic)
    }

    /// Sum of `t^l(w)` over the given members, as a coefficient list.
    pub fn poincare(&self, members: &[usize]) -> Vec<usize> {
        let mut coeffs = vec![0usize; self.max_length() + 1];
        for &k in members {
            coeffs[self.length(k)] += 1;
        }
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        coeffs
    }
}

/// Formats a coefficient list as `1 + t + t^2`.
pub fn format_poincare(coeffs: &[usize]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(d, &c)| {
            let mono = match d {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{d}"),
            };
            match (c, d) {
                (c, 0) => c.to_string(),
                (1, _) => mono,
                (c, _) => format!("{c}{mono}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nodes(labels: &[usize]) -> Vec<usize> {
        labels.iter().map(|l| l - 1).collect()
    }

    fn cosets(label: TypeLabel, rank: usize, parabolic: &[usize]) -> CosetSystem {
        let rs = Arc::new(RootSystem::new(label, rank).unwrap());
        CosetSystem::new(rs, &nodes(parabolic)).unwrap()
    }

    #[test]
    fn rank_one() {
        let rs = RootSystem::new(TypeLabel::A, 1).unwrap();
        assert_eq!(rs.roots(), &[vec![1], vec![-1]]);
        assert_eq!(rs.group_order(), 2);
    }

    #[test]
    fn group_orders() {
        let cases = [
            (TypeLabel::A, 3, 12, 24),
            (TypeLabel::B, 3, 18, 48),
            (TypeLabel::C, 3, 18, 48),
            (TypeLabel::D, 4, 24, 192),
            (TypeLabel::G, 2, 12, 12),
            (TypeLabel::F, 4, 48, 1152),
        ];
        for (label, rank, nroots, order) in cases {
            let rs = RootSystem::new(label, rank).unwrap();
            assert_eq!(rs.roots().len(), nroots, "{label}{rank}");
            assert_eq!(rs.group_order(), order, "{label}{rank}");
        }
    }

    #[test]
    fn e6_root_count() {
        let rs = RootSystem::new(TypeLabel::E, 6).unwrap();
        assert_eq!(rs.roots().len(), 72);
    }

    #[test]
    fn invalid_types_and_cap() {
        assert!(matches!(
            RootSystem::new(TypeLabel::D, 3),
            Err(Error::InvalidType { .. })
        ));
        assert!(matches!(
            RootSystem::new(TypeLabel::G, 3),
            Err(Error::InvalidType { .. })
        ));
        assert!(matches!(
            RootSystem::new(TypeLabel::A, 9),
            Err(Error::RankCap { rank: 9, cap: 8 })
        ));
        assert!(RootSystem::with_cap(TypeLabel::A, 9, 9).is_ok());
    }

    #[test]
    fn cartan_shape() {
        for (label, rank) in [(TypeLabel::B, 4), (TypeLabel::F, 4), (TypeLabel::E, 8)] {
            let c = cartan_matrix(label, rank).unwrap();
            for i in 0..rank {
                assert_eq!(c[i][i], 2);
                for j in 0..rank {
                    if i != j {
                        assert!(c[i][j] <= 0);
                        assert_eq!(c[i][j] == 0, c[j][i] == 0);
                    }
                }
            }
        }
    }

    #[test]
    fn d4_central_node() {
        let rs = RootSystem::new(TypeLabel::D, 4).unwrap();
        let n = nodes(&[2])[0];
        for other in nodes(&[1, 3, 4]) {
            assert!(rs.adjacent(n, other));
        }
        assert!(!rs.adjacent(0, 2) && !rs.adjacent(0, 3) && !rs.adjacent(2, 3));
    }

    #[test]
    fn words_round_trip() {
        let rs = RootSystem::new(TypeLabel::A, 3).unwrap();
        for w in rs.subgroup_elements(&(0..3).collect()) {
            let word = rs.reduced_word(&w);
            assert_eq!(word.len(), w.length());
            assert_eq!(rs.from_word(&word), w);
        }
        let w = rs.from_word(&[1, 0, 1]);
        assert_eq!(w, rs.from_word(&[0, 1, 0]));
        assert_eq!(rs.reduced_word(&w), vec![0, 1, 0]);
    }

    #[test]
    fn reflection_in_root() {
        let rs = RootSystem::new(TypeLabel::A, 2).unwrap();
        let highest = rs.root_index(&[1, 1]).unwrap();
        let s = rs.reflection(highest);
        assert_eq!(s, rs.from_word(&[0, 1, 0]));
        assert_eq!(s.apply(highest), rs.negate(highest));
    }

    #[test]
    fn klein_quadric_hasse_diagram() {
        let cs = cosets(TypeLabel::A, 3, &[1, 3]);
        let names: Vec<String> = (0..cs.len()).map(|k| cs.rep_name(k)).collect();
        assert_eq!(names, ["1", "s2", "s1s2", "s3s2", "s1s3s2", "s2s1s3s2"]);
        let edges: BTreeSet<(String, usize, String)> = cs
            .hasse_edges()
            .iter()
            .map(|e| (cs.rep_name(e.from), e.generator + 1, cs.rep_name(e.to)))
            .collect();
        let expected: BTreeSet<(String, usize, String)> = [
            ("1", 2, "s2"),
            ("s2", 1, "s1s2"),
            ("s2", 3, "s3s2"),
            ("s1s2", 3, "s1s3s2"),
            ("s3s2", 1, "s1s3s2"),
            ("s1s3s2", 2, "s2s1s3s2"),
        ]
        .iter()
        .map(|(a, j, b)| (a.to_string(), *j, b.to_string()))
        .collect();
        assert_eq!(edges, expected);
    }

    #[test]
    fn projective_space_reps() {
        for n in 1..=5 {
            let parabolic: Vec<usize> = (2..=n).collect();
            let cs = cosets(TypeLabel::A, n, &parabolic);
            let names: Vec<String> = (0..cs.len()).map(|k| cs.rep_name(k)).collect();
            let expected: Vec<String> = (0..=n)
                .map(|i| {
                    let word: Vec<usize> = (0..i).rev().collect();
                    RootSystem::format_word(&word)
                })
                .collect();
            assert_eq!(names, expected);
        }
    }

    #[test]
    fn d4_quadric_hasse_diagram() {
        let cs = cosets(TypeLabel::D, 4, &[2, 3, 4]);
        let names: Vec<String> = (0..cs.len()).map(|k| cs.rep_name(k)).collect();
        assert_eq!(
            names,
            ["1", "s1", "s2s1", "s3s2s1", "s4s2s1", "s3s4s2s1", "s2s3s4s2s1", "s1s2s3s4s2s1"]
        );
    }

    #[test]
    fn full_parabolic_is_trivial() {
        let cs = cosets(TypeLabel::D, 4, &[1, 2, 3, 4]);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs.mult_table(), vec![vec![0]]);
    }

    #[test]
    fn double_cosets_small() {
        let cs = cosets(TypeLabel::A, 2, &[2]);
        assert_eq!(cs.double_cosets().len(), 2);
        assert_eq!(cs.double_cosets()[0].members, vec![0]);
        assert_eq!(cs.double_cosets()[1].members, vec![1, 2]);

        let cs = cosets(TypeLabel::A, 3, &[]);
        assert_eq!(cs.double_cosets().len(), 24);

        let cs = cosets(TypeLabel::A, 3, &[2, 3]);
        assert_eq!(cs.double_cosets().len(), 2);
    }

    #[test]
    fn mult_table_projective_plane() {
        let cs = cosets(TypeLabel::A, 2, &[2]);
        let t = cs.mult_table();
        for i in 0..3 {
            assert_eq!(t[i][0], i);
            for j in 1..3 {
                let expected = if i < j { j } else { j - 1 };
                assert_eq!(t[i][j], expected, "v{i} v{j}");
            }
        }
    }

    #[test]
    fn poincare_format() {
        assert_eq!(format_poincare(&[1, 1, 1, 1]), "1 + t + t^2 + t^3");
        assert_eq!(format_poincare(&[0, 0, 0, 1, 2]), "t^3 + 2t^4");
    }
}
