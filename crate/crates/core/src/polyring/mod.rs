//! Polynomials on a character lattice, the Weyl group action on them and
//! Demazure (divided difference) operators.

mod lattice;
mod poly;

pub use lattice::{CharacterLattice, LatticePreset, MonomialBasis, Op, SparseOp};
pub use poly::{is_prime, monomials_of_degree, CoefficientRing, GradedPolynomial, Monomial, MAX_VARS};

pub(crate) use poly::pow_mod;

/// Formats an operator subscript such as `\Delta_{3,2,1}` as `D[3,2,1]`,
/// mixing in reflections as `s2`.
pub fn format_ops(ops: &[Op]) -> String {
    if ops.is_empty() {
        return "id".to_string();
    }
    let mut out = String::new();
    let mut run: Vec<usize> = Vec::new();
    let flush = |run: &mut Vec<usize>, out: &mut String| {
        if !run.is_empty() {
            let idx: Vec<String> = run.iter().map(|i| (i + 1).to_string()).collect();
            out.push_str(&format!("D[{}]", idx.join(",")));
            run.clear();
        }
    };
    for op in ops {
        match *op {
            Op::Delta(i) => run.push(i),
            Op::Reflect(i) => {
                flush(&mut run, &mut out);
                out.push_str(&format!("s{}", i + 1));
            }
        }
    }
    flush(&mut run, &mut out);
    out
}

/// `Delta_{word[0]} o Delta_{word[1]} o ...`, leftmost applied last.
pub fn delta_word(word: &[usize]) -> Vec<Op> {
    word.iter().map(|&i| Op::Delta(i)).collect()
}
