//! Degree-zero endomorphisms of `D_P^*`: the first column, the full matrix
//! via the recurrent formulas, diagonal congruences mod `p` and a brute
//! force search for idempotents.

mod congruence;
mod matrix;
mod oracle;
mod space;
mod symbolic;

pub use congruence::{
    diagonal_congruence, CongruenceClass, CongruenceReport, EdgeWitness, ImageAlgebra, Summand,
    ALGEBRA_ENUMERATION_LIMIT,
};
pub use matrix::{propagate, EndomorphismMatrix, EndomorphismSpace};
pub use oracle::{
    idempotent_oracle, idempotent_oracle_with, within_cap, OracleIdempotent, OracleReport, Parallelism,
    DEFAULT_ORACLE_CAP,
};
pub use space::{first_column_space, FirstColumnSpace, LinPoly};
pub use symbolic::{param_name, symbolic_matrix, term_witness, OpExpr, OpTerm, SymbolicMatrix, TermWitness};

use crate::error::Result;
use crate::polyring::{CharacterLattice, CoefficientRing};
use crate::rootsys::CosetSystem;

/// First column space followed by propagation.
pub fn endomorphism_space(
    cs: &CosetSystem,
    lat: &CharacterLattice,
    ring: CoefficientRing,
) -> Result<EndomorphismSpace> {
    propagate(cs, lat, first_column_space(cs, lat, ring)?)
}
