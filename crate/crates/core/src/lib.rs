//! Exact computation of degree-zero endomorphism rings of the Hecke-type
//! modules `D_P^*` attached to a root system, a parabolic subgroup and a
//! character lattice, and detection of nontrivial idempotents in them.

pub mod endosolve;
pub mod error;
pub mod linalg;
pub mod localized;
pub mod nilhecke;
pub mod polyring;
pub mod rootsys;

pub use error::{Error, Result};
