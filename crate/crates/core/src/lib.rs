//! Exact computation of cluster variables, quantum F-polynomials, g-vectors
//! and denominator vectors for (quantum) cluster algebras.

pub mod cluster;
pub mod error;
pub mod fpoly;
pub mod qscalar;
pub mod seed;
pub mod tables;
pub mod torus;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
pub use qscalar::{t_binomial, HalfInt, QLaurent};
pub use torus::{frame_product, ExpVec, SkewForm, TorusElement};
pub use cluster::{ClassicalSeed, CommPoly, ExchangeData, MutationWord};
pub use seed::{check_compatible, principal_lambda, CompatiblePair, QuantumSeed, SeedCache, YHat};
pub use fpoly::{coefficient_symmetry_check, extract_qfpoly, general_coefficient_shifts, l_apply, right_fpoly, substitute_yhat, verify_general_coefficients, QFPoly, RecurrenceState};
pub use trees::{check_type_a, closed_subsets, gamma_rank, tree_gvector, tree_qfpoly, type_a_chains, type_a_gvector, ChainReport, GammaData, Quiver, TreeSubset};
pub use tables::{table_a2, table_a4, TableReport};
