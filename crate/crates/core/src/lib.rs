//! Exact computation with logarithmic derivation modules of central
//! hyperplane arrangements: freeness certificates, SPOG structure, the
//! polynomial `B` of a deletion pair, and free paths between nested free
//! arrangements.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod arrangement;
pub mod bpoly;
pub mod derivation;
pub mod error;
pub mod families;
pub mod freepath;
pub mod freeness;
pub mod generators;
pub mod lattice;
pub mod matrix;
pub mod modp;
pub mod poly;
pub mod random;
pub mod rational;
pub mod scalar;
pub mod spog;

pub use arrangement::{AffineArrangement, Arrangement, Hyperplane};
pub use bpoly::{b_polynomial, forms_coprime, BPolynomial, Decomposition};
pub use derivation::{derivation_space, tangency_matrix, Derivation};
pub use error::{Error, Result};
pub use families::{pentagon, weyl, RootSystem, RootType};
pub use freeness::{exponents, is_free, nt, saito_check, snt_upper, FreenessCertificate, FreenessResult, NotFreeReason, SntResult, Verdict};
pub use freepath::{free_path, free_path_with, verify_chain, verify_theorem_three, verify_theorem_two, FreenessCache, FreenessOracle, PairReport, PathNode, PathResult, PathStatus, TripleReport};
pub use generators::{minimal_generators, GeneratorSearch, GeneratorSet};
pub use lattice::{char_poly, intersection_lattice, CharPoly, Flat};
pub use matrix::{det_poly, Echelon, ExactMatrix};
pub use poly::{dim_graded, monomial_basis, HomPoly};
pub use random::random_arrangement;
pub use rational::Rat;
pub use scalar::{Field, Scalar};
pub use spog::{predict_addition_level, predict_deletion_level, spog_check, spog_to_free_basis, syzygies, NotSpogReason, SpogCertificate, SpogVerdict};
