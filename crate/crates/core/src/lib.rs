//! Exact elimination theory over products of projective spaces.
//!
//! The crate builds the classical and determinantal resultant matrices
//! (Sylvester, Dixon, their determinantal generalizations, and the rank-drop
//! resultant of two parameterized space curves), computes determinants of
//! generically exact complexes by the Cayley quotient method, and decides
//! when members of two families of space curves intersect, returning the
//! condition as an exact polynomial in the family parameters.
//!
//! All arithmetic is exact: arbitrary-precision rationals for the headline
//! computations, small prime fields for brute-force verification.

pub mod cayley;
pub mod complexes;
pub mod error;
pub mod grading;
pub mod intersect;
pub mod matrix;
pub mod poly;
pub mod resultants;
pub mod rng;

pub use error::{Error, Result};
pub use poly::{Field, MultiPoly, Scalar, Space};
