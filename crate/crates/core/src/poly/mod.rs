//! Exact coefficient fields and sparse multivariate polynomial arithmetic
//! with block multigrading.

pub mod engine;
pub mod gcd;
pub mod multipoly;
pub mod scalar;
pub mod space;
pub mod text;

pub use gcd::{gcd, gcd_many};
pub use multipoly::MultiPoly;
pub use scalar::{is_prime, Field, Scalar};
pub use space::{same_space, Block, BlockKind, Monomial, MultiDegree, Space, SpaceBuilder, VariableSpace};
pub use text::parse_poly;
