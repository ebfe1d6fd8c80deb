//! Exact orbital diameters of finite affine primitive permutation groups
//! `HV <= AGL(V)` over `V = F_p^d`, the explicit bound formulas they are
//! measured against, and constructors for the extremal group families.
//!
//! The pipeline: build or load a matrix group, partition the point space
//! into orbits, compute every nonzero orbital diameter exactly by iterated
//! sumsets on bit vectors, then evaluate the bound formulas in log2 space
//! and pair them with the exact values.

pub mod bigreal;
pub mod bitset;
pub mod bounds;
pub mod construct;
pub mod diameter;
pub mod error;
pub mod extension;
pub mod field;
pub mod group;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod space;
pub mod summands;
pub mod sumset;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use group::GroupSpec;
pub use matrix::FpMatrix;
pub use poly::FpPolynomial;
pub use space::VectorSpace;
