//! Kronecker-product factorization of sparse binary matrices.
//!
//! Given the sparsity pattern of a square matrix, this crate enumerates every
//! way of writing it as a Kronecker product of smaller square patterns,
//! combines those length-2 factorizations into all prime decompositions,
//! and exposes the surrounding machinery:
//!
//! - [`pattern`]: binary sparsity patterns and column-major index arithmetic;
//! - [`numtheory`]: divisors, prime factorizations and compatible size pairs;
//! - [`factorize`]: the matrix-free length-2 factorizability test;
//! - [`branch`]: branch construction, prime decompositions and the
//!   decomposition graph;
//! - [`nkp`]: nearest-Kronecker-product approximation of real matrices with
//!   sizes suggested by the binary factorization;
//! - [`layout`]: radial coordinates for drawing Kronecker graphs;
//! - [`io`]: Matrix Market, DOT, SVG and JSON readers/writers;
//! - [`generate`]: seeded fixture generators.
//!
//! Real-valued code is generic over the floating point type through
//! [`Scalar`]; `f64` aliases are re-exported at the crate root.

pub mod branch;
pub mod dense;
pub mod error;
pub mod factorize;
pub mod generate;
pub mod io;
pub mod layout;
pub mod nkp;
pub mod numtheory;
pub mod pattern;
pub mod scalar;

pub use branch::{all_prime_decompositions, Branch, DecompositionGraph, PrimeDecomposition};
pub use dense::DenseMatrix;
pub use error::{Error, Result};
pub use factorize::{all_length2, is_maximal, is_prime, Length2Factorization};
pub use layout::{LayoutConfig, LayoutResult};
pub use nkp::NkpResult;
pub use pattern::{BinaryPattern, Coordinate};
pub use scalar::Scalar;

/// Dense real matrix with `f64` entries, the default for file I/O and the CLI.
pub type DenseMatrix64 = DenseMatrix<f64>;
/// Dense real matrix with `f32` entries.
pub type DenseMatrix32 = DenseMatrix<f32>;
/// Nearest-Kronecker-product result over `f64`.
pub type NkpResult64 = NkpResult<f64>;
/// Nearest-Kronecker-product result over `f32`.
pub type NkpResult32 = NkpResult<f32>;
/// Kronecker graph layout over `f64` coordinates.
pub type LayoutResult64 = LayoutResult<f64>;
/// Kronecker graph layout over `f32` coordinates.
pub type LayoutResult32 = LayoutResult<f32>;
