//! Discrete Fourier analysis on the fundamental domain of the `A_d` root
//! lattice and on the associated `d`-simplex.
//!
//! Points and indices are written in homogeneous coordinates: a point of
//! `R^d` is a `(d+1)`-tuple summing to zero, and the permutation group
//! `S_{d+1}` acts by permuting entries. The crate provides
//!
//! * exact enumeration of the index sets `H_n`, `H*_n`, `Lambda_n` and
//!   their boundary strata together with the rational cubature weights
//!   ([`index_sets`]),
//! * the exponentials `phi_k`, generalized cosines/sines and the compact
//!   Dirichlet and interpolation kernels ([`trig`]),
//! * discrete inner products and exact-degree cubature rules
//!   ([`quadrature`]),
//! * trigonometric interpolation on the hexagon-like domain and on the
//!   simplex, with empirical Lebesgue constants ([`interpolation`]),
//! * generalized Chebyshev polynomials, Gaussian and Gauss-Lobatto type
//!   cubature in the algebraic variables ([`chebyshev`]),
//! * brute-force references used to cross-check all of the above
//!   ([`oracle`]).
//!
//! Evaluation over many points is data parallel; see [`exec`].

pub mod chebyshev;
pub mod combinat;
pub mod error;
pub mod exec;
pub mod export;
pub mod index_sets;
pub mod interpolation;
pub mod lattice;
pub mod oracle;
pub mod quadrature;
pub mod trig;

pub use error::{Error, Result};
pub use exec::Exec;
pub use lattice::{ExactPoint, HomogIndex, HomogPoint, Permutation};

/// Complex numbers used throughout.
pub type Complex = num_complex::Complex64;

/// Exact rationals used for nodes and weights.
pub type Rational = num_rational::BigRational;
