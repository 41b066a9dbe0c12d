//! Exact symbolic engine for Lie algebras generated by skew-hermitian
//! polynomials in bosonic creation and annihilation operators, with a decision
//! procedure for finite-dimensionality.

pub mod chains;
pub mod closure;
pub mod coeff;
pub mod decider;
pub mod dsl;
pub mod error;
pub mod multi_index;
pub mod skew;
pub mod subspace;
pub mod weyl;

pub use coeff::{GaussianRational, Rational};
pub use error::{Error, Result};
pub use multi_index::{MultiIndex, Multiset};
pub use skew::{Sign, SkewBasisElement, SkewPolynomial};
pub use subspace::SubspaceLabel;
pub use weyl::{Degree, WeylPolynomial};
