//! Exact matrix representations of operators acting on free `Q[u]`-modules,
//! their spectral curves, and checks of spectral duality.
//!
//! The crate covers two carriers: `Q[z]` with the Weyl algebra acting through
//! `∂ ↦ z`, `s ↦ -d/dz`, and `Q[λ, λ⁻¹]` with Laurent polynomials acting by
//! multiplication. All arithmetic is over the rationals.

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod expr;
pub mod modrep;
pub mod random;
pub mod spectral;
pub mod suite;
pub mod weyl;

pub use error::{Error, Result};
