//! Exact and multiprecision computations for the twist knots J(2, n): Riley
//! polynomials, the adjoint Reidemeister torsion, parabolic representations
//! with their cusp shapes, and the SL(2, C) character variety.

pub mod algebra;
pub mod charvar;
pub mod closed_form;
pub mod error;
pub mod holonomy;
pub mod report;
pub mod riley;
pub mod tables;
pub mod torsion;
pub mod words;

pub use error::{Error, Result};
