//! Stokes matrices of the mirror Landau–Ginzburg models f = xᵃ + x⁻ᵇ of the
//! weighted projective lines ℙ(a, b), computed from numerical monodromy, and
//! the exact algebraic data on both sides of the mirror.

pub mod braid;
pub mod error;
pub mod euler;
pub mod exact;
pub mod figures;
pub mod gaussmanin;
pub mod geometry;
pub mod intmat;
pub mod pipeline;
pub mod quantum;
pub mod stokes;
pub mod tracking;

pub use error::{Error, ErrorKind, Result};
