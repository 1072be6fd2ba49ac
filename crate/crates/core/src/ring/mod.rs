//! The *-ring layer over exact rational matrices.

pub mod algebraic;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod construct;
pub mod lattice;
pub mod laws;
mod model_laws;
pub mod norm;
pub mod psd;
