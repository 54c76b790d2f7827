//! Exact integer linear algebra: Smith normal form, homology of bounded
//! complex windows, cokernels, and induced maps on homology.
//!
//! Everything here is pure and exact; no floating point is involved anywhere.

mod homology;
mod matrix;
mod snf;

pub use homology::{
    cokernel, group_hom, homology_at, homology_basis_at, induced_homology_map, AbGroupStructure,
    CokernelPresentation, ComplexWindow, GroupHom, HomologyBasis, Orientation,
};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SnfResult};
