//! Every (co)chain complex of the theory and its (co)homology:
//! derived-limit cochains, the reduced subcomplex, homology with
//! coefficients, nerve homology, Baues-Wirsching, Hochschild-Mitchell,
//! Thomason, the generic bar-Ext, and the canonical restriction maps.

mod barext;
mod bw;
mod complexes;
mod restriction;
mod thomason;

pub use barext::{bar_ext, bar_ext_complex};
pub use bw::{bw_cochain_complex, bw_cohomology, hm_cohomology};
pub use complexes::{
    lim_cochain_complex, nerve_chain_complex, nerve_chain_complex_unnormalized,
    nerve_integral_homology, reduced_cochain_complex,
};
pub use restriction::{restriction_map_bw, restriction_map_lim, restriction_map_thomason};
pub use thomason::{induced_simplex_coefficients, thomason_cochain_complex, thomason_cohomology};

use crate::coeff::Diagram;
use crate::exactalg::{homology_at, AbGroupStructure, ComplexWindow};
use crate::fincat::CatRef;
use crate::Result;

/// `H^n(C, G)`, derived-limit cohomology.
pub fn lim_cohomology(c: &CatRef, g: &Diagram, n: usize, cap: usize) -> Result<AbGroupStructure> {
    let window = lim_cochain_complex(c, g, n.max(1), cap)?;
    homology_at(&window, n)
}

/// `H_n(C, F)`, homology with coefficients in a diagram.
pub fn homology(c: &CatRef, f: &Diagram, n: usize, cap: usize) -> Result<AbGroupStructure> {
    let window = homology_chain_complex(c, f, n, cap)?;
    homology_at(&window, n)
}

/// The chain complex behind [`homology`], on degrees `0..=N+1`.
pub fn homology_chain_complex(
    c: &CatRef,
    f: &Diagram,
    max_degree: usize,
    cap: usize,
) -> Result<ComplexWindow> {
    complexes::homology_chain_complex(c, f, max_degree, cap)
}
