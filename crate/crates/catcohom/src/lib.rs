//! Exact-arithmetic (co)homology of finite categories.
//!
//! The crate computes several cohomology theories of a finite category —
//! derived-limit cohomology, Baues-Wirsching, Hochschild-Mitchell, Thomason,
//! and a generic bar-resolution Ext — together with the homological criteria
//! that decide whether a functor between finite categories preserves each
//! theory under inverse image.
//!
//! Everything is computed over the integers with arbitrary precision; the
//! engine underneath is Smith normal form on sparse integer matrices.

pub mod cli;
pub mod coeff;
pub mod cohom;
pub mod criteria;
mod error;
pub mod exactalg;
pub mod fincat;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
