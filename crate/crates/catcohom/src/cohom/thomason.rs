//! The Thomason cochain complex over a truncated simplex diagram, and the
//! induced coefficients of a natural system along the composite functor
//! `delta`.

use num_bigint::BigInt;

use super::complexes::{degree_basis, DegreeBasis};
use crate::coeff::{Diagram, TruncatedSimplexDiagram};
use crate::exactalg::{homology_at, AbGroupStructure, ComplexWindow, IntMatrix, Orientation};
use crate::fincat::{factorization, nerve_capped, CatRef, MorId};
use crate::{Error, Result};

/// The Thomason cochain complex `C^n = prod over all n-simplices of
/// value(sigma)` on degrees `lo..=hi`; degenerate simplices are included, as
/// the definition ranges over every functor `[n] -> C`.
pub fn thomason_cochain_complex(
    g: &TruncatedSimplexDiagram,
    lo: usize,
    hi: usize,
) -> Result<ComplexWindow> {
    if hi > g.max_dim() {
        return Err(Error::TruncationTooShallow {
            max_dim: g.max_dim(),
            needed: hi,
        });
    }
    let table = g.paths();
    let bases: Vec<DegreeBasis> = (lo..=hi)
        .map(|n| degree_basis((0..table.count(n)).map(|i| g.value_of(n, i))))
        .collect();
    let mut diffs = Vec::with_capacity(hi - lo);
    for n in lo..hi {
        let b = &bases[n - lo];
        let b1 = &bases[n + 1 - lo];
        let mut d = IntMatrix::zero(b1.total, b.total);
        for q in 0..table.count(n + 1) {
            if g.value_of(n + 1, q) == 0 {
                continue;
            }
            let row0 = b1.offsets[q];
            for i in 0..=n + 1 {
                let face = table.face(n + 1, i, q);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let act = g.coface_of(n + 1, i, q);
                let col0 = b.offsets[face];
                for (r, col, v) in act.nonzeros() {
                    d.add_to(row0 + r, col0 + col, &(v * BigInt::from(sign)));
                }
            }
        }
        diffs.push(d);
    }
    ComplexWindow::new(
        lo,
        hi,
        bases.iter().map(|b| b.total).collect(),
        diffs,
        Orientation::Cochain,
    )
}

/// Thomason cohomology in degree `n`; the truncation must cover `n + 1`.
pub fn thomason_cohomology(g: &TruncatedSimplexDiagram, n: usize) -> Result<AbGroupStructure> {
    if g.max_dim() < n + 1 {
        return Err(Error::TruncationTooShallow {
            max_dim: g.max_dim(),
            needed: n + 1,
        });
    }
    let lo = n.saturating_sub(1);
    let window = thomason_cochain_complex(g, lo, n + 1)?;
    homology_at(&window, n)
}

/// Coefficients on the simplex category induced by a natural system through
/// the composite functor: the value at `sigma` is the system's value at the
/// composite morphism; outer cofaces act by the natural-system structure
/// maps, inner cofaces by the identity.
pub fn induced_simplex_coefficients(
    c: &CatRef,
    source: &Diagram,
    max_dim: usize,
    cap: usize,
) -> Result<TruncatedSimplexDiagram> {
    let fact = factorization(c);
    if **source.base() != *fact.cat {
        return Err(Error::BaseMismatch {
            context: "induced simplex coefficients need a natural system".into(),
        });
    }
    let table = nerve_capped(c, max_dim, cap)?;
    let composites: Vec<Vec<MorId>> = (0..=max_dim)
        .map(|n| {
            (0..table.count(n))
                .map(|i| table.path(n, i).composite(c))
                .collect()
        })
        .collect();
    let value: Vec<Vec<usize>> = (0..=max_dim)
        .map(|n| {
            (0..table.count(n))
                .map(|i| source.rank_of(fact.object_for(composites[n][i])))
                .collect()
        })
        .collect();
    let coface: Vec<Vec<Vec<IntMatrix>>> = (1..=max_dim)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    (0..table.count(n))
                        .map(|idx| {
                            let path = table.path(n, idx);
                            let comp = composites[n][idx];
                            let face = table.face(n, i, idx);
                            let fcomp = composites[n - 1][face];
                            let m = if i == 0 {
                                fact.morphism_for(
                                    fcomp,
                                    path.mors[0],
                                    c.identity_of(c.cod(comp)),
                                )
                            } else if i == n {
                                fact.morphism_for(
                                    fcomp,
                                    c.identity_of(c.dom(comp)),
                                    *path.mors.last().unwrap(),
                                )
                            } else {
                                // Inner faces keep the composite.
                                Some(fact.cat.identity_of(fact.object_for(comp)))
                            }
                            .expect("connecting morphism exists");
                            source.action_of(m).clone()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    TruncatedSimplexDiagram::new(table, value, coface)
}
