//! The Baues-Wirsching complex over natural systems, and Hochschild-Mitchell
//! cohomology via its reduction to a natural system along (dom, cod).

use num_bigint::BigInt;

use super::complexes::{degree_basis, DegreeBasis};
use crate::coeff::{pullback_diagram, Diagram};
use crate::exactalg::{homology_at, AbGroupStructure, ComplexWindow, IntMatrix, Orientation};
use crate::fincat::{factorization, nerve_capped, CatRef, Factorization, MorId};
use crate::{Error, Result};

/// The Baues-Wirsching cochain complex `F^n = prod over n-paths of
/// G(composite)`, for a natural system `G` on the factorization category,
/// on degrees `0..=N+1`.
///
/// The two outer faces act through the natural system: face 0 by
/// `(alpha_1, id)` and face n+1 by `(id, alpha_{n+1})`; the printed identity
/// component sits at the codomain end, which is what typing in the
/// factorization category forces.
pub fn bw_cochain_complex(
    c: &CatRef,
    g: &Diagram,
    max_degree: usize,
    cap: usize,
) -> Result<ComplexWindow> {
    let fact = factorization(c);
    bw_cochain_complex_with(c, &fact, g, max_degree, cap)
}

pub fn bw_cochain_complex_with(
    c: &CatRef,
    fact: &Factorization,
    g: &Diagram,
    max_degree: usize,
    cap: usize,
) -> Result<ComplexWindow> {
    bw_complex_parts(c, fact, g, max_degree, cap).map(|(w, _, _)| w)
}

pub(crate) fn bw_complex_parts(
    c: &CatRef,
    fact: &Factorization,
    g: &Diagram,
    max_degree: usize,
    cap: usize,
) -> Result<(ComplexWindow, crate::fincat::PathTable, Vec<DegreeBasis>)> {
    if **g.base() != *fact.cat {
        return Err(Error::BaseMismatch {
            context: "Baues-Wirsching coefficients must live on the factorization category".into(),
        });
    }
    if max_degree < 1 {
        return Err(Error::DegreeOutOfWindow {
            degree: max_degree,
            lo: 1,
            hi: usize::MAX,
        });
    }
    let hi = max_degree + 1;
    let table = nerve_capped(c, hi, cap)?;
    // Composite of each path, as an object of the factorization category.
    let composites: Vec<Vec<MorId>> = (0..=hi)
        .map(|n| {
            (0..table.count(n))
                .map(|i| table.path(n, i).composite(c))
                .collect()
        })
        .collect();
    let rank_at =
        |n: usize, idx: usize| g.rank_of(fact.object_for(composites[n][idx]));
    let bases: Vec<DegreeBasis> = (0..=hi)
        .map(|n| degree_basis((0..table.count(n)).map(|i| rank_at(n, i))))
        .collect();

    let mut diffs = Vec::with_capacity(hi);
    for n in 0..hi {
        let mut d = IntMatrix::zero(bases[n + 1].total, bases[n].total);
        for q in 0..table.count(n + 1) {
            let re = rank_at(n + 1, q);
            if re == 0 {
                continue;
            }
            let row0 = bases[n + 1].offsets[q];
            let path = table.path(n + 1, q);
            let comp_q = composites[n + 1][q];

            // i = 0: precompose with the first arrow.
            let face = table.face(n + 1, 0, q);
            let alpha1 = path.mors[0];
            let id_end = c.identity_of(c.cod(comp_q));
            let m = fact
                .morphism_for(composites[n][face], alpha1, id_end)
                .expect("(alpha_1, id) connects the composites");
            let act = g.action_of(m);
            let col0 = bases[n].offsets[face];
            for (r, col, v) in act.nonzeros() {
                d.add_to(row0 + r, col0 + col, v);
            }

            // Interior faces keep the composite.
            for i in 1..=n {
                let face = table.face(n + 1, i, q);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let col0 = bases[n].offsets[face];
                for k in 0..re {
                    d.add_to(row0 + k, col0 + k, &BigInt::from(sign));
                }
            }

            // i = n+1: postcompose with the last arrow.
            let face = table.face(n + 1, n + 1, q);
            let last = *path.mors.last().unwrap();
            let id_start = c.identity_of(c.dom(comp_q));
            let m = fact
                .morphism_for(composites[n][face], id_start, last)
                .expect("(id, alpha_{n+1}) connects the composites");
            let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
            let act = g.action_of(m);
            let col0 = bases[n].offsets[face];
            for (r, col, v) in act.nonzeros() {
                d.add_to(row0 + r, col0 + col, &(v * BigInt::from(sign)));
            }
        }
        diffs.push(d);
    }
    let window = ComplexWindow::new(
        0,
        hi,
        bases.iter().map(|b| b.total).collect(),
        diffs,
        Orientation::Cochain,
    )?;
    Ok((window, table, bases))
}

/// Baues-Wirsching cohomology of `c` with natural-system coefficients.
pub fn bw_cohomology(c: &CatRef, g: &Diagram, n: usize, cap: usize) -> Result<AbGroupStructure> {
    let window = bw_cochain_complex(c, g, n.max(1), cap)?;
    homology_at(&window, n)
}

/// Hochschild-Mitchell cohomology of `c` with bimodule coefficients, via the
/// reduction `H_HM(c, G) = H_BW(c, G o (dom, cod))`.
pub fn hm_cohomology(c: &CatRef, g: &Diagram, n: usize, cap: usize) -> Result<AbGroupStructure> {
    let fact = factorization(c);
    if **g.base() != *fact.op_times_c {
        return Err(Error::BaseMismatch {
            context: "Hochschild-Mitchell coefficients must live on op(C) x C".into(),
        });
    }
    let pulled = pullback_diagram(&fact.dom_cod, g)?;
    let window = bw_cochain_complex_with(c, &fact, &pulled, n.max(1), cap)?;
    homology_at(&window, n)
}
