//! Ext groups in the diagram category via the simplicial bar resolution of a
//! free-valued diagram: the degree-n cochains are the products over n-paths
//! of Hom(F(c_0), G(c_n)).

use num_bigint::BigInt;

use super::complexes::{degree_basis, DegreeBasis};
use crate::coeff::Diagram;
use crate::exactalg::{homology_at, AbGroupStructure, ComplexWindow, IntMatrix, Orientation};
use crate::fincat::{nerve_capped, CatRef};
use crate::{Error, Result};

/// The bar cochain complex computing `Ext^*(F, G)` in the category of
/// diagrams on `c`, on degrees `0..=N+1`.
///
/// A basis element of degree n is a path together with an elementary matrix
/// `E(r, s): F(c_0) -> G(c_n)`, enumerated row-major. The differential
/// precomposes with `F(alpha_1)` on face 0, composes interior arrows, and
/// postcomposes with `G(alpha_{n+1})` on the last face.
pub fn bar_ext_complex(
    c: &CatRef,
    f: &Diagram,
    g: &Diagram,
    max_degree: usize,
    cap: usize,
) -> Result<ComplexWindow> {
    if **f.base() != **c || **g.base() != **c {
        return Err(Error::BaseMismatch {
            context: "bar-Ext diagrams must share the base category".into(),
        });
    }
    let hi = max_degree + 1;
    let table = nerve_capped(c, hi, cap)?;
    let rank_at = |n: usize, idx: usize| {
        let p = table.path(n, idx);
        f.rank_of(p.start) * g.rank_of(p.end(c))
    };
    let bases: Vec<DegreeBasis> = (0..=hi)
        .map(|n| degree_basis((0..table.count(n)).map(|i| rank_at(n, i))))
        .collect();

    let mut diffs = Vec::with_capacity(hi);
    for n in 0..hi {
        let mut d = IntMatrix::zero(bases[n + 1].total, bases[n].total);
        for q in 0..table.count(n + 1) {
            let path = table.path(n + 1, q);
            let rf = f.rank_of(path.start);
            let rg = g.rank_of(path.end(c));
            if rf * rg == 0 {
                continue;
            }
            let row0 = bases[n + 1].offsets[q];
            // Hom-basis index of E(r, s) with target rank rf_src columns.
            let hom_idx = |r: usize, s: usize, cols: usize| r * cols + s;

            // i = 0: X -> X o F(alpha_1). Source basis E(r, s) on
            // F(c_1) -> G(end); target coordinate at (r, s') picks up
            // F(alpha_1)[s, s'].
            let face = table.face(n + 1, 0, q);
            let col0 = bases[n].offsets[face];
            let act = f.action_of(path.mors[0]);
            let rf_face = f.rank_of(c.cod(path.mors[0]));
            for r in 0..rg {
                for (s, s2, v) in act.nonzeros() {
                    d.add_to(
                        row0 + hom_idx(r, s2, rf),
                        col0 + hom_idx(r, s, rf_face),
                        v,
                    );
                }
            }

            // Interior faces: identity on the hom basis.
            for i in 1..=n {
                let face = table.face(n + 1, i, q);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let col0 = bases[n].offsets[face];
                for k in 0..rf * rg {
                    d.add_to(row0 + k, col0 + k, &BigInt::from(sign));
                }
            }

            // i = n+1: X -> G(alpha_{n+1}) o X. Source basis E(r, s) on
            // F(c_0) -> G(c_n); target coordinate at (r', s) picks up
            // G(alpha_{n+1})[r', r].
            let face = table.face(n + 1, n + 1, q);
            let col0 = bases[n].offsets[face];
            let last = *path.mors.last().unwrap();
            let act = g.action_of(last);
            let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
            for (r2, r, v) in act.nonzeros() {
                for s in 0..rf {
                    d.add_to(
                        row0 + hom_idx(r2, s, rf),
                        col0 + hom_idx(r, s, rf),
                        &(v * BigInt::from(sign)),
                    );
                }
            }
        }
        diffs.push(d);
    }
    ComplexWindow::new(
        0,
        hi,
        bases.iter().map(|b| b.total).collect(),
        diffs,
        Orientation::Cochain,
    )
}

/// `Ext^n(F, G)` over the diagram category of `c`, for free-valued `F`.
pub fn bar_ext(
    c: &CatRef,
    f: &Diagram,
    g: &Diagram,
    n: usize,
    cap: usize,
) -> Result<AbGroupStructure> {
    let window = bar_ext_complex(c, f, g, n.max(1), cap)?;
    homology_at(&window, n)
}
